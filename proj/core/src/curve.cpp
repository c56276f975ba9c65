#include "klab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace klab {

int effective_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("KLAB_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

namespace {

// Sturm count for a symmetric tridiagonal matrix with zero diagonal:
// eigenvalues strictly below x, from the signs of the LDL^T pivots.
int sturm_count(const std::vector<double>& c, double x) {
  const double tiny = 1e-300;
  int cnt = 0;
  double q = -x;
  if (q < 0) ++cnt;
  for (double ci : c) {
    if (std::fabs(q) < tiny) q = (q < 0 ? -tiny : tiny);
    q = -x - ci / q;
    if (q < 0) ++cnt;
  }
  return cnt;
}

// k-th smallest eigenvalue (k = 1..n) by bisection to 1e-12.
double bisect_eigenvalue(const std::vector<double>& c, double radius, int k) {
  double lo = -radius, hi = radius;
  while (hi - lo > 1e-13 * (1.0 + radius)) {
    double mid = 0.5 * (lo + hi);
    if (sturm_count(c, mid) < k)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Dense solve of (T - lambda I) w = rhs with partial pivoting; T is the real
// symmetric tridiagonal matrix with zero diagonal and off-diagonal b.
std::vector<double> shifted_solve(const std::vector<double>& b, double lambda,
                                  std::vector<double> rhs) {
  const int n = static_cast<int>(rhs.size());
  std::vector<std::vector<double>> m(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = -lambda;
    if (i + 1 < n) {
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] =
          b[static_cast<std::size_t>(i)];
      m[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] =
          b[static_cast<std::size_t>(i)];
    }
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int row = col + 1; row < n; ++row)
      if (std::fabs(m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]) >
          std::fabs(m[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
        piv = row;
    std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(col)]);
    std::swap(rhs[static_cast<std::size_t>(piv)], rhs[static_cast<std::size_t>(col)]);
    double d = m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    if (std::fabs(d) < 1e-300) d = (d < 0 ? -1e-300 : 1e-300);
    for (int row = col + 1; row < n; ++row) {
      double f = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] / d;
      if (f == 0.0) continue;
      for (int k = col; k < n; ++k)
        m[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] -=
            f * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)];
      rhs[static_cast<std::size_t>(row)] -= f * rhs[static_cast<std::size_t>(col)];
    }
  }
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  for (int row = n - 1; row >= 0; --row) {
    double s = rhs[static_cast<std::size_t>(row)];
    for (int k = row + 1; k < n; ++k)
      s -= m[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] *
           w[static_cast<std::size_t>(k)];
    double d = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(row)];
    if (std::fabs(d) < 1e-300) d = (d < 0 ? -1e-300 : 1e-300);
    w[static_cast<std::size_t>(row)] = s / d;
  }
  return w;
}

void normalize(std::vector<double>& v) {
  double s = 0;
  for (double t : v) s += t * t;
  s = std::sqrt(s);
  if (s == 0) return;
  for (double& t : v) t /= s;
}

}  // namespace

EigenSystem hermitian_part_eigs(const ReciprocalMatrix& a, double theta) {
  const int n = a.n;
  const std::complex<double> w = std::polar(1.0, theta);
  std::vector<std::complex<double>> h(static_cast<std::size_t>(n - 1));
  for (int j = 0; j < n - 1; ++j)
    h[static_cast<std::size_t>(j)] =
        0.5 * (w * a.super[static_cast<std::size_t>(j)] +
               std::conj(w * a.sub[static_cast<std::size_t>(j)]));

  std::vector<double> b(static_cast<std::size_t>(n - 1)), c(static_cast<std::size_t>(n - 1));
  std::vector<std::complex<double>> phases(static_cast<std::size_t>(n),
                                           std::complex<double>(1.0, 0.0));
  for (int j = 0; j < n - 1; ++j) {
    double mag = std::abs(h[static_cast<std::size_t>(j)]);
    b[static_cast<std::size_t>(j)] = mag;
    c[static_cast<std::size_t>(j)] = mag * mag;
    phases[static_cast<std::size_t>(j + 1)] =
        mag > 0 ? phases[static_cast<std::size_t>(j)] *
                      std::conj(h[static_cast<std::size_t>(j)]) / mag
                : phases[static_cast<std::size_t>(j)];
  }

  double radius = 1e-12;
  for (int j = 0; j < n; ++j) {
    double row = (j > 0 ? b[static_cast<std::size_t>(j - 1)] : 0.0) +
                 (j < n - 1 ? b[static_cast<std::size_t>(j)] : 0.0);
    radius = std::max(radius, row + 1.0);
  }

  EigenSystem es;
  es.phases = phases;
  for (int k = n; k >= 1; --k)  // descending
    es.values.push_back(bisect_eigenvalue(c, radius, k));

  for (int j = 0; j < n; ++j) {
    double lambda = es.values[static_cast<std::size_t>(j)];
    // tiny shift keeps the factorization well conditioned at exact eigenvalues
    double shift = lambda + 1e-11 * radius;
    std::vector<double> v(static_cast<std::size_t>(n), 1.0);
    v[static_cast<std::size_t>(j % n)] += 0.5;  // break symmetry between branches
    normalize(v);
    for (int it = 0; it < 3; ++it) {
      v = shifted_solve(b, shift, std::move(v));
      normalize(v);
    }
    es.vectors.push_back(std::move(v));
  }
  return es;
}

std::vector<double> default_grid(int points) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(points));
  for (int i = 1; i <= points; ++i)
    g.push_back(-std::numbers::pi + 2.0 * std::numbers::pi * i / points);
  return g;
}

std::vector<CurveSample> sample_curve(const ReciprocalMatrix& a,
                                      const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("sample_curve: empty grid");
  const int n = a.n;
  std::vector<CurveSample> out(grid.size() * static_cast<std::size_t>(n));

  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t g = lo; g < hi; ++g) {
      double theta = grid[g];
      auto es = hermitian_part_eigs(a, theta);
      const std::complex<double> w = std::polar(1.0, theta);
      // derivative matrix Re(i e^{i theta} A), off-diagonal entries in the
      // same phase-rotated coordinates as the eigenvectors
      std::vector<std::complex<double>> gmat(static_cast<std::size_t>(n - 1));
      for (int j = 0; j < n - 1; ++j) {
        std::complex<double> gj =
            std::complex<double>(0, 0.5) *
            (w * a.super[static_cast<std::size_t>(j)] -
             std::conj(w * a.sub[static_cast<std::size_t>(j)]));
        gmat[static_cast<std::size_t>(j)] = gj * es.phases[static_cast<std::size_t>(j + 1)] *
                                            std::conj(es.phases[static_cast<std::size_t>(j)]);
      }
      for (int j = 0; j < n; ++j) {
        double lambda = es.values[static_cast<std::size_t>(j)];
        const auto& v = es.vectors[static_cast<std::size_t>(j)];
        double dlambda = 0;
        for (int i = 0; i < n - 1; ++i)
          dlambda += 2.0 * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i + 1)] *
                     gmat[static_cast<std::size_t>(i)].real();
        CurveSample s;
        s.theta = theta;
        s.branch = j + 1;
        s.x = lambda * std::cos(theta) - dlambda * std::sin(theta);
        s.y = -dlambda * std::cos(theta) - lambda * std::sin(theta);
        double gap = 1e300;
        if (j > 0) gap = std::min(gap, es.values[static_cast<std::size_t>(j - 1)] - lambda);
        if (j < n - 1) gap = std::min(gap, lambda - es.values[static_cast<std::size_t>(j + 1)]);
        s.reliable = gap >= 1e-10;
        out[g * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = s;
      }
    }
  };

  int threads = std::min<int>(effective_threads(), static_cast<int>(grid.size()));
  if (threads <= 1) {
    work(0, grid.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (grid.size() + static_cast<std::size_t>(threads) - 1) /
                        static_cast<std::size_t>(threads);
    for (int t = 0; t < threads; ++t) {
      std::size_t lo = static_cast<std::size_t>(t) * chunk;
      std::size_t hi = std::min(grid.size(), lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

namespace {

double conic_residual(const CurveSample& s, const EllipseSpec& spec) {
  double p = spec.p.to_double();
  double x2 = spec.x2.to_double();
  double c = spec.c.to_double();
  if (c > 0) {
    double dx = s.x - p;
    return std::fabs(dx * dx / (c + x2) + s.y * s.y / c - 1.0);
  }
  // focal segment [p - X, p + X]
  double dx = std::max(0.0, std::fabs(s.x - p) - std::sqrt(x2));
  return std::hypot(dx, s.y);
}

}  // namespace

ConicAssignment verify_conics(const std::vector<CurveSample>& samples,
                              const std::vector<EllipseSpec>& specs, double assign_tol) {
  for (const auto& spec : specs) {
    if (spec.x2.to_double() <= 0)
      throw std::invalid_argument("verify_conics: foci must be distinct (X > 0)");
    if (spec.c.to_double() < 0)
      throw std::invalid_argument("verify_conics: negative squared minor half-axis");
  }
  ConicAssignment out;
  out.fits.reserve(specs.size());
  for (const auto& spec : specs) out.fits.push_back({spec, 0.0, 0});
  out.leftover_min_residual = 1e300;

  for (const auto& s : samples) {
    if (!s.reliable) continue;
    double best = 1e300;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
      double r = conic_residual(s, specs[i]);
      if (r < best) {
        best = r;
        best_i = i;
      }
    }
    if (!specs.empty() && best <= assign_tol) {
      auto& fit = out.fits[best_i];
      fit.assigned += 1;
      fit.max_residual = std::max(fit.max_residual, best);
    } else {
      out.leftovers.push_back(s);
      out.leftover_min_residual = std::min(out.leftover_min_residual, best);
    }
  }
  if (out.leftovers.empty()) out.leftover_min_residual = 0.0;
  return out;
}

void write_samples_csv(std::ostream& os, const std::vector<CurveSample>& samples) {
  os << "theta,branch,x,y,flag\n";
  os << std::setprecision(15);
  for (const auto& s : samples)
    os << s.theta << ',' << s.branch << ',' << s.x << ',' << s.y << ','
       << (s.reliable ? "ok" : "degenerate") << '\n';
}

void write_svg(std::ostream& os, const std::vector<CurveSample>& samples,
               const std::vector<EllipseSpec>& specs) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : samples) {
    if (!s.reliable) continue;
    xmin = std::min(xmin, s.x);
    xmax = std::max(xmax, s.x);
    ymin = std::min(ymin, s.y);
    ymax = std::max(ymax, s.y);
  }
  if (xmin > xmax) {
    xmin = ymin = -1;
    xmax = ymax = 1;
  }
  double span = std::max(xmax - xmin, ymax - ymin);
  double pad = 0.08 * span + 1e-9;
  double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  xmin = cx - span / 2 - pad;
  xmax = cx + span / 2 + pad;
  ymin = cy - span / 2 - pad;
  ymax = cy + span / 2 + pad;
  const double size = 640.0;
  auto px = [&](double x) { return (x - xmin) / (xmax - xmin) * size; };
  auto py = [&](double y) { return size - (y - ymin) / (ymax - ymin) * size; };

  os << std::setprecision(8);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(0) << "\" x2=\"" << px(xmax) << "\" y2=\""
     << py(0) << "\" stroke=\"#bbbbbb\"/>\n";
  os << "<line x1=\"" << px(0) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(0) << "\" y2=\""
     << py(ymax) << "\" stroke=\"#bbbbbb\"/>\n";

  auto assignment = verify_conics(samples, specs);
  // group assigned samples per spec and draw each as an angle-sorted loop
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::vector<const CurveSample*> pts;
    for (const auto& s : samples) {
      if (!s.reliable) continue;
      double best = 1e300;
      std::size_t best_i = 0;
      for (std::size_t k = 0; k < specs.size(); ++k) {
        double r = conic_residual(s, specs[k]);
        if (r < best) {
          best = r;
          best_i = k;
        }
      }
      if (best_i == i && best <= 1e-4) pts.push_back(&s);
    }
    if (pts.empty()) continue;
    double p0 = specs[i].p.to_double();
    std::sort(pts.begin(), pts.end(), [&](const CurveSample* a, const CurveSample* b) {
      return std::atan2(a->y, a->x - p0) < std::atan2(b->y, b->x - p0);
    });
    os << "<polyline fill=\"none\" stroke=\"" << palette[i % 6] << "\" stroke-width=\"1.5\" points=\"";
    for (const auto* s : pts) os << px(s->x) << ',' << py(s->y) << ' ';
    os << px(pts.front()->x) << ',' << py(pts.front()->y);
    os << "\"/>\n";
  }
  for (const auto& s : assignment.leftovers)
    os << "<circle cx=\"" << px(s.x) << "\" cy=\"" << py(s.y)
       << "\" r=\"1.2\" fill=\"#444444\"/>\n";
  os << "</svg>\n";
}

}  // namespace klab
