// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "klab/criteria.hpp"
#include "klab/curve.hpp"
#include "klab/multipoly.hpp"
#include "test_util.hpp"

using namespace klab;

namespace {

using M = MultiPoly<Scalar>;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Acceptance {
  bool all_ok = true;
  void report(int id, bool ok, const std::string& what) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    all_ok = all_ok && ok;
  }
};

Scalar param(const CriterionReport& r, const std::string& name) {
  for (const auto& [k, v] : r.params)
    if (k == name) return v;
  throw std::runtime_error("missing parameter " + name);
}

// --------------------------------------------------------------------------
// 1: symbolic P_7 equals its displayed expansion, exactly, in under a second.

bool criterion1(double& elapsed) {
  auto t0 = Clock::now();
  std::vector<M> xi;
  for (int i = 0; i < 6; ++i) xi.push_back(M::var(i, 6));
  auto kp = kippenhahn_poly_over<M>(7, std::span<const M>(xi));
  auto x = [&](int i) { return xi[static_cast<std::size_t>(i - 1)]; };

  using RP = Poly<M>;
  RP z3{M(6, Scalar(1))};
  RP z2{-(x(1) + x(2) + x(3) + x(4) + x(5) + x(6)), M(6, Scalar(-6))};
  RP z1{x(1) * x(3) + x(1) * x(4) + x(2) * x(4) + x(1) * x(5) + x(2) * x(5) + x(3) * x(5) +
            x(1) * x(6) + x(2) * x(6) + x(3) * x(6) + x(4) * x(6),
        Scalar(4) * x(1) + Scalar(3) * x(2) + Scalar(3) * x(3) + Scalar(3) * x(4) +
            Scalar(3) * x(5) + Scalar(4) * x(6),
        M(6, Scalar(10))};
  RP z0{-(x(1) * x(3) * x(5) + x(1) * x(3) * x(6) + x(1) * x(4) * x(6) + x(2) * x(4) * x(6)),
        -(Scalar(2) * x(1) * x(3) + x(3) * x(5) + x(3) * x(6) + x(1) * x(4) + x(2) * x(4) +
          x(1) * x(5) + Scalar(2) * x(1) * x(6) + x(2) * x(6) + Scalar(2) * x(4) * x(6)),
        -(Scalar(3) * x(1) + x(2) + Scalar(2) * x(3) + Scalar(2) * x(4) + x(5) + Scalar(3) * x(6)),
        M(6, Scalar(-4))};

  bool ok = kp.zr.degree() == 3 && kp.odd_n && kp.zr.coeff(3) == z3 && kp.zr.coeff(2) == z2 &&
            kp.zr.coeff(1) == z1 && kp.zr.coeff(0) == z0;
  elapsed = seconds_since(t0);
  return ok && elapsed < 1.0;
}

// --------------------------------------------------------------------------
// 2: the one-ellipse figure: exact classification and 2048-point sampling.

bool criterion2(double& elapsed) {
  auto t0 = Clock::now();
  auto xi = xi_from_csv(7, "1,4,1,1,2,3");
  auto cls = classify(xi);
  bool ok = cls.kind == CurveClass::origin_ellipses && cls.ellipses.size() == 1 &&
            cls.ellipses[0].x2 == Scalar(2) && cls.ellipses[0].c == Scalar(5);

  // admissible conics: the solved (X_k^2, C_k) for every eigenvalue pair with
  // a nonnegative minor half-axis square
  auto x2s = squared_spectrum(7);
  std::vector<EllipseSpec> specs;
  std::size_t ellipse_index = 0;
  for (int k = 1; k <= 3; ++k) {
    auto sol = origin_solve<Scalar>(7, std::span<const Scalar>(xi.xi),
                                    x2s[static_cast<std::size_t>(k - 1)]);
    if (sol.c.sign() < 0) continue;
    if (k == 2) ellipse_index = specs.size();
    specs.push_back({Scalar(0), x2s[static_cast<std::size_t>(k - 1)], sol.c});
  }
  ok = ok && !specs.empty();

  auto samples = sample_curve(matrix_from_xi(xi), default_grid(2048));
  auto asg = verify_conics(samples, specs);
  ok = ok && asg.fits[ellipse_index].assigned >= 2048 &&
       asg.fits[ellipse_index].max_residual < 1e-7;
  // the inner and outer components stay unassigned, far from every admissible conic
  ok = ok && asg.leftovers.size() >= 2 * 2048 && asg.leftover_min_residual > 1e-4;
  elapsed = seconds_since(t0);
  return ok && elapsed < 5.0;
}

// --------------------------------------------------------------------------
// 3: the all-concentric figure.

bool criterion3() {
  auto xi = xi_from_csv(7, "1,1,2,0,1,1");
  auto rep = concentric_check(xi);
  bool ok = rep.verdict == Verdict::holds && rep.exact &&
            param(rep, "C1") == Scalar::quad(2, 1) && param(rep, "C2") == Scalar(2) &&
            param(rep, "C3") == Scalar::quad(2, -1);

  // the C_k are exactly the roots of P_7(., rho = 0)
  auto kp = kippenhahn_poly(xi);
  std::vector<Scalar> at0;
  for (int i = 0; i <= kp.zr.degree(); ++i) at0.push_back(kp.zr.coeff(i).coeff(0));
  Poly<Scalar> p0(std::move(at0));
  for (const Scalar& c : {Scalar::quad(2, 1), Scalar(2), Scalar::quad(2, -1)})
    ok = ok && p0.eval(c) == Scalar(0);

  auto cls = classify(xi);
  ok = ok && cls.kind == CurveClass::all_concentric && cls.ellipses.size() == 3;
  auto samples = sample_curve(matrix_from_xi(xi), default_grid(1024));
  auto asg = verify_conics(samples, cls.ellipses);
  for (const auto& f : asg.fits) ok = ok && f.assigned > 0 && f.max_residual < 1e-7;
  for (const auto& s : asg.leftovers) ok = ok && s.x * s.x + s.y * s.y < 1e-20;
  return ok;
}

// --------------------------------------------------------------------------
// 4: the sixteen catalogued solution vectors and their figures.

bool criterion4() {
  auto cat = solution_catalog_n7();
  bool ok = cat.size() == 16;
  for (const auto& e : cat) {
    auto r = verify_catalog_entry(e);
    ok = ok && r.verdict == Verdict::holds && r.exact == e.closed_form;
    if (e.name == "thm6.xi2")
      ok = ok && e.c_exact == Tower(Quad{1, 1}) && e.c0_exact == Tower(Quad{1, 1});
    if (e.name == "thm8.xi1")
      ok = ok && e.c_exact == Tower(1) &&
           e.c0_exact == Tower{Quad{15, 9}, Quad{-4, -4}} && e.c0_exact.sign() > 0;

    if (e.figure >= 3 && e.figure <= 6) {
      std::vector<Scalar> xs;
      for (const auto& t : e.xi_exact) xs.push_back(to_scalar(t));
      XiVector xi(7, std::move(xs));
      std::vector<EllipseSpec> specs;
      Scalar p = Scalar::real(e.config.p);
      specs.push_back({p, to_scalar(e.config.x2), to_scalar(e.c_exact)});
      specs.push_back({-p, to_scalar(e.config.x2), to_scalar(e.c_exact)});
      specs.push_back({Scalar(0), to_scalar(e.config.x02), to_scalar(e.c0_exact)});
      auto asg = verify_conics(sample_curve(matrix_from_xi(xi), default_grid(1024)), specs);
      for (const auto& f : asg.fits) ok = ok && f.assigned > 0 && f.max_residual < 1e-6;
    }
  }
  return ok;
}

// --------------------------------------------------------------------------
// 5: the p > X configurations admit no nonnegative solutions.

bool criterion5() {
  auto wides = wide_configs_n7();
  std::array<std::array<Tower, 3>, 3> displayed{{
      {Tower{Quad{6, 2}, Quad{3, 0}}, Tower{Quad{6, 4}, Quad{3, 1}},
       Tower{Quad{4, 2}, Quad{2, 1}}},
      {Tower{Quad{2, 1}}, Tower{Quad{0, 1}}, Tower{Quad{2, 2}}},
      {Tower{Quad{6, -2}, Quad{-3, 3}}, Tower{Quad{6, -4}, Quad{-5, 4}},
       Tower{Quad{4, -2}, Quad{-4, 3}}},
  }};

  bool ok = true;
  for (int k = 0; k < 3; ++k) {
    auto form = shifted_pair_linear_form_n7(wides[static_cast<std::size_t>(k)]);
    ok = ok && form.size() == 3;
    // the published triple is the elimination output up to one rational factor
    Tower ratio = displayed[static_cast<std::size_t>(k)][0] * form[0].inverse();
    ok = ok && ratio.b.is_zero() && ratio.a.b == 0;
    int s0 = form[0].sign();
    ok = ok && s0 != 0;
    for (int i = 0; i < 3; ++i) {
      const Tower& d = displayed[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      ok = ok && d == ratio * form[static_cast<std::size_t>(i)];
      ok = ok && d.sign() == 1;
      ok = ok && form[static_cast<std::size_t>(i)].sign() == s0;
    }
  }

  // 10^4 random nonnegative nonzero xi: the shifted-pair system never holds
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> dist(0.0, 5.0);
  int false_accept = 0;
  for (int t = 0; t < 10000; ++t) {
    std::vector<double> xi(6);
    double mx = 0;
    for (auto& v : xi) {
      v = dist(rng);
      mx = std::max(mx, v);
    }
    if (mx == 0.0) continue;
    double tol = 1e-8 * std::pow(1.0 + mx, 3);
    const auto& cfg = wides[static_cast<std::size_t>(t % 3)];
    auto sol = shifted_pair_solve<double>(7, xi, cfg.p2.to_double(), cfg.x2.to_double());
    bool zero = true;
    for (double r : sol.residuals) zero = zero && std::fabs(r) <= tol;
    if (zero && sol.c > tol) ++false_accept;
  }
  return ok && false_accept == 0;
}

// --------------------------------------------------------------------------
// 6: oracle suite.

bool criterion6a() {
  std::mt19937 rng(62);
  for (int n = 2; n <= 8; ++n)
    for (int t = 0; t < 100; ++t) {
      auto eta = testutil::random_rationals(rng, n - 1);
      std::span<const mpq_class> sp(eta);
      auto rec = tridiag_char_recursive(sp);
      if (!(rec == tridiag_char_enumerated(sp))) return false;
      // determinant oracle: agreement at n+1 points proves polynomial identity
      for (int s = 0; s <= n; ++s) {
        mpq_class a(3 * s + 2, 5);
        a.canonicalize();
        std::vector<std::vector<mpq_class>> tm(
            static_cast<std::size_t>(n), std::vector<mpq_class>(static_cast<std::size_t>(n), 0));
        for (int i = 0; i < n; ++i) {
          tm[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = a;
          if (i + 1 < n) {
            tm[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] =
                eta[static_cast<std::size_t>(i)];
            tm[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] = 1;
          }
        }
        mpq_class expected = rec.eval(a * a);
        if (n % 2 != 0) expected *= a;
        if (testutil::rational_det(tm) != expected) return false;
      }
    }
  return true;
}

bool criterion6b() {
  std::mt19937 rng(63);
  std::uniform_real_distribution<double> ang(-3.1, 3.1);
  for (int n = 4; n <= 9; ++n)
    for (int t = 0; t < 20; ++t) {
      auto xiv = testutil::random_xi(rng, n);
      double theta = ang(rng);
      auto a = matrix_from_xi(xiv);
      // char poly det(lambda I - H(theta)) from the matrix entries alone
      std::complex<double> ph(std::cos(theta), std::sin(theta));
      Poly<double> q0{1.0}, q1{0.0, 1.0};
      for (int j = 0; j < n - 1; ++j) {
        std::complex<double> h =
            (ph * a.super[static_cast<std::size_t>(j)] +
             std::conj(ph * a.sub[static_cast<std::size_t>(j)])) /
            2.0;
        Poly<double> q2 = Poly<double>{0.0, 1.0} * q1 - Poly<double>{std::norm(h)} * q0;
        q0 = std::move(q1);
        q1 = std::move(q2);
      }

      std::vector<double> xd;
      for (const auto& s : xiv.xi) xd.push_back(s.to_double());
      auto kp = kippenhahn_poly_over<double>(n, xd);
      double rho = std::cos(theta) * std::cos(theta);
      const int odd = n % 2;
      std::vector<double> expect(static_cast<std::size_t>(n) + 1, 0.0);
      for (int j = 0; j <= kp.zr.degree(); ++j)
        expect[static_cast<std::size_t>(2 * j + odd)] = kp.zr.coeff(j).eval(rho);
      double scale = 1.0;
      for (const auto& c : expect) scale = std::max(scale, std::fabs(c));
      for (int i = 0; i <= n; ++i)
        if (std::fabs(q1.coeff(i) - expect[static_cast<std::size_t>(i)]) > 1e-8 * scale)
          return false;
    }
  return true;
}

bool criterion6c() {
  std::mt19937 rng(64);
  auto x2s = squared_spectrum(7);
  for (int t = 0; t < 1000; ++t) {
    auto xi = testutil::random_xi(rng, 7);
    auto kp = kippenhahn_poly(xi);
    for (int k = 1; k <= 3; ++k) {
      const Scalar& x2 = x2s[static_cast<std::size_t>(k - 1)];
      auto sol = origin_solve<Scalar>(7, std::span<const Scalar>(xi.xi), x2);
      bool res_zero = true;
      for (const auto& r : sol.residuals) res_zero = res_zero && r.sign() == 0;

      Poly<Poly<Scalar>> factor{-Poly<Scalar>{sol.c, x2}, Poly<Scalar>(Scalar(1))};
      auto [quot, rem] = poly_divrem(kp.zr, factor);
      if (rem.is_zero() != res_zero) return false;

      auto verdict = origin_ellipse_check(xi, k).verdict;  // runs its own cross-checks
      if ((verdict != Verdict::fails) && !rem.is_zero()) return false;
    }
  }
  return true;
}

// --------------------------------------------------------------------------
// 7: property suite.

bool scale_and_transpose_properties() {
  std::mt19937 rng(65);
  std::vector<XiVector> pool{xi_from_csv(7, "1,4,1,1,2,3"), xi_from_csv(7, "1,1,2,0,1,1"),
                             xi_from_csv(7, "1,1,1,1,1,1")};
  for (int t = 0; t < 20; ++t) pool.push_back(testutil::random_xi(rng, 7));

  for (const auto& xi : pool) {
    for (const Scalar& t : {Scalar(2), Scalar::rational(5, 3)}) {
      std::vector<Scalar> sc;
      for (const auto& v : xi.xi) sc.push_back(t * v);
      XiVector scaled(7, std::move(sc));
      for (int k = 1; k <= 3; ++k) {
        auto a = origin_ellipse_check(xi, k), b = origin_ellipse_check(scaled, k);
        if (a.verdict != b.verdict) return false;
        if (!(param(b, "C") == t * param(a, "C"))) return false;
      }
      auto ca = concentric_check(xi), cb = concentric_check(scaled);
      if (ca.verdict != cb.verdict) return false;
      for (int k = 1; k <= 3; ++k) {
        auto name = "C" + std::to_string(k);
        if (!(param(cb, name) == t * param(ca, name))) return false;
      }
    }
    auto xit = xi.transposed();
    for (int k = 1; k <= 3; ++k) {
      auto a = origin_ellipse_check(xi, k), b = origin_ellipse_check(xit, k);
      if (a.verdict != b.verdict || !(param(a, "C") == param(b, "C"))) return false;
    }
    if (concentric_check(xi).verdict != concentric_check(xit).verdict) return false;
  }
  return true;
}

bool curve_symmetry_property() {
  auto samples = sample_curve(matrix_from_xi(xi_from_csv(7, "1,1,2,0,1,1")), default_grid(128));
  auto has_near = [&](double x, double y) {
    for (const auto& s : samples)
      if (s.reliable && std::hypot(s.x - x, s.y - y) < 1e-7) return true;
    return false;
  };
  for (const auto& s : samples) {
    if (!s.reliable) continue;
    if (!has_near(s.x, -s.y) || !has_near(-s.x, s.y) || !has_near(-s.x, -s.y)) return false;
  }
  return true;
}

bool spectrum_independence_property() {
  std::mt19937 rng(66);
  auto spec = spectrum(7);
  for (int t = 0; t < 50; ++t) {
    auto a = matrix_from_xi(testutil::random_xi_real(rng, 7));
    ReciprocalMatrix sym;
    sym.n = a.n;
    for (std::size_t j = 0; j + 1 < 7; ++j) {
      double b = std::sqrt(std::abs(a.super[j]) * std::abs(a.sub[j]));
      sym.super.push_back(b);
      sym.sub.push_back(b);
    }
    auto eigs = hermitian_part_eigs(sym, 0.0);
    for (int j = 0; j < 7; ++j)
      if (std::fabs(eigs.values[static_cast<std::size_t>(j)] -
                    spec.values[static_cast<std::size_t>(j)]) > 1e-10)
        return false;
  }
  return true;
}

bool fm_identity_property() {
  for (int n = 4; n <= 9; ++n) {
    const int nv = n;
    std::vector<M> xi;
    for (int i = 0; i < n - 1; ++i) xi.push_back(M::var(i, nv));
    M x2 = M::var(n - 1, nv);
    auto kp = kippenhahn_poly_over<M>(n, std::span<const M>(xi));
    auto f = substitute_linear_symbolic(kp, x2);
    const auto& fm = f[static_cast<std::size_t>(n / 2)];
    if (fm.degree() != 0) return false;
    auto qn = char_poly_qn(n);
    M expected = M::zero(nv);
    for (int i = qn.degree(); i >= 0; --i) expected = expected * x2 + M(nv, qn.coeff(i));
    if (!(fm.coeff(0) == expected)) return false;
  }
  return true;
}

bool criterion7() {
  return scale_and_transpose_properties() && curve_symmetry_property() &&
         spectrum_independence_property() && fm_identity_property();
}

}  // namespace

int main() {
  Acceptance acc;
  try {
    double t1 = 0, t2 = 0;
    acc.report(1, criterion1(t1), "symbolic P_7 matches the displayed expansion exactly");
    acc.report(2, criterion2(t2),
               "one-ellipse figure: exact (X^2=2, C=5), middle branch < 1e-7, "
               "leftover components > 1e-4 from every admissible conic");
    acc.report(3, criterion3(),
               "all-concentric figure: exact C = (2+sqrt2, 2, 2-sqrt2) as roots of "
               "P_7(., 0), curve residual < 1e-7");
    acc.report(4, criterion4(),
               "all 16 catalogued solution vectors verify; figure curves within 1e-6");
    acc.report(5, criterion5(),
               "p > X linear forms match the published triples, positive coefficients, "
               "0/10000 false acceptances");
    bool a = criterion6a(), b = criterion6b(), c = criterion6c();
    acc.report(6, a && b && c,
               std::string("oracles: recursion/enumeration/determinant ") +
                   (a ? "ok" : "FAIL") + ", numeric char-poly " + (b ? "ok" : "FAIL") +
                   ", divisibility/verdict " + (c ? "ok" : "FAIL"));
    acc.report(7, criterion7(),
               "properties: scaling, transposition, four-fold symmetry, spectrum "
               "independence, f_m = Q_n identity");
  } catch (const std::exception& e) {
    std::printf("FAIL: unexpected exception: %s\n", e.what());
    return 1;
  }
  return acc.all_ok ? 0 : 1;
}
