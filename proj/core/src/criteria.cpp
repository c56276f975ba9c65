#include "klab/criteria.hpp"

#include <cmath>
#include <stdexcept>

namespace klab {

namespace {

bool scalar_zero(const Scalar& s, double tol) {
  if (s.is_exact()) return s.sign() == 0;
  return std::fabs(s.to_double()) <= tol;
}

bool all_zero(const std::vector<Scalar>& v, double tol) {
  for (const auto& s : v)
    if (!scalar_zero(s, tol)) return false;
  return true;
}

// sign with the same tolerance convention: 0 within tol, else the IEEE sign
int scalar_sign(const Scalar& s, double tol) {
  if (s.is_exact()) return s.sign();
  double d = s.to_double();
  if (std::fabs(d) <= tol) return 0;
  return d > 0 ? 1 : -1;
}

Scalar sq2(long a, long b) { return Scalar::quad(a, b); }

const Scalar& x(const XiVector& v, int j) {  // 1-based
  return v.xi[static_cast<std::size_t>(j - 1)];
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::holds_degenerately: return "holds-degenerately";
  }
  return "?";
}

std::string to_string(CurveClass c) {
  switch (c) {
    case CurveClass::no_elliptic: return "no-elliptic-components";
    case CurveClass::origin_ellipses: return "origin-ellipses";
    case CurveClass::all_concentric: return "all-concentric";
    case CurveClass::shifted_pair: return "shifted-pair";
    case CurveClass::degenerate: return "degenerate-segments";
  }
  return "?";
}

double residual_tolerance(const XiVector& xi) {
  double mx = 0.0;
  for (const auto& s : xi.xi) mx = std::max(mx, std::fabs(s.to_double()));
  return 1e-8 * std::pow(1.0 + mx, xi.n / 2);
}

// ---------------------------------------------------------------------------
// Literal n = 7 systems.

MiddleEllipseBranches corollary1_n7(const XiVector& v) {
  if (v.n != 7) throw std::invalid_argument("corollary1_n7: n must be 7");
  const Scalar &x1 = x(v, 1), &x2 = x(v, 2), &x3 = x(v, 3), &x4 = x(v, 4), &x5 = x(v, 5),
               &x6 = x(v, 6);
  MiddleEllipseBranches b;
  b.branch1 = x1 + x2 - x5 - x6;
  b.branch2[0] = x1 * x1 + Scalar(2) * x2 * x1 - Scalar(2) * x3 * x1 - Scalar(2) * x4 * x1 +
                 x2 * x2 - x5 * x5 - x6 * x6 + Scalar(2) * x2 * x3 - Scalar(2) * x2 * x4 +
                 Scalar(2) * x3 * x5 - Scalar(2) * x4 * x5 + Scalar(2) * x3 * x6 +
                 Scalar(2) * x4 * x6 - Scalar(2) * x5 * x6;
  b.branch2[1] = x2 + x3 - x4 - x5;
  return b;
}

std::array<Scalar, 3> con7_system(const XiVector& v) {
  if (v.n != 7) throw std::invalid_argument("con7_system: n must be 7");
  const Scalar &x1 = x(v, 1), &x2 = x(v, 2), &x3 = x(v, 3), &x4 = x(v, 4), &x5 = x(v, 5),
               &x6 = x(v, 6);
  auto S = [](long k) { return Scalar(k); };
  Scalar cubic =
      x1 * x1 * x1 + S(3) * x2 * x1 * x1 + S(4) * x3 * x1 * x1 + S(4) * x4 * x1 * x1 +
      S(3) * x5 * x1 * x1 + S(3) * x6 * x1 * x1 + x2 * x2 * x1 + S(2) * x3 * x3 * x1 +
      S(2) * x4 * x4 * x1 + x5 * x5 * x1 + S(3) * x6 * x6 * x1 + S(4) * x2 * x3 * x1 +
      S(4) * x2 * x4 * x1 + S(4) * x3 * x4 * x1 + S(2) * x2 * x5 * x1 - S(28) * x3 * x5 * x1 +
      S(4) * x4 * x5 * x1 + S(6) * x2 * x6 * x1 - S(24) * x3 * x6 * x1 - S(24) * x4 * x6 * x1 +
      S(6) * x5 * x6 * x1 - x2 * x2 * x2 - x5 * x5 * x5 + x6 * x6 * x6 + S(2) * x2 * x3 * x3 +
      S(2) * x2 * x4 * x4 - S(3) * x2 * x5 * x5 + S(3) * x2 * x6 * x6 + S(4) * x3 * x6 * x6 +
      S(4) * x4 * x6 * x6 + S(3) * x5 * x6 * x6 + S(4) * x2 * x3 * x4 - S(3) * x2 * x2 * x5 +
      S(2) * x3 * x3 * x5 + S(2) * x4 * x4 * x5 + S(4) * x3 * x4 * x5 + x2 * x2 * x6 +
      S(2) * x3 * x3 * x6 + S(2) * x4 * x4 * x6 + x5 * x5 * x6 + S(4) * x2 * x3 * x6 -
      S(28) * x2 * x4 * x6 + S(4) * x3 * x4 * x6 + S(2) * x2 * x5 * x6 + S(4) * x3 * x5 * x6 +
      S(4) * x4 * x5 * x6;
  Scalar quad_a = S(5) * x1 * x1 + S(10) * x2 * x1 - S(4) * x3 * x1 - S(4) * x4 * x1 -
                  S(6) * x5 * x1 - S(6) * x6 * x1 + S(3) * x2 * x2 + S(2) * x3 * x3 +
                  S(2) * x4 * x4 + S(3) * x5 * x5 + S(5) * x6 * x6 + S(8) * x2 * x3 -
                  S(8) * x2 * x4 + S(4) * x3 * x4 - S(10) * x2 * x5 - S(8) * x3 * x5 +
                  S(8) * x4 * x5 - S(6) * x2 * x6 - S(4) * x3 * x6 - S(4) * x4 * x6 +
                  S(10) * x5 * x6;
  Scalar quad_b = S(5) * x1 * x1 + S(6) * x2 * x1 - S(8) * x3 * x1 - S(2) * x5 * x1 -
                  S(6) * x6 * x1 - x2 * x2 + S(2) * x3 * x3 + S(2) * x4 * x4 - x5 * x5 +
                  S(5) * x6 * x6 + S(4) * x2 * x3 - S(4) * x2 * x4 + S(4) * x3 * x4 -
                  S(2) * x2 * x5 - S(4) * x3 * x5 + S(4) * x4 * x5 - S(2) * x2 * x6 -
                  S(8) * x4 * x6 + S(6) * x5 * x6;
  return {cubic, quad_a, quad_b};
}

std::array<Scalar, 2> con71_system(const XiVector& v) {
  if (v.n != 7) throw std::invalid_argument("con71_system: n must be 7");
  const Scalar &x1 = x(v, 1), &x2 = x(v, 2), &x3 = x(v, 3), &x4 = x(v, 4), &x5 = x(v, 5),
               &x6 = x(v, 6);
  auto S = [](long k) { return Scalar(k); };
  Scalar quad = x2 * x2 - x3 * x3 - x4 * x4 - x5 * x5 - S(2) * x6 * x6 - S(6) * x3 * x2 +
                S(2) * x4 * x2 + S(2) * x5 * x2 - S(2) * x3 * x4 + S(6) * x3 * x5 -
                S(2) * x4 * x5 + S(4) * x3 * x6 + S(4) * x4 * x6 - S(4) * x5 * x6;
  return {quad, x1 + x2 - x5 - x6};
}

std::array<Scalar, 3> concentric_c_n7(const XiVector& v) {
  if (v.n != 7) throw std::invalid_argument("concentric_c_n7: n must be 7");
  const Scalar &x1 = x(v, 1), &x2 = x(v, 2), &x3 = x(v, 3), &x4 = x(v, 4), &x5 = x(v, 5),
               &x6 = x(v, 6);
  Scalar quarter = Scalar::rational(1, 4);
  Scalar c1 = quarter * (x1 + sq2(1, 1) * x2 + sq2(2, 1) * x3 + sq2(2, 1) * x4 + sq2(1, 1) * x5 +
                         x6);
  Scalar c2 = Scalar::rational(1, 2) * (x1 + x2 + x5 + x6);
  Scalar c3 = quarter * (x1 + sq2(1, -1) * x2 + sq2(2, -1) * x3 + sq2(2, -1) * x4 +
                         sq2(1, -1) * x5 + x6);
  return {c1, c2, c3};
}

std::array<Scalar, 5> crish_system(const XiVector& v, const Scalar& p2, const Scalar& x2sq,
                                   const Scalar& c) {
  if (v.n != 7) throw std::invalid_argument("crish_system: n must be 7");
  const Scalar &x1 = x(v, 1), &x2 = x(v, 2), &x3 = x(v, 3), &x4 = x(v, 4), &x5 = x(v, 5),
               &x6 = x(v, 6);
  auto S = [](long k) { return Scalar(k); };
  Scalar p4 = p2 * p2, x4sq = x2sq * x2sq;
  Scalar s2345 = x2 + x3 + x4 + x5;

  Scalar e0 = S(2) * c * (S(15) * p4 + S(6) * p2 * (S(5) * x2sq - S(6)) + S(3) * x4sq -
                          S(12) * x2sq + S(10)) -
              S(2) * x2 - S(4) * x3 - S(4) * x4 - S(2) * x5 - S(6) * x6 -
              S(2) * x1 * (p4 + p2 * (S(6) * x2sq - S(4)) + x4sq - S(4) * x2sq + S(3)) -
              S(2) * s2345 * (p4 + p2 * (S(6) * x2sq - S(3)) + x4sq - S(3) * x2sq) -
              S(2) * x6 * (p4 + p2 * (S(6) * x2sq - S(4)) + x4sq - S(4) * x2sq);

  Scalar e1 = S(2) * c * (S(5) * p2 + S(3) * x2sq - S(6)) -
              S(2) * (p2 + x2sq - S(2)) * (x1 + x6) + (S(3) - S(2) * (p2 + x2sq)) * s2345;

  // rho^1 coefficient of R_e; the printed equation omits (p^2+X^2) xi2 xi5
  // and one xi1 xi4
  Scalar e2 = S(3) * c * c * (S(5) * p2 + x2sq - S(2)) -
              c * (S(6) * p2 + S(2) * x2sq - S(3)) * s2345 -
              S(2) * c * (S(3) * p2 + x2sq - S(2)) * (x1 + x6) +
              (p2 + x2sq - S(1)) * (x1 * x5 + x2 * x4 + x2 * x6 + x3 * x5 + x3 * x6 + x1 * x4) +
              (p2 + x2sq - S(2)) * (x1 * x3 + x1 * x6 + x4 * x6) + (p2 + x2sq) * x2 * x5;

  Scalar sig2 = x1 * (x3 + x4 + x5 + x6) + x2 * (x4 + x5 + x6) + x3 * (x5 + x6) + x4 * x6;
  Scalar total = x1 + x2 + x3 + x4 + x5 + x6;
  Scalar e3 = S(3) * c * c - S(2) * c * total + sig2;
  Scalar e4 = c * c * c - c * c * total + c * sig2 -
              (x1 * x3 * (x5 + x6) + (x1 + x2) * x4 * x6);
  return {e0, e1, e2, e3, e4};
}

std::vector<Scalar> gb1_system(const XiVector& v) {
  if (v.n != 7) throw std::invalid_argument("gb1_system: n must be 7");
  const Scalar &x1 = x(v, 1), &x2 = x(v, 2), &x3 = x(v, 3), &x4 = x(v, 4), &x5 = x(v, 5),
               &x6 = x(v, 6);
  auto S = [](long k) { return Scalar(k); };
  Scalar e1 = x5 * (x5 + x6) *
              (x5 * x5 - sq2(0, 3) * x6 * x5 - S(4) * x6 * x5 - sq2(0, 2) * x6 * x6 +
               S(2) * x6 * x6);
  Scalar e2 = sq2(0, 204) * x5 * x5 * x5 + S(123) * x5 * x5 * x5 -
              sq2(0, 903) * x6 * x5 * x5 - S(1575) * x6 * x5 * x5 -
              sq2(0, 1107) * x6 * x6 * x5 - S(2356) * x6 * x6 * x5 - S(658) * x6 * x6 * x6 +
              S(658) * x4 * x6 * x6;
  Scalar e3 = sq2(0, 6) * x5 * x5 + S(16) * x5 * x5 + S(23) * x4 * x5 + sq2(0, 4) * x6 * x5 +
              S(26) * x6 * x5 - sq2(0, 2) * x6 * x6 + S(10) * x6 * x6 + sq2(0, 2) * x4 * x6 -
              S(10) * x4 * x6;
  Scalar e4 = S(23) * x4 * x4 - sq2(0, 5) * x6 * x4 - S(21) * x6 * x4 - sq2(0, 15) * x5 * x5 -
              S(17) * x5 * x5 + sq2(0, 5) * x6 * x6 - S(2) * x6 * x6 - sq2(0, 10) * x5 * x6 -
              S(19) * x5 * x6;
  Scalar e5 = S(3) * x2 + sq2(0, 4) * x4 - S(5) * x4 + sq2(0, 2) * x5 - x5 + sq2(0, 2) * x6 -
              S(4) * x6;
  Scalar e6 = S(3) * x1 - sq2(0, 4) * x4 + S(3) * x4 - sq2(0, 2) * x5 - sq2(0, 2) * x6 +
              S(3) * x6;
  return {x3, e1, e2, e3, e4, e5, e6};
}

std::vector<Scalar> gb2_system(const XiVector& v) {
  if (v.n != 7) throw std::invalid_argument("gb2_system: n must be 7");
  const Scalar &x1 = x(v, 1), &x2 = x(v, 2), &x3 = x(v, 3), &x4 = x(v, 4), &x5 = x(v, 5),
               &x6 = x(v, 6);
  auto S = [](long k) { return Scalar(k); };
  Scalar e1 = S(34) * x5 * x5 * x5 + sq2(0, 9) * x6 * x5 * x5 - S(31) * x6 * x5 * x5 +
              sq2(0, 65) * x6 * x6 * x5 - S(86) * x6 * x6 * x5 + sq2(0, 32) * x6 * x6 * x6 -
              S(46) * x6 * x6 * x6;
  Scalar e2 = sq2(0, 104) * x5 * x5 + S(158) * x5 * x5 - sq2(0, 5) * x6 * x5 - x6 * x5 -
              sq2(0, 1) * x6 * x6 - S(10) * x6 * x6 + S(49) * x4 * x6;
  Scalar e3 = sq2(0, 48) * x5 * x5 + S(88) * x5 * x5 + S(49) * x4 * x5 - sq2(0, 40) * x6 * x5 -
              S(8) * x6 * x5 - sq2(0, 8) * x6 * x6 + S(18) * x6 * x6;
  Scalar e4 = S(7) * x3 + S(7) * x4 + sq2(0, 6) * x5 + S(11) * x5 - sq2(0, 6) * x6 - S(4) * x6;
  Scalar e5 = S(7) * x1 + sq2(0, 4) * x5 + S(5) * x5 - sq2(0, 4) * x6 - S(5) * x6;
  return {x2, e1, e2, e3, e4, e5};
}

// ---------------------------------------------------------------------------
// Configurations.

std::array<ShiftedPairConfig, 3> shifted_configs_n7() {
  auto half = mpq_class(1, 2);
  auto quarter = mpq_class(1, 4);
  ShiftedPairConfig central;
  central.name = "central";
  central.p2 = Tower{Quad{1, -half}};  // (2-sqrt2)/2
  central.x2 = Tower{Quad{1, half}};   // (2+sqrt2)/2
  central.x02 = Tower{Quad{2, 0}};
  ShiftedPairConfig inner;
  inner.name = "inner";
  inner.p2 = Tower{Quad{1, quarter}, Quad{-half, 0}};  // (4+sqrt2)/4 - w/2
  inner.x2 = Tower{Quad{1, quarter}, Quad{half, 0}};
  inner.x02 = Tower{Quad{2, -1}};
  ShiftedPairConfig outer;
  outer.name = "outer";
  outer.p2 = Tower{Quad{1, -quarter}, Quad{half, -half}};  // (4-sqrt2)/4 - ((sqrt2-1)/2) w
  outer.x2 = Tower{Quad{1, -quarter}, Quad{-half, half}};
  outer.x02 = Tower{Quad{2, 1}};
  std::array<ShiftedPairConfig, 3> out{central, inner, outer};
  for (auto& c : out) {
    c.p = std::sqrt(c.p2.to_double());
    c.x = std::sqrt(c.x2.to_double());
    c.x0 = std::sqrt(c.x02.to_double());
  }
  return out;
}

std::array<ShiftedPairConfig, 3> wide_configs_n7() {
  auto narrow = shifted_configs_n7();
  // p > X: same focus pairs with center and half-focal-distance exchanged
  std::array<ShiftedPairConfig, 3> out{narrow[1], narrow[0], narrow[2]};
  const char* names[3] = {"wide-a", "wide-b", "wide-c"};
  for (int i = 0; i < 3; ++i) {
    std::swap(out[static_cast<std::size_t>(i)].p2, out[static_cast<std::size_t>(i)].x2);
    std::swap(out[static_cast<std::size_t>(i)].p, out[static_cast<std::size_t>(i)].x);
    out[static_cast<std::size_t>(i)].name = names[i];
  }
  return out;
}

std::vector<Tower> shifted_pair_linear_form_n7(const ShiftedPairConfig& config) {
  return shifted_pair_linear_form<Tower>(7, config.p2, config.x2);
}

// ---------------------------------------------------------------------------
// Reports.

CriterionReport origin_ellipse_check(const XiVector& xi, int k) {
  const int m = xi.n / 2;
  if (k < 1 || k > m) throw std::invalid_argument("origin_ellipse_check: k out of range");
  Scalar x2 = squared_spectrum(xi.n)[static_cast<std::size_t>(k - 1)];

  auto sol = origin_solve<Scalar>(xi.n, std::span<const Scalar>(xi.xi), x2);
  CriterionReport r;
  r.exact = xi.is_exact() && x2.is_exact();
  r.tolerance = r.exact ? 0.0 : residual_tolerance(xi);
  r.residuals = sol.residuals;
  bool zero = all_zero(r.residuals, r.tolerance);
  int csign = scalar_sign(sol.c, r.tolerance);

  // cross-check: remainder of P_n by the elliptic factor
  auto kp = kippenhahn_poly_over<Scalar>(xi.n, std::span<const Scalar>(xi.xi));
  Poly<Poly<Scalar>> factor{-Poly<Scalar>{sol.c, x2}, Poly<Scalar>(Scalar(1))};
  auto [quot, rem] = poly_divrem(kp.zr, factor);
  bool rem_zero = true;
  for (int i = 0; i <= std::max(rem.degree(), 0); ++i)
    for (int j = 0; j <= std::max(rem.coeff(i).degree(), 0); ++j)
      if (!scalar_zero(rem.coeff(i).coeff(j), r.tolerance)) rem_zero = false;
  if (r.exact && rem_zero != zero)
    throw std::logic_error("origin_ellipse_check: divisibility cross-check disagrees");
  if (!r.exact && rem_zero != zero) r.detail = "numeric divisibility cross-check borderline";

  if (xi.n == 7 && k == 2 && r.exact) {
    auto br = corollary1_n7(xi);
    bool cor = br.branch1.sign() == 0 ||
               (br.branch2[0].sign() == 0 && br.branch2[1].sign() == 0);
    if (cor != zero)
      throw std::logic_error("origin_ellipse_check: corollary cross-check disagrees");
  }

  if (!zero)
    r.verdict = Verdict::fails;
  else if (csign > 0)
    r.verdict = Verdict::holds;
  else if (csign == 0)
    r.verdict = Verdict::holds_degenerately;
  else {
    r.verdict = Verdict::fails;
    r.detail = "divides with negative C";
  }
  r.params.emplace_back("C", sol.c);
  r.params.emplace_back("X2", x2);
  return r;
}

CriterionReport concentric_check(const XiVector& xi) {
  auto x2s = squared_spectrum(xi.n);
  auto sol = concentric_solve<Scalar>(xi.n, std::span<const Scalar>(xi.xi),
                                      std::span<const Scalar>(x2s));
  CriterionReport r;
  bool x2_exact = true;
  for (const auto& s : x2s) x2_exact = x2_exact && s.is_exact();
  r.exact = xi.is_exact() && x2_exact;
  r.tolerance = r.exact ? 0.0 : residual_tolerance(xi);
  r.residuals = sol.residuals;
  bool zero = all_zero(r.residuals, r.tolerance);

  int min_csign = 1;
  for (const auto& c : sol.c) min_csign = std::min(min_csign, scalar_sign(c, r.tolerance));

  if (xi.n == 7) {
    auto lit = con7_system(xi);
    auto simple = con71_system(xi);
    bool lit_zero = scalar_zero(lit[0], r.tolerance) && scalar_zero(lit[1], r.tolerance) &&
                    scalar_zero(lit[2], r.tolerance);
    bool cor = (scalar_zero(simple[0], r.tolerance) && scalar_zero(simple[1], r.tolerance)) ||
               (scalar_zero(x(xi, 2) + x(xi, 3) - x(xi, 4) - x(xi, 5), r.tolerance) &&
                scalar_zero(lit[0], r.tolerance) && scalar_zero(lit[1], r.tolerance));
    if (r.exact && (lit_zero != zero || cor != zero))
      throw std::logic_error("concentric_check: simplified-system cross-check disagrees");
    auto cs = concentric_c_n7(xi);
    for (int i = 0; i < 3; ++i)
      if (!scalar_zero(cs[static_cast<std::size_t>(i)] - sol.c[static_cast<std::size_t>(i)],
                       std::max(r.tolerance, 1e-9)))
        throw std::logic_error("concentric_check: closed-form C values disagree");
  }

  if (!zero)
    r.verdict = Verdict::fails;
  else if (min_csign > 0)
    r.verdict = Verdict::holds;
  else if (min_csign == 0)
    r.verdict = Verdict::holds_degenerately;
  else {
    r.verdict = Verdict::fails;
    r.detail = "factors with negative C";
  }
  for (std::size_t i = 0; i < sol.c.size(); ++i)
    r.params.emplace_back("C" + std::to_string(i + 1), sol.c[i]);
  return r;
}

CriterionReport shifted_pair_residuals(const XiVector& xi, const Scalar& p2, const Scalar& x2) {
  if (p2.sign() <= 0 || x2.sign() <= 0)
    throw std::invalid_argument("shifted_pair_residuals: p and X must be positive");
  if ((p2 - x2).sign() == 0)
    throw std::invalid_argument("shifted_pair_residuals: p = X makes one focus zero");
  double pd = std::sqrt(p2.to_double()), xd = std::sqrt(x2.to_double());
  auto spec = spectrum(xi.n);
  auto in_spectrum = [&](double f) {
    for (double e : spec.values)
      if (std::fabs(e - f) < 1e-9) return true;
    return false;
  };
  if (!in_spectrum(pd + xd) || !in_spectrum(std::fabs(pd - xd)))
    throw std::invalid_argument("shifted_pair_residuals: p +- X are not eigenvalues");

  auto sol = shifted_pair_solve<Scalar>(xi.n, std::span<const Scalar>(xi.xi), p2, x2);
  CriterionReport r;
  r.exact = xi.is_exact() && p2.is_exact() && x2.is_exact();
  r.tolerance = r.exact ? 0.0 : residual_tolerance(xi);
  r.residuals.push_back(sol.lead_even);
  r.residuals.push_back(sol.lead_odd);
  for (const auto& s : sol.residuals) r.residuals.push_back(s);
  bool zero = all_zero(r.residuals, r.tolerance);
  int csign = scalar_sign(sol.c, r.tolerance);

  if (xi.n == 7) {
    auto lit = crish_system(xi, p2, x2, sol.c);
    bool lit_zero = true;
    for (const auto& s : lit) lit_zero = lit_zero && scalar_zero(s, r.tolerance);
    if (r.exact && lit_zero != zero)
      throw std::logic_error("shifted_pair_residuals: verbatim system cross-check disagrees");
    if (!r.exact && lit_zero != zero) r.detail = "numeric verbatim cross-check borderline";
  }

  if (!zero)
    r.verdict = Verdict::fails;
  else if (csign > 0)
    r.verdict = Verdict::holds;
  else if (csign == 0)
    r.verdict = Verdict::holds_degenerately;
  else {
    r.verdict = Verdict::fails;
    r.detail = "solves with negative C";
  }
  r.params.emplace_back("C", sol.c);
  r.params.emplace_back("p2", p2);
  r.params.emplace_back("X2", x2);
  return r;
}

CriterionReport factorization_check_n7(const XiVector& xi, const ShiftedPairConfig& config) {
  if (xi.n != 7) throw std::invalid_argument("factorization_check_n7: n must be 7");
  Scalar p2 = to_scalar(config.p2), x2 = to_scalar(config.x2), x02 = to_scalar(config.x02);

  CriterionReport r;
  r.exact = xi.is_exact() && p2.is_exact() && x2.is_exact() && x02.is_exact();
  r.tolerance = r.exact ? 0.0 : residual_tolerance(xi);

  bool case_i;
  if (config.vanishing_index != 0) {
    case_i = config.case_i();
  } else {
    bool i_ok = scalar_zero(x(xi, 2) * x(xi, 3), r.tolerance);
    bool ii_ok = scalar_zero(x(xi, 4) * x(xi, 5), r.tolerance);
    case_i = i_ok || !ii_ok;
  }

  auto sol = factorization_residuals_n7<Scalar>(std::span<const Scalar>(xi.xi), case_i, p2, x2,
                                                x02);
  r.residuals = sol.residuals;
  bool zero = all_zero(r.residuals, r.tolerance);
  int csign = scalar_sign(sol.c, r.tolerance);
  int c0sign = scalar_sign(sol.c0, r.tolerance);

  if (!zero)
    r.verdict = Verdict::fails;
  else if (csign > 0 && c0sign > 0)
    r.verdict = Verdict::holds;
  else if (csign >= 0 && c0sign >= 0)
    r.verdict = Verdict::holds_degenerately;
  else {
    r.verdict = Verdict::fails;
    r.detail = "factors with negative minor half-axis square";
  }
  r.params.emplace_back("C", sol.c);
  r.params.emplace_back("C0", sol.c0);
  r.params.emplace_back("p2", p2);
  r.params.emplace_back("X2", x2);
  r.params.emplace_back("X02", x02);
  return r;
}

// ---------------------------------------------------------------------------
// Classification.

namespace {

Scalar param(const CriterionReport& r, const std::string& name) {
  for (const auto& [k, v] : r.params)
    if (k == name) return v;
  throw std::logic_error("missing report parameter " + name);
}

}  // namespace

Classification classify(const XiVector& xi) {
  Classification out;
  auto x2s = squared_spectrum(xi.n);
  const int m = xi.n / 2;

  auto con = concentric_check(xi);
  out.evidence.emplace_back("concentric", con);
  if (con.holds()) {
    bool all_degenerate = true;
    for (int k = 1; k <= m; ++k) {
      Scalar c = param(con, "C" + std::to_string(k));
      if (scalar_sign(c, con.tolerance) != 0) all_degenerate = false;
      out.ellipses.push_back({Scalar(0), x2s[static_cast<std::size_t>(k - 1)], c});
    }
    out.kind = all_degenerate ? CurveClass::degenerate : CurveClass::all_concentric;
    return out;
  }

  std::vector<EllipseSpec> origin_found;
  for (int k = 1; k <= m; ++k) {
    auto r = origin_ellipse_check(xi, k);
    out.evidence.emplace_back("origin-k" + std::to_string(k), r);
    if (r.holds())
      origin_found.push_back({Scalar(0), x2s[static_cast<std::size_t>(k - 1)], param(r, "C")});
  }

  if (xi.n == 7) {
    for (const auto& config : shifted_configs_n7()) {
      auto r = factorization_check_n7(xi, config);
      out.evidence.emplace_back("shifted-" + config.name, r);
      if (r.holds()) {
        Scalar p = Scalar::real(config.p);
        out.kind = CurveClass::shifted_pair;
        out.ellipses = {{p, param(r, "X2"), param(r, "C")},
                        {-p, param(r, "X2"), param(r, "C")},
                        {Scalar(0), param(r, "X02"), param(r, "C0")}};
        return out;
      }
    }
  } else {
    auto spec = spectrum(xi.n);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        double a = spec.values[static_cast<std::size_t>(i)];
        double b = spec.values[static_cast<std::size_t>(j)];
        // opposite-sign foci (p < X) and same-sign foci (p > X)
        double cand[2][2] = {{(a - b) / 2, (a + b) / 2}, {(a + b) / 2, (a - b) / 2}};
        for (auto& px : cand) {
          if (px[0] <= 0 || px[1] <= 0 || px[0] == px[1]) continue;
          auto r = shifted_pair_residuals(xi, Scalar::real(px[0] * px[0]),
                                          Scalar::real(px[1] * px[1]));
          out.evidence.emplace_back(
              "shifted-p" + std::to_string(px[0]) + "-x" + std::to_string(px[1]), r);
          if (r.holds()) {
            out.kind = CurveClass::shifted_pair;
            Scalar p = Scalar::real(px[0]);
            out.ellipses = {{p, param(r, "X2"), param(r, "C")},
                            {-p, param(r, "X2"), param(r, "C")}};
            return out;
          }
        }
      }
  }

  if (!origin_found.empty()) {
    out.kind = CurveClass::origin_ellipses;
    out.ellipses = origin_found;
  } else {
    out.kind = CurveClass::no_elliptic;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Catalogue.

namespace {

Quad q(long a, long b = 0) { return Quad{a, b}; }

Tower tw(Quad a, Quad b = Quad{0, 0}) { return Tower{std::move(a), std::move(b)}; }

CatalogEntry make_exact(const std::string& name, int theorem, int index,
                        const ShiftedPairConfig& config, int vanishing,
                        std::vector<Tower> xi_exact, Tower c, Tower c0, int figure) {
  CatalogEntry e;
  e.name = name;
  e.theorem = theorem;
  e.index = index;
  e.closed_form = true;
  e.xi_exact = std::move(xi_exact);
  for (const auto& t : e.xi_exact) e.xi.push_back(t.to_double());
  e.config = config;
  e.config.vanishing_index = vanishing;
  e.c_exact = c;
  e.c0_exact = c0;
  e.c = c.to_double();
  e.c0 = c0.to_double();
  e.figure = figure;
  return e;
}

CatalogEntry make_approx(const std::string& name, int theorem, int index,
                         const ShiftedPairConfig& config, int vanishing, std::vector<double> xi) {
  CatalogEntry e;
  e.name = name;
  e.theorem = theorem;
  e.index = index;
  e.closed_form = false;
  e.xi = std::move(xi);
  e.config = config;
  e.config.vanishing_index = vanishing;
  // case (i): C = xi1 + xi2, C0 = xi3 + xi4 + xi5 + xi6 - C
  e.c = e.xi[0] + e.xi[1];
  e.c0 = e.xi[2] + e.xi[3] + e.xi[4] + e.xi[5] - e.c;
  return e;
}

CatalogEntry permuted(const CatalogEntry& src, int index) {
  CatalogEntry e = src;
  e.index = index;
  e.name = "thm" + std::to_string(e.theorem) + ".xi" + std::to_string(index);
  e.figure = 0;
  std::reverse(e.xi.begin(), e.xi.end());
  std::reverse(e.xi_exact.begin(), e.xi_exact.end());
  e.config.vanishing_index = 7 - src.config.vanishing_index;
  return e;
}

}  // namespace

std::vector<CatalogEntry> solution_catalog_n7() {
  auto configs = shifted_configs_n7();
  const auto& central = configs[0];
  const auto& inner = configs[1];
  const auto& outer = configs[2];
  std::vector<CatalogEntry> out;

  // foci sqrt(2 +- sqrt2), E0 foci +-sqrt2
  out.push_back(make_exact(
      "thm6.xi1", 6, 1, central, 3,
      {tw(q(-2, 2)), tw(q(3, -2)), tw(q(0)), tw(q(1)), tw(q(0)), tw(q(1))}, tw(q(1)), tw(q(1)),
      3));
  out.push_back(make_exact(
      "thm6.xi2", 6, 2, central, 2,
      {tw(q(1, 1)), tw(q(0)), tw(q(1, 1)), tw(q(0)), tw(q(-1, 1)), tw(q(2))}, tw(q(1, 1)),
      tw(q(1, 1)), 4));

  // foci sqrt(2+sqrt2), -sqrt2; E0 foci +-sqrt(2-sqrt2)
  out.push_back(make_exact(
      "thm7.xi1", 7, 1, inner, 2,
      {tw(q(1)), tw(q(0)), tw(q(9, -7), q(-8, 6)), tw(q(8, 2), q(-4, 0)),
       tw(q(5, -8), q(-6, 6)), tw(q(-6, 4), q(6, -4))},
      tw(q(1)), tw(q(15, -9), q(-12, 8)), 5));
  out.push_back(make_exact(
      "thm7.xi2", 7, 2, inner, 2,
      {tw(q(1)), tw(q(0)), tw(Quad{2, mpq_class(3, 2)}, q(0, -1)),
       tw(Quad{-2, mpq_class(1, 2)}, q(2, -1)), tw(q(8, 2), q(-4, 0)), tw(q(-9, -6), q(4, 2))},
      tw(q(1)), tw(q(-2, -2), q(2, 0)), 0));
  out.push_back(make_approx("thm7.xi3", 7, 3, inner, 3,
                            {1, 1.69724, 0, 1.01396, 1.19026, 0.790003}));
  out.push_back(make_approx("thm7.xi4", 7, 4, inner, 3,
                            {1, 1.51367, 0, 1.0412, 0.944947, 0.900544}));
  for (int i = 0; i < 4; ++i)
    out.push_back(permuted(out[static_cast<std::size_t>(2 + i)], 5 + i));

  // foci sqrt(2-sqrt2), -sqrt2; E0 foci +-sqrt(2+sqrt2)
  out.push_back(make_exact(
      "thm8.xi1", 8, 1, outer, 2,
      {tw(q(1)), tw(q(0)), tw(q(9, 7), q(-4, -2)), tw(q(8, -2), q(4, -4)), tw(q(5, 8), q(-6, 0)),
       tw(q(-6, -4), q(2, 2))},
      tw(q(1)), tw(q(15, 9), q(-4, -4)), 6));
  out.push_back(make_exact(
      "thm8.xi2", 8, 2, outer, 2,
      {tw(q(1)), tw(q(0)), tw(Quad{2, mpq_class(-3, 2)}, q(2, -1)),
       tw(Quad{-2, mpq_class(-1, 2)}, q(0, 1)), tw(q(8, -2), q(4, -4)), tw(q(-9, 6), q(-8, 6))},
      tw(q(1)), tw(q(-2, 2), q(-2, 2)), 0));
  out.push_back(make_approx("thm8.xi3", 8, 3, outer, 3,
                            {1, 0.447769, 0, 1.21903, -0.161745, 2.4715}));
  for (int i = 0; i < 3; ++i)
    out.push_back(permuted(out[out.size() - 3], 4 + i));
  return out;
}

CriterionReport verify_catalog_entry(const CatalogEntry& entry) {
  CriterionReport r;
  bool case_i = entry.config.case_i();
  if (entry.closed_form) {
    auto sol = factorization_residuals_n7<Tower>(std::span<const Tower>(entry.xi_exact), case_i,
                                                 entry.config.p2, entry.config.x2,
                                                 entry.config.x02);
    r.exact = true;
    r.tolerance = 0.0;
    bool zero = true;
    for (const auto& t : sol.residuals) {
      r.residuals.push_back(to_scalar(t));
      zero = zero && t.is_zero();
    }
    bool match = (sol.c == entry.c_exact) && (sol.c0 == entry.c0_exact);
    bool positive = sol.c.sign() > 0 && sol.c0.sign() > 0;
    r.verdict = (zero && match && positive) ? Verdict::holds : Verdict::fails;
    if (!match) r.detail = "recovered minor half-axes disagree with the catalogue";
    r.params.emplace_back("C", to_scalar(sol.c));
    r.params.emplace_back("C0", to_scalar(sol.c0));
  } else {
    auto sol = factorization_residuals_n7<double>(std::span<const double>(entry.xi), case_i,
                                                  entry.config.p2.to_double(),
                                                  entry.config.x2.to_double(),
                                                  entry.config.x02.to_double());
    r.exact = false;
    r.tolerance = 1e-4;  // the catalogued approximations carry six digits
    bool zero = true;
    for (double d : sol.residuals) {
      r.residuals.push_back(Scalar::real(d));
      zero = zero && std::fabs(d) <= r.tolerance;
    }
    bool match = std::fabs(sol.c - entry.c) <= r.tolerance &&
                 std::fabs(sol.c0 - entry.c0) <= r.tolerance;
    r.verdict = (zero && match) ? Verdict::holds : Verdict::fails;
    r.params.emplace_back("C", Scalar::real(sol.c));
    r.params.emplace_back("C0", Scalar::real(sol.c0));
  }
  return r;
}

}  // namespace klab
