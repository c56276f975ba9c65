#ifndef KLAB_CRITERIA_HPP
#define KLAB_CRITERIA_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "klab/kippenhahn.hpp"
#include "klab/multipoly.hpp"
#include "klab/reciprocal.hpp"
#include "klab/tower.hpp"

namespace klab {

enum class Verdict { holds, fails, holds_degenerately };

std::string to_string(Verdict v);

/// One conic component: center p on the real axis, half focal distance X,
/// squared minor half-axis C. Squared major half-axis is C + X^2; foci p +- X.
struct EllipseSpec {
  Scalar p;   // 0 for origin-centered
  Scalar x2;  // X^2 > 0
  Scalar c;   // C >= 0; C = 0 is the degenerate focal segment

  bool degenerate() const { return c.sign() == 0; }
  double center() const { return p.to_double(); }
  double half_focal() const { return std::sqrt(x2.to_double()); }
  double minor_half_axis() const { return std::sqrt(std::max(0.0, c.to_double())); }
  double major_half_axis() const { return std::sqrt(c.to_double() + x2.to_double()); }
};

struct CriterionReport {
  Verdict verdict = Verdict::fails;
  bool exact = false;      // residuals evaluated in exact arithmetic
  double tolerance = 0.0;  // zero-test threshold used in numeric mode
  std::vector<Scalar> residuals;
  std::vector<std::pair<std::string, Scalar>> params;
  std::string detail;

  bool holds() const { return verdict != Verdict::fails; }
};

/// A shifted-pair configuration for n = 7: foci of E are p +- X with p < X,
/// and the coexisting origin-centered ellipse E_0 has foci +-X_0. The exact
/// squares live in Q(sqrt2)(w).
struct ShiftedPairConfig {
  std::string name;
  double p = 0, x = 0, x0 = 0;
  Tower p2, x2, x02;
  int vanishing_index = 0;  // 1-based xi index forced to zero (2..5); 0 = unspecified

  bool case_i() const { return vanishing_index == 2 || vanishing_index == 3; }
};

/// The three admissible p < X configurations for n = 7 (Thm-5 setting), in the
/// order: E_0 foci +-sqrt2 (middle), +-sqrt(2-sqrt2) (inner), +-sqrt(2+sqrt2) (outer).
std::array<ShiftedPairConfig, 3> shifted_configs_n7();
/// The three p > X configurations (ruled out for nonnegative xi).
std::array<ShiftedPairConfig, 3> wide_configs_n7();

/// shifted_pair_linear_form over the tower field at a configuration's (p^2, X^2).
std::vector<Tower> shifted_pair_linear_form_n7(const ShiftedPairConfig& config);

// ---------------------------------------------------------------------------
// Generic solver cores, usable over Scalar, Tower, or double.

template <class R>
struct OriginSolve {
  R c = R(0);
  std::vector<R> residuals;  // f_0 .. f_{m-2} after eliminating C
};

/// Origin-centered ellipse criterion: at X^2 = x2 (a squared eigenvalue), f_m vanishes
/// identically, f_{m-1} is solved linearly for C, and the remaining f_j become
/// the homogeneous residual system.
template <class R>
OriginSolve<R> origin_solve(int n, std::span<const R> xi, const R& x2) {
  auto kp = kippenhahn_poly_over<R>(n, xi);
  auto f = substitute_linear_symbolic(kp, x2);
  const int m = kp.m();
  const auto& fm1 = f[static_cast<std::size_t>(m - 1)];
  if (fm1.degree() != 1)
    throw std::logic_error("origin_solve: f_{m-1} not linear in C (X not a simple root?)");
  OriginSolve<R> out;
  out.c = -fm1.coeff(0) * ring_inverse(fm1.coeff(1));
  for (int j = 0; j <= m - 2; ++j)
    out.residuals.push_back(f[static_cast<std::size_t>(j)].eval(out.c));
  return out;
}

template <class R>
struct ConcentricSolve {
  std::vector<R> c;          // C_1..C_m from the linear system Z C = r
  std::vector<R> residuals;  // coefficients of P_n - prod(zeta - (C_k + rho X_k^2))
};

/// All-concentric criterion. x2s are the squared positive eigenvalues X_k^2
/// in decreasing order.
template <class R>
ConcentricSolve<R> concentric_solve(int n, std::span<const R> xi, std::span<const R> x2s) {
  const int m = n / 2;
  if (static_cast<int>(x2s.size()) != m)
    throw std::invalid_argument("concentric_solve: need m squared eigenvalues");
  auto kp = kippenhahn_poly_over<R>(n, xi);

  // Z_{jq} = e_{j-1}(x2s without q); r_j = (-1)^j [rho^{j-1}] p_{m-j}
  std::vector<std::vector<R>> zmat(static_cast<std::size_t>(m),
                                   std::vector<R>(static_cast<std::size_t>(m) + 1, R(0)));
  for (int q = 0; q < m; ++q) {
    // elementary symmetric polynomials of the m-1 values excluding q
    std::vector<R> e(static_cast<std::size_t>(m), R(0));
    e[0] = R(1);
    int cnt = 0;
    for (int i = 0; i < m; ++i) {
      if (i == q) continue;
      ++cnt;
      for (int d = cnt; d >= 1; --d)
        e[static_cast<std::size_t>(d)] =
            e[static_cast<std::size_t>(d)] + x2s[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(d - 1)];
    }
    for (int j = 1; j <= m; ++j)
      zmat[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(q)] = e[static_cast<std::size_t>(j - 1)];
  }
  for (int j = 1; j <= m; ++j) {
    R rhs = kp.zr.coeff(m - j).coeff(j - 1);
    if (j % 2 != 0) rhs = -rhs;
    zmat[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(m)] = rhs;
  }

  // Gaussian elimination; Z is Vandermonde-like with det != 0
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int row = col; row < m; ++row)
      if (!ring_is_zero(zmat[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)])) {
        piv = row;
        break;
      }
    if (piv < 0) throw std::logic_error("concentric_solve: singular Z matrix");
    std::swap(zmat[static_cast<std::size_t>(piv)], zmat[static_cast<std::size_t>(col)]);
    R inv = ring_inverse(zmat[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)]);
    for (int k = col; k <= m; ++k)
      zmat[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)] =
          zmat[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)] * inv;
    for (int row = 0; row < m; ++row) {
      if (row == col) continue;
      R factor = zmat[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
      if (ring_is_zero(factor)) continue;
      for (int k = col; k <= m; ++k)
        zmat[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] =
            zmat[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] -
            factor * zmat[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)];
    }
  }

  ConcentricSolve<R> out;
  for (int k = 0; k < m; ++k)
    out.c.push_back(zmat[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)]);

  // residuals: all coefficients of P_n - prod(zeta - (C_k + rho X_k^2))
  using ZR = Poly<Poly<R>>;
  ZR prod = ZR(Poly<R>(R(1)));
  for (int k = 0; k < m; ++k)
    prod *= ZR{-Poly<R>{out.c[static_cast<std::size_t>(k)], x2s[static_cast<std::size_t>(k)]},
               Poly<R>(R(1))};
  ZR diff = kp.zr - prod;
  for (int i = 0; i <= std::max(diff.degree(), 0); ++i)
    for (int j = 0; j <= std::max(diff.coeff(i).degree(), 0); ++j)
      if (!ring_is_zero(diff.coeff(i).coeff(j))) out.residuals.push_back(diff.coeff(i).coeff(j));
  return out;
}

template <class R>
struct ShiftSolve {
  R c = R(0);
  R lead_even = R(0), lead_odd = R(0);  // rho^m / rho^{m-1} coefficients, constant in C and xi;
                                        // they vanish iff p +- X are both eigenvalues
  std::vector<R> residuals;             // remaining 2m-2 equations after eliminating C
};

/// Shifted-pair criterion at a fixed focus pair: zero all coefficients of
/// R_e and R_o, eliminate C via the rho^{m-1} coefficient of R_e (linear in C),
/// and report the remaining 2m-2 residuals. Leading coefficients are reported,
/// not assumed zero.
template <class R>
ShiftSolve<R> shifted_pair_solve(int n, std::span<const R> xi, const R& p2, const R& x2) {
  auto kp = kippenhahn_poly_over<R>(n, xi);
  const int m = kp.m();
  auto parts = even_odd_split_symbolic(kp, p2, x2);

  ShiftSolve<R> out;
  out.lead_even = parts.even.coeff(m).coeff(0);
  out.lead_odd = parts.odd.coeff(m - 1).coeff(0);

  const auto& pivot = parts.even.coeff(m - 1);  // linear in C
  if (pivot.degree() != 1) throw std::logic_error("shifted_pair_solve: pivot not linear in C");
  out.c = -pivot.coeff(0) * ring_inverse(pivot.coeff(1));

  for (int j = 0; j <= m - 2; ++j)
    out.residuals.push_back(parts.even.coeff(j).eval(out.c));
  for (int j = 0; j <= m - 2; ++j)
    out.residuals.push_back(parts.odd.coeff(j).eval(out.c));
  return out;
}

/// Coefficients of (xi_1 + xi_{n-1}), (xi_2 + xi_{n-2}), ... in the linear form
/// obtained by eliminating C between the rho^{m-1} coefficient of R_e and the
/// rho^{m-2} coefficient of R_o, with xi symbolic. Both are linear in (C, xi).
template <class R>
std::vector<R> shifted_pair_linear_form(int n, const R& p2, const R& x2) {
  using M = MultiPoly<R>;
  const int nv = n - 1;
  std::vector<M> xi;
  for (int i = 0; i < nv; ++i) xi.push_back(M::var(i, nv));
  auto kp = kippenhahn_poly_over<M>(n, std::span<const M>(xi));
  auto parts = even_odd_split_symbolic(kp, M(nv, p2), M(nv, x2));
  const int m = n / 2;

  auto linear = [&](const Poly<M>& eq) {
    if (eq.degree() != 1) throw std::logic_error("shifted_pair_linear_form: equation not linear in C");
    return std::pair<M, M>(eq.coeff(1), eq.coeff(0));
  };
  auto [a_e, b_e] = linear(parts.even.coeff(m - 1));
  auto [a_o, b_o] = linear(parts.odd.coeff(m - 2));
  M elim = a_o * b_e - a_e * b_o;

  std::vector<R> coeffs;
  const std::vector<R> origin(static_cast<std::size_t>(nv), R(0));
  for (int i = 0; i < nv / 2 + (nv % 2); ++i) {
    M ci = elim.coeff_of(i, 1);
    M cj = elim.coeff_of(nv - 1 - i, 1);
    if (!(ci == cj))
      throw std::logic_error("shifted_pair_linear_form: transposition symmetry violated");
    R val = ci.eval(origin);
    if (!(ci == M(nv, val)))
      throw std::logic_error("shifted_pair_linear_form: nonconstant coefficient");
    coeffs.push_back(val);
  }
  return coeffs;
}

/// Factorization residuals: case condition, quadratic condition, and the full
/// coefficient comparison P_7 == (zeta - (C0 + rho X0^2)) * shell(p, X, C).
/// C and C0 are recovered from the tangent-line identities.
template <class R>
struct FactorizationResult {
  R c = R(0), c0 = R(0);
  std::vector<R> residuals;
};

template <class R>
FactorizationResult<R> factorization_residuals_n7(std::span<const R> xi, bool case_i, const R& p2,
                                                  const R& x2, const R& x02) {
  if (xi.size() != 6) throw std::invalid_argument("factorization_residuals_n7: need 6 xi values");
  FactorizationResult<R> out;
  const R s3456 = xi[2] + xi[3] + xi[4] + xi[5];
  const R s1234 = xi[0] + xi[1] + xi[2] + xi[3];
  if (case_i) {
    out.residuals.push_back(xi[1] * xi[2]);  // xi2 xi3 = 0
    out.c = xi[0] + xi[1];
    out.c0 = s3456 - out.c;
    out.residuals.push_back(out.c * out.c - s3456 * out.c + xi[2] * xi[4] + xi[2] * xi[5] +
                            xi[3] * xi[5]);
  } else {
    out.residuals.push_back(xi[3] * xi[4]);  // xi4 xi5 = 0
    out.c = xi[4] + xi[5];
    out.c0 = s1234 - out.c;
    out.residuals.push_back(out.c * out.c - s1234 * out.c + xi[0] * xi[2] + xi[0] * xi[3] +
                            xi[1] * xi[3]);
  }

  auto kp = kippenhahn_poly_over<R>(7, xi);
  using ZR = Poly<Poly<R>>;
  // shell: zeta^2 - 2 zeta (C + rho(p^2+X^2)) + (C + rho(X^2-p^2))^2
  Poly<R> a{out.c, p2 + x2};       // C + rho(p^2+X^2)
  Poly<R> b{out.c, x2 - p2};       // C + rho(X^2-p^2)
  ZR shell{b * b, R(-2) * a, Poly<R>(R(1))};
  ZR lin{-Poly<R>{out.c0, x02}, Poly<R>(R(1))};  // zeta - (C0 + rho X0^2)
  ZR diff = kp.zr - lin * shell;
  for (int i = 0; i <= std::max(diff.degree(), 0); ++i)
    for (int j = 0; j <= std::max(diff.coeff(i).degree(), 0); ++j)
      if (!ring_is_zero(diff.coeff(i).coeff(j))) out.residuals.push_back(diff.coeff(i).coeff(j));
  return out;
}

// ---------------------------------------------------------------------------
// Scalar-level reports.

CriterionReport origin_ellipse_check(const XiVector& xi, int k);
CriterionReport concentric_check(const XiVector& xi);
CriterionReport shifted_pair_residuals(const XiVector& xi, const Scalar& p2, const Scalar& x2);
CriterionReport factorization_check_n7(const XiVector& xi, const ShiftedPairConfig& config);

enum class CurveClass { no_elliptic, origin_ellipses, all_concentric, shifted_pair, degenerate };

std::string to_string(CurveClass c);

struct Classification {
  CurveClass kind = CurveClass::no_elliptic;
  std::vector<EllipseSpec> ellipses;
  std::vector<std::pair<std::string, CriterionReport>> evidence;
};

Classification classify(const XiVector& xi);

// ---------------------------------------------------------------------------
// Literal n = 7 systems from the Groebner-simplified criteria. These are kept
// verbatim (not re-derived) and used as cross-checks against the generic
// procedures. All return residual vectors that vanish iff the system holds.

/// Corollary for foci +-sqrt2: returns the two-branch data. Branch 1 is the
/// single linear condition xi1+xi2-xi5-xi6; branch 2 is the quadratic together
/// with xi2+xi3-xi4-xi5. Holds iff branch 1 vanishes or branch 2 does.
struct MiddleEllipseBranches {
  Scalar branch1;                 // xi1+xi2-xi5-xi6
  std::array<Scalar, 2> branch2;  // quadratic, xi2+xi3-xi4-xi5
};
MiddleEllipseBranches corollary1_n7(const XiVector& xi);

/// The three concentric-case equations obtained after eliminating C1..C3
/// (one cubic, two quadratic).
std::array<Scalar, 3> con7_system(const XiVector& xi);
/// Simplified two-branch form: {quadratic, xi1+xi2-xi5-xi6} or the
/// xi2+xi3=xi4+xi5 branch combined with the first two con7 equations.
std::array<Scalar, 2> con71_system(const XiVector& xi);
/// Closed-form C1..C3 for the concentric case (decreasing foci order).
std::array<Scalar, 3> concentric_c_n7(const XiVector& xi);

/// The five shifted-pair equations in (p^2, X^2, C). The rho^1 coefficient of
/// R_e as printed drops the terms (p^2+X^2) xi2 xi5 + xi1 xi4; the corrected
/// equation is used here (the printed variant fails on the catalogued
/// solutions).
std::array<Scalar, 5> crish_system(const XiVector& xi, const Scalar& p2, const Scalar& x2,
                                   const Scalar& c);

/// Groebner bases of the central-configuration system: gb1 for the xi3 = 0
/// branch, gb2 for the xi2 = 0 branch. The vanishing xi entry is included as
/// the leading residual.
std::vector<Scalar> gb1_system(const XiVector& xi);
std::vector<Scalar> gb2_system(const XiVector& xi);

/// Coefficients (of xi1+xi6, xi2+xi5, xi3+xi4) of the C-eliminated linear
/// form, written directly in p^2 and X^2; the generic
/// shifted_pair_linear_form reproduces these values exactly.
template <class R>
std::array<R, 3> linxi_coefficients(const R& p2, const R& x2) {
  R p4 = p2 * p2, x4 = x2 * x2;
  R c1 = R(2) * (R(10) * p4 * p2 + R(12) * p4 * x2 - R(40) * p4 + R(10) * p2 * x4 -
                 R(40) * p2 * x2 + R(43) * p2 + x2 - R(2));
  R c2 = R(20) * p4 * p2 + R(24) * p4 * x2 - R(75) * p4 + R(20) * p2 * x4 - R(66) * p2 * x2 +
         R(82) * p2 - R(3) * x4 + R(14) * x2 - R(18);
  R c3 = R(20) * p4 * p2 + R(24) * p4 * x2 - R(75) * p4 + R(20) * p2 * x4 - R(66) * p2 * x2 +
         R(72) * p2 - R(3) * x4 + R(8) * x2 - R(6);
  return {c1, c2, c3};
}

// ---------------------------------------------------------------------------
// Catalogue of the complete n = 7 shifted-pair solution families.

struct CatalogEntry {
  std::string name;     // e.g. "thm6.xi2"
  int theorem = 0;      // 6, 7, or 8
  int index = 0;        // j within the theorem
  bool closed_form = false;
  std::vector<Tower> xi_exact;  // valid when closed_form
  std::vector<double> xi;       // always valid
  ShiftedPairConfig config;
  Tower c_exact, c0_exact;      // valid when closed_form
  double c = 0, c0 = 0;
  int figure = 0;  // display figure index (3..6), 0 if none
};

std::vector<CatalogEntry> solution_catalog_n7();

/// Runs factorization_residuals_n7 on one catalogue entry: exactly in
/// Q(sqrt2)(w) for closed-form entries, in doubles otherwise.
CriterionReport verify_catalog_entry(const CatalogEntry& entry);

/// Numeric zero-test threshold for criteria: 1e-8 * (1 + |xi|_inf)^m.
double residual_tolerance(const XiVector& xi);

}  // namespace klab

#endif
