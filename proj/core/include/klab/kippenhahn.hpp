#ifndef KLAB_KIPPENHAHN_HPP
#define KLAB_KIPPENHAHN_HPP

#include <span>
#include <utility>
#include <vector>

#include "klab/poly.hpp"
#include "klab/reciprocal.hpp"

namespace klab {

/// Characteristic polynomial D_n (in zeta = a^2) of an n-by-n tridiagonal
/// matrix with constant diagonal a, from the off-diagonal products
/// eta_i = x_{i,i+1} x_{i+1,i}. The full determinant is D_n for even n and
/// a*D_n for odd n. Production path: the three-term recursion.
template <class R>
Poly<R> tridiag_char_recursive(std::span<const R> eta) {
  const int n = static_cast<int>(eta.size()) + 1;
  Poly<R> prev2 = Poly<R>::one();  // D_0
  Poly<R> prev1 = Poly<R>::one();  // D_1
  for (int k = 2; k <= n; ++k) {
    Poly<R> cur;
    if (k % 2 == 0)
      cur = Poly<R>::monomial(R(1), 1) * prev1 - Poly<R>(eta[static_cast<std::size_t>(k - 2)]) * prev2;
    else
      cur = prev1 - Poly<R>(eta[static_cast<std::size_t>(k - 2)]) * prev2;
    prev2 = std::move(prev1);
    prev1 = std::move(cur);
  }
  return prev1;
}

/// Same coefficients by direct enumeration of non-consecutive index sets
/// (i "precedes" j when j - i > 1). Exponential; test oracle only.
template <class R>
Poly<R> tridiag_char_enumerated(std::span<const R> eta) {
  const int n = static_cast<int>(eta.size()) + 1;
  const int m = n / 2;
  std::vector<R> d(static_cast<std::size_t>(m) + 1, R(0));
  d[static_cast<std::size_t>(m)] = R(1);
  // depth-first over index sets 1 <= i_1 < i_2 - 1 < ... < n-1 (0-based here)
  struct Frame {
    R prod;
    int next;
    int size;
  };
  std::vector<Frame> stack;
  stack.push_back({R(1), 0, 0});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    for (int i = f.next; i < n - 1; ++i) {
      R prod = f.prod * eta[static_cast<std::size_t>(i)];
      int j = f.size + 1;
      if (j <= m) {
        auto& slot = d[static_cast<std::size_t>(m - j)];
        if (j % 2 == 0)
          slot = slot + prod;
        else
          slot = slot - prod;
        if (j < m) stack.push_back({std::move(prod), i + 2, j});
      }
    }
  }
  return Poly<R>(std::move(d));
}

/// P_n(zeta, rho): monic of degree m = floor(n/2) in zeta, coefficients
/// polynomials in rho = cos^2(theta). Obtained from the tridiagonal recursion
/// with eta_i = xi_i + rho. The discarded -lambda factor for odd n is carried
/// as a flag, never multiplied in.
template <class R>
struct BasicKippenhahnPoly {
  Poly<Poly<R>> zr;  // outer zeta, inner rho
  int n = 0;
  bool odd_n = false;
  int m() const { return n / 2; }
};

template <class R>
BasicKippenhahnPoly<R> kippenhahn_poly_over(int n, std::span<const R> xi) {
  std::vector<Poly<R>> eta;
  eta.reserve(xi.size());
  for (const R& x : xi) eta.push_back(Poly<R>{x, R(1)});  // xi_i + rho
  return {tridiag_char_recursive(std::span<const Poly<R>>(eta)), n, n % 2 != 0};
}

using KippenhahnPoly = BasicKippenhahnPoly<Scalar>;

KippenhahnPoly kippenhahn_poly(const XiVector& xi);

/// Coefficients f_j of rho^j in P_n(C + rho*X2), j = 0..m, as polynomials in
/// the symbolic minor-half-axis square C.
template <class R>
std::vector<Poly<R>> substitute_linear_symbolic(const BasicKippenhahnPoly<R>& kp, const R& x2) {
  using CPoly = Poly<R>;
  using RhoC = Poly<CPoly>;  // outer rho, inner C
  RhoC zeta_sub{CPoly{R(0), R(1)}, CPoly(x2)};  // C + rho*X2
  RhoC acc = kp.zr.template eval<RhoC>(zeta_sub, [](const Poly<R>& rho_poly) {
    // lift a polynomial in rho to the (rho, C) ring
    std::vector<CPoly> cs;
    cs.reserve(rho_poly.coeffs().size());
    for (const R& c : rho_poly.coeffs()) cs.push_back(CPoly(c));
    return RhoC(std::move(cs));
  });
  std::vector<Poly<R>> f(static_cast<std::size_t>(kp.m()) + 1, Poly<R>{});
  for (int j = 0; j <= kp.m(); ++j) f[static_cast<std::size_t>(j)] = acc.coeff(j);
  return f;
}

/// P_n(C + rho*X2) at a numeric C; the returned polynomial in rho is
/// identically zero exactly when zeta - (C + rho*X2) divides P_n.
template <class R>
Poly<R> substitute_linear(const BasicKippenhahnPoly<R>& kp, const R& c, const R& x2) {
  Poly<R> zeta_sub{c, x2};
  return kp.zr.template eval<Poly<R>>(zeta_sub, [](const Poly<R>& p) { return p; });
}

/// Even/odd split of P_n at zeta_pm = C + (p^2 + X^2) rho +- 2 p s, where
/// s^2 = rho (C + X^2 rho). Computed in the quadratic ring extension by
/// g = 2 p s (only p^2 enters: g^2 = 4 p^2 rho (C + X^2 rho)).
///
/// even = (P(zeta_+) + P(zeta_-)) / 2 and odd = (P(zeta_+) - P(zeta_-)) / (2g),
/// so R_e of the envelope criterion is 2 * even and R_o is 4p * odd.
/// Coefficients are polynomials in rho (outer) and C (inner).
template <class P>
struct EvenOddParts {
  P even;  // degree <= m in rho
  P odd;   // degree <= m-1 in rho
};

template <class R>
EvenOddParts<Poly<Poly<R>>> even_odd_split_symbolic(const BasicKippenhahnPoly<R>& kp, const R& p2,
                                                    const R& x2) {
  using CPoly = Poly<R>;
  using RhoC = Poly<CPoly>;
  const CPoly cvar{R(0), R(1)};
  const RhoC zc{cvar, CPoly(R(p2 + x2))};                         // C + (p^2+X^2) rho
  const RhoC g2 = RhoC{CPoly(R(0)), R(4) * p2 * cvar,             // 4 p^2 rho C
                       CPoly(R(4) * p2 * x2)};                    // + 4 p^2 X^2 rho^2
  RhoC u(CPoly(R(0))), v(CPoly(R(0)));
  for (int k = kp.zr.degree(); k >= 0; --k) {
    // (u + v g)(zc + g) + c_k = (u zc + v g2 + c_k) + (u + v zc) g
    const Poly<R>& rho_poly = kp.zr.coeff(k);
    std::vector<CPoly> lifted;
    lifted.reserve(rho_poly.coeffs().size());
    for (const R& c : rho_poly.coeffs()) lifted.push_back(CPoly(c));
    RhoC ck(std::move(lifted));
    RhoC nu = u * zc + v * g2 + ck;
    v = u + v * zc;
    u = std::move(nu);
  }
  return {std::move(u), std::move(v)};
}

/// Numeric-C variant; returns polynomials in rho alone.
template <class R>
EvenOddParts<Poly<R>> even_odd_split(const BasicKippenhahnPoly<R>& kp, const R& c, const R& p2,
                                     const R& x2) {
  auto sym = even_odd_split_symbolic(kp, p2, x2);
  auto eval_c = [&](const Poly<Poly<R>>& q) {
    std::vector<R> out;
    out.reserve(static_cast<std::size_t>(q.degree()) + 1);
    for (int j = 0; j <= q.degree(); ++j) out.push_back(q.coeff(j).eval(c));
    return Poly<R>(std::move(out));
  };
  return {eval_c(sym.even), eval_c(sym.odd)};
}

}  // namespace klab

#endif
