#ifndef KLAB_POLY_HPP
#define KLAB_POLY_HPP

#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "klab/scalar.hpp"

namespace klab {

// Trim predicates for the coefficient rings Poly is instantiated with.
inline bool ring_is_zero(const Scalar& x) { return x.strictly_zero(); }
inline bool ring_is_zero(double x) { return x == 0.0; }
inline bool ring_is_zero(const mpq_class& x) { return x == 0; }
template <class T>
bool ring_is_zero(const T& x) {
  return x.is_zero();
}

// Field inverses for the division steps (linear solves, eliminations).
inline double ring_inverse(double x) { return 1.0 / x; }
inline mpq_class ring_inverse(const mpq_class& x) { return 1 / x; }
template <class T>
T ring_inverse(const T& x) {
  return x.inverse();
}

/// Dense univariate polynomial over a commutative ring T.
/// Coefficients are stored low degree first; the zero polynomial is empty.
template <class T>
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  explicit Poly(T constant) : c_{std::move(constant)} { trim(); }

  static Poly zero() { return {}; }
  static Poly one() { return Poly{T(1)}; }
  /// The monomial x (or c*x^d).
  static Poly monomial(T coeff, int degree) {
    std::vector<T> v(static_cast<std::size_t>(degree) + 1, T(0));
    v.back() = std::move(coeff);
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly

  const T& coeff(int i) const {
    static const T kZero = T(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<std::size_t>(i)];
  }
  const std::vector<T>& coeffs() const { return c_; }

  const T& leading() const {
    if (c_.empty()) throw std::logic_error("Poly: leading coefficient of zero polynomial");
    return c_.back();
  }

  friend Poly operator+(const Poly& x, const Poly& y) {
    std::vector<T> v(std::max(x.c_.size(), y.c_.size()), T(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i) v[i] = v[i] + x.c_[i];
    for (std::size_t i = 0; i < y.c_.size(); ++i) v[i] = v[i] + y.c_[i];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& x, const Poly& y) { return x + (-y); }
  friend Poly operator-(const Poly& x) {
    std::vector<T> v = x.c_;
    for (auto& t : v) t = -t;
    return Poly(std::move(v));
  }
  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<T> v(x.c_.size() + y.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i)
      for (std::size_t j = 0; j < y.c_.size(); ++j) v[i + j] = v[i + j] + x.c_[i] * y.c_[j];
    return Poly(std::move(v));
  }
  friend Poly operator*(const T& s, const Poly& x) {
    std::vector<T> v = x.c_;
    for (auto& t : v) t = s * t;
    return Poly(std::move(v));
  }

  Poly& operator+=(const Poly& y) { return *this = *this + y; }
  Poly& operator-=(const Poly& y) { return *this = *this - y; }
  Poly& operator*=(const Poly& y) { return *this = *this * y; }

  friend bool operator==(const Poly& x, const Poly& y) { return (x - y).is_zero(); }

  /// Horner evaluation in any ring U that supports U*U, U+U and construction
  /// from T via `lift` (defaults to U(T)).
  template <class U, class Lift>
  U eval(const U& x, Lift lift) const {
    U acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + lift(*it);
    return acc;
  }
  T eval(const T& x) const {
    return eval<T>(x, [](const T& t) { return t; });
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> v(c_.size() - 1, T(0));
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = T(static_cast<int>(i)) * c_[i];
    return Poly(std::move(v));
  }

 private:
  std::vector<T> c_;

  void trim() {
    while (!c_.empty() && ring_is_zero(c_.back())) c_.pop_back();
  }
};

/// Euclidean division by a divisor monic in the outer variable. Works over any
/// coefficient ring because no leading-coefficient inversion is needed.
/// Returns (quotient, remainder) with deg(remainder) < deg(divisor).
template <class T>
std::pair<Poly<T>, Poly<T>> poly_divrem(const Poly<T>& num, const Poly<T>& den) {
  if (den.is_zero()) throw std::invalid_argument("poly_divrem: zero divisor");
  if (!(den.leading() == T(1))) throw std::invalid_argument("poly_divrem: divisor must be monic");
  Poly<T> rem = num;
  std::vector<T> q;
  int dd = den.degree();
  if (rem.degree() >= dd) q.assign(static_cast<std::size_t>(rem.degree() - dd) + 1, T(0));
  while (!rem.is_zero() && rem.degree() >= dd) {
    int k = rem.degree() - dd;
    T c = rem.leading();
    q[static_cast<std::size_t>(k)] = c;
    rem -= Poly<T>::monomial(c, k) * den;
  }
  return {Poly<T>(std::move(q)), std::move(rem)};
}

}  // namespace klab

#endif
