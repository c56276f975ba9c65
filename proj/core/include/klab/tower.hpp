#ifndef KLAB_TOWER_HPP
#define KLAB_TOWER_HPP

#include "klab/scalar.hpp"

namespace klab {

/// Element a + b*w of Q(sqrt2)(w) with w = sqrt(4 + 2*sqrt2) and a, b in Q(sqrt2).
///
/// Every radical appearing in the catalogued n = 7 shifted-pair solutions lives
/// in this degree-8 field: sqrt(2±sqrt2), sqrt(4±2*sqrt2), sqrt(10-7*sqrt2), ...
/// are all Q(sqrt2)-multiples of w (note w * sqrt(4-2*sqrt2) = 2*sqrt2).
struct Tower {
  Quad a;
  Quad b;

  Tower() : a{0, 0}, b{0, 0} {}
  Tower(int x) : a{x, 0}, b{0, 0} {}
  Tower(Quad a_) : a(std::move(a_)), b{0, 0} {}
  Tower(Quad a_, Quad b_) : a(std::move(a_)), b(std::move(b_)) {}

  static Quad w2() { return Quad{4, 2}; }
  static Tower w() { return Tower{Quad{0, 0}, Quad{1, 0}}; }
  static Tower sqrt2() { return Tower{Quad{0, 1}}; }

  friend Tower operator+(const Tower& x, const Tower& y) { return {x.a + y.a, x.b + y.b}; }
  friend Tower operator-(const Tower& x, const Tower& y) { return {x.a - y.a, x.b - y.b}; }
  friend Tower operator-(const Tower& x) { return {-x.a, -x.b}; }
  friend Tower operator*(const Tower& x, const Tower& y) {
    return {x.a * y.a + w2() * (x.b * y.b), x.a * y.b + x.b * y.a};
  }
  friend bool operator==(const Tower& x, const Tower& y) { return x.a == y.a && x.b == y.b; }

  Tower& operator+=(const Tower& y) { return *this = *this + y; }
  Tower& operator-=(const Tower& y) { return *this = *this - y; }
  Tower& operator*=(const Tower& y) { return *this = *this * y; }

  Tower inverse() const {
    Quad n = a * a - w2() * (b * b);
    if (n.is_zero()) throw std::domain_error("Tower: division by zero");
    Quad ninv = n.inverse();
    return {a * ninv, -b * ninv};
  }

  bool is_zero() const { return a.is_zero() && b.is_zero(); }

  // sign of a + b*w (w > 0): compare a^2 against w^2 b^2 when the parts disagree
  int sign() const {
    int sa = a.sign(), sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Quad d = a * a - w2() * (b * b);
    return d.sign() > 0 ? sa : sb;
  }

  double to_double() const {
    return a.to_double() + b.to_double() * std::sqrt(4.0 + 2.0 * std::sqrt(2.0));
  }
};

/// Exact Scalar when the w-part vanishes, double otherwise.
inline Scalar to_scalar(const Tower& t) {
  if (t.b.is_zero()) return Scalar(t.a);
  return Scalar::real(t.to_double());
}

}  // namespace klab

#endif
