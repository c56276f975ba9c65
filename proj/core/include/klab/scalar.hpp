#ifndef KLAB_SCALAR_HPP
#define KLAB_SCALAR_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace klab {

/// Element a + b*sqrt(2) with rational a, b.
struct Quad {
  mpq_class a;
  mpq_class b;

  Quad() : a(0), b(0) {}
  Quad(mpq_class a_, mpq_class b_) : a(std::move(a_)), b(std::move(b_)) {}

  friend Quad operator+(const Quad& x, const Quad& y) { return {x.a + y.a, x.b + y.b}; }
  friend Quad operator-(const Quad& x, const Quad& y) { return {x.a - y.a, x.b - y.b}; }
  friend Quad operator-(const Quad& x) { return {-x.a, -x.b}; }
  friend Quad operator*(const Quad& x, const Quad& y) {
    return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend bool operator==(const Quad& x, const Quad& y) { return x.a == y.a && x.b == y.b; }

  // norm a^2 - 2 b^2 is zero only for the zero element
  Quad inverse() const {
    mpq_class n = a * a - 2 * b * b;
    if (n == 0) throw std::domain_error("Quad: division by zero");
    return {a / n, -b / n};
  }

  bool is_zero() const { return a == 0 && b == 0; }

  // sign of a + b*sqrt(2)
  int sign() const {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // signs differ: the part with the larger square dominates
    mpq_class d = a * a - 2 * b * b;
    return sgn(d) > 0 ? sa : sb;
  }

  double to_double() const { return a.get_d() + b.get_d() * std::sqrt(2.0); }
};

/// Coefficient domain: exact rational, exact Q(sqrt2), or IEEE double.
/// Mixed-mode arithmetic promotes rational -> sqrt2 -> real and never demotes.
class Scalar {
 public:
  enum class Mode : std::uint8_t { rational = 0, sqrt2 = 1, real = 2 };

  Scalar() : v_(mpq_class(0)) {}
  Scalar(int x) : v_(mpq_class(x)) {}
  Scalar(long x) : v_(mpq_class(static_cast<long int>(x))) {}
  Scalar(mpq_class q) : v_(std::move(q)) {}
  Scalar(Quad q) : v_(std::move(q)) {}
  explicit Scalar(double x) : v_(x) {}

  static Scalar rational(long num, long den = 1) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
  }
  static Scalar sqrt2() { return Scalar(Quad{0, 1}); }
  static Scalar quad(mpq_class a, mpq_class b) { return Scalar(Quad{std::move(a), std::move(b)}); }
  static Scalar real(double x) { return Scalar(x); }

  /// Parses "p/q", an integer, "a+b*sqrt2" (and variants), or a decimal literal.
  static Scalar parse(const std::string& text);

  Mode mode() const { return static_cast<Mode>(v_.index()); }
  bool is_exact() const { return mode() != Mode::real; }

  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x);
  friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

  Scalar inverse() const;

  /// Exact zero in exact modes; |x| <= 1e-9 * max(1, scale) in real mode.
  bool is_zero(double scale = 1.0) const;

  /// -1, 0, +1. Exact in exact modes.
  int sign() const;

  /// Three-way comparison after promotion to the common mode.
  int compare(const Scalar& y) const { return (*this - y).sign(); }
  friend bool operator==(const Scalar& x, const Scalar& y) { return (x - y).strictly_zero(); }
  friend bool operator<(const Scalar& x, const Scalar& y) { return x.compare(y) < 0; }

  double to_double() const;
  std::string to_string() const;

  const mpq_class& as_rational() const { return std::get<mpq_class>(v_); }
  const Quad& as_quad() const { return std::get<Quad>(v_); }

  /// Bitwise zero in real mode (used for polynomial trimming).
  bool strictly_zero() const;

 private:
  std::variant<mpq_class, Quad, double> v_;

  static Quad to_quad(const Scalar& s);
};

inline double abs_double(const Scalar& s) { return std::fabs(s.to_double()); }

}  // namespace klab

#endif
