#ifndef KLAB_MULTIPOLY_HPP
#define KLAB_MULTIPOLY_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "klab/poly.hpp"

namespace klab {

/// Sparse multivariate polynomial over a commutative ring S, with a fixed
/// number of variables. Degrees at play never exceed single digits, so the
/// exponent vectors are tiny. Mixed-arity operands widen to the larger
/// variable count, which lets constants be written as plain ints.
template <class S>
class MultiPoly {
 public:
  using Expo = std::vector<std::uint16_t>;

  MultiPoly() : nvars_(0) {}
  MultiPoly(int value) : nvars_(0) {  // ring-concept constructor
    if (value != 0) t_[Expo{}] = S(value);
  }
  MultiPoly(int nvars, S constant) : nvars_(nvars) {
    if (!ring_is_zero(constant)) t_[Expo(static_cast<std::size_t>(nvars), 0)] = std::move(constant);
  }

  static MultiPoly zero(int nvars) {
    MultiPoly p;
    p.nvars_ = nvars;
    return p;
  }

  static MultiPoly var(int i, int nvars, S coeff = S(1)) {
    MultiPoly p = zero(nvars);
    Expo e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(i)] = 1;
    if (!ring_is_zero(coeff)) p.t_[std::move(e)] = std::move(coeff);
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t term_count() const { return t_.size(); }
  const std::map<Expo, S>& terms() const { return t_; }

  friend MultiPoly operator+(const MultiPoly& x, const MultiPoly& y) {
    MultiPoly r = x.widened(y.nvars_);
    for (const auto& [e, c] : y.widened(x.nvars_).t_) r.add_term(e, c);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& x, const MultiPoly& y) { return x + (-y); }
  friend MultiPoly operator-(const MultiPoly& x) {
    MultiPoly r = x;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& x, const MultiPoly& y) {
    MultiPoly a = x.widened(y.nvars_), b = y.widened(x.nvars_);
    MultiPoly r = zero(a.nvars_);
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        Expo e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(e[i] + eb[i]);
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend MultiPoly operator*(const S& s, const MultiPoly& x) {
    MultiPoly r = zero(x.nvars_);
    for (const auto& [e, c] : x.t_) r.add_term(e, s * c);
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& y) { return *this = *this + y; }
  MultiPoly& operator-=(const MultiPoly& y) { return *this = *this - y; }
  MultiPoly& operator*=(const MultiPoly& y) { return *this = *this * y; }

  friend bool operator==(const MultiPoly& x, const MultiPoly& y) { return (x - y).is_zero(); }

  int degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : t_) d = std::max(d, static_cast<int>(e[static_cast<std::size_t>(var)]));
    return d;
  }

  /// Collects the coefficient of var^power (a polynomial in the remaining
  /// variables, with that variable's exponent zeroed).
  MultiPoly coeff_of(int var, int power) const {
    MultiPoly r = zero(nvars_);
    for (const auto& [e, c] : t_)
      if (static_cast<int>(e[static_cast<std::size_t>(var)]) == power) {
        Expo e2 = e;
        e2[static_cast<std::size_t>(var)] = 0;
        r.add_term(e2, c);
      }
    return r;
  }

  /// Substitutes a scalar value for one variable.
  MultiPoly substituted(int var, const S& value) const {
    MultiPoly r = zero(nvars_);
    for (const auto& [e, c] : t_) {
      S f = c;
      for (int k = 0; k < e[static_cast<std::size_t>(var)]; ++k) f = f * value;
      Expo e2 = e;
      e2[static_cast<std::size_t>(var)] = 0;
      r.add_term(e2, f);
    }
    return r;
  }

  /// Full evaluation at a point.
  S eval(const std::vector<S>& point) const {
    if (static_cast<int>(point.size()) < nvars_)
      throw std::invalid_argument("MultiPoly::eval: wrong point dimension");
    S acc(0);
    for (const auto& [e, c] : t_) {
      S term = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) term = term * point[i];
      acc = acc + term;
    }
    return acc;
  }

 private:
  int nvars_;
  std::map<Expo, S> t_;

  MultiPoly widened(int nvars) const {
    if (nvars <= nvars_) return *this;
    MultiPoly r = zero(nvars);
    for (const auto& [e, c] : t_) {
      Expo e2 = e;
      e2.resize(static_cast<std::size_t>(nvars), 0);
      r.t_[std::move(e2)] = c;
    }
    return r;
  }

  void add_term(const Expo& e, S c) {
    auto it = t_.find(e);
    if (it == t_.end()) {
      if (!ring_is_zero(c)) t_.emplace(e, std::move(c));
      return;
    }
    it->second = it->second + c;
    if (ring_is_zero(it->second)) t_.erase(it);
  }
};

}  // namespace klab

#endif
