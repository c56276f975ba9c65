#include "klab/reciprocal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace klab {

XiVector::XiVector(int n_, std::vector<Scalar> xi_) : n(n_), xi(std::move(xi_)) {
  if (n < 2) throw std::invalid_argument("XiVector: n must be at least 2");
  if (static_cast<int>(xi.size()) != n - 1)
    throw std::invalid_argument("XiVector: expected n-1 entries");
}

Scalar::Mode XiVector::mode() const {
  auto m = Scalar::Mode::rational;
  for (const auto& x : xi) m = std::max(m, x.mode());
  return m;
}

std::vector<double> XiVector::to_doubles() const {
  std::vector<double> v;
  v.reserve(xi.size());
  for (const auto& x : xi) v.push_back(x.to_double());
  return v;
}

XiVector XiVector::transposed() const {
  std::vector<Scalar> rev(xi.rbegin(), xi.rend());
  return XiVector(n, std::move(rev));
}

XiVector XiVector::from_doubles(int n, const std::vector<double>& v) {
  std::vector<Scalar> xs;
  xs.reserve(v.size());
  for (double x : v) xs.emplace_back(Scalar::real(x));
  return XiVector(n, std::move(xs));
}

void ReciprocalMatrix::validate() const {
  if (n < 2 || static_cast<int>(super.size()) != n - 1 || static_cast<int>(sub.size()) != n - 1)
    throw std::invalid_argument("ReciprocalMatrix: inconsistent dimensions");
  for (int j = 0; j < n - 1; ++j) {
    auto prod = super[static_cast<std::size_t>(j)] * sub[static_cast<std::size_t>(j)];
    if (std::abs(prod - 1.0) > 1e-12)
      throw std::invalid_argument("ReciprocalMatrix: a_{j,j+1} a_{j+1,j} != 1 at j=" +
                                  std::to_string(j + 1));
  }
}

SpectrumList spectrum(int n) {
  SpectrumList s;
  s.n = n;
  s.values.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k)
    s.values.push_back(2.0 * std::cos(k * std::numbers::pi / (n + 1)));
  if (n == 7)
    s.exact_squared = std::vector<Scalar>{Scalar::quad(2, 1), Scalar(2), Scalar::quad(2, -1)};
  return s;
}

std::vector<Scalar> squared_spectrum(int n) {
  auto s = spectrum(n);
  if (s.exact_squared) return *s.exact_squared;
  std::vector<Scalar> out;
  int m = n / 2;
  for (int k = 0; k < m; ++k) {
    double v = s.values[static_cast<std::size_t>(k)];
    out.push_back(Scalar::real(v * v));
  }
  return out;
}

ReciprocalMatrix matrix_from_xi(const XiVector& xiv,
                                const std::optional<std::vector<std::complex<double>>>& phases) {
  ReciprocalMatrix a;
  a.n = xiv.n;
  if (phases && static_cast<int>(phases->size()) != xiv.n - 1)
    throw std::invalid_argument("matrix_from_xi: expected n-1 phases");
  for (int j = 0; j < xiv.n - 1; ++j) {
    const Scalar& x = xiv.xi[static_cast<std::size_t>(j)];
    if (x.sign() < 0) throw std::invalid_argument("matrix_from_xi: negative xi entry");
    double xd = x.to_double();
    double mod = std::sqrt(xd) + std::sqrt(xd + 1.0);
    std::complex<double> ph =
        phases ? (*phases)[static_cast<std::size_t>(j)] : std::complex<double>(1.0, 0.0);
    a.super.push_back(mod * ph);
    a.sub.push_back(1.0 / (mod * ph));
  }
  return a;
}

XiVector xi_from_matrix(const ReciprocalMatrix& a) {
  a.validate();
  std::vector<Scalar> xs;
  for (int j = 0; j < a.n - 1; ++j) {
    double d = std::abs(a.super[static_cast<std::size_t>(j)]) -
               std::abs(a.sub[static_cast<std::size_t>(j)]);
    xs.emplace_back(Scalar::real(d * d / 4.0));
  }
  return XiVector(a.n, std::move(xs));
}

Poly<Scalar> char_poly_qn(int n) {
  if (n < 2) throw std::invalid_argument("char_poly_qn: n must be at least 2");
  int m = n / 2;
  std::vector<Scalar> c(static_cast<std::size_t>(m) + 1, Scalar(0));
  for (int j = 0; j <= m; ++j) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n - j), static_cast<unsigned long>(j));
    mpq_class q(j % 2 == 0 ? b : -b);
    c[static_cast<std::size_t>(m - j)] = Scalar(std::move(q));
  }
  return Poly<Scalar>(std::move(c));
}

namespace {

Scalar scalar_from_json(const nlohmann::json& v) {
  if (v.is_string()) return Scalar::parse(v.get<std::string>());
  if (v.is_number_integer()) return Scalar(static_cast<long>(v.get<long long>()));
  if (v.is_number()) return Scalar::real(v.get<double>());
  throw std::invalid_argument("xi entry must be a number or string");
}

}  // namespace

XiVector xi_from_json(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  if (!j.contains("n") || !j.contains("xi"))
    throw std::invalid_argument("input JSON must contain \"n\" and \"xi\"");
  int n = j.at("n").get<int>();
  std::vector<Scalar> xs;
  for (const auto& v : j.at("xi")) xs.push_back(scalar_from_json(v));
  return XiVector(n, std::move(xs));
}

XiVector xi_from_csv(int n, const std::string& csv, bool require_exact) {
  std::vector<Scalar> xs;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) xs.push_back(Scalar::parse(tok));
  XiVector v(n, std::move(xs));
  if (require_exact && !v.is_exact())
    throw std::invalid_argument("exact mode requires rational or a+b*sqrt2 entries");
  return v;
}

}  // namespace klab
