#include "klab/scalar.hpp"

#include <cstdlib>
#include <sstream>

namespace klab {

namespace {

Scalar::Mode join(Scalar::Mode a, Scalar::Mode b) { return a < b ? b : a; }

}  // namespace

Quad Scalar::to_quad(const Scalar& s) {
  if (s.mode() == Mode::rational) return Quad{s.as_rational(), 0};
  return s.as_quad();
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  auto m = join(x.mode(), y.mode());
  if (m == Scalar::Mode::real) return Scalar(x.to_double() + y.to_double());
  if (m == Scalar::Mode::sqrt2) return Scalar(Scalar::to_quad(x) + Scalar::to_quad(y));
  return Scalar(mpq_class(x.as_rational() + y.as_rational()));
}

Scalar operator-(const Scalar& x, const Scalar& y) {
  auto m = join(x.mode(), y.mode());
  if (m == Scalar::Mode::real) return Scalar(x.to_double() - y.to_double());
  if (m == Scalar::Mode::sqrt2) return Scalar(Scalar::to_quad(x) - Scalar::to_quad(y));
  return Scalar(mpq_class(x.as_rational() - y.as_rational()));
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  auto m = join(x.mode(), y.mode());
  if (m == Scalar::Mode::real) return Scalar(x.to_double() * y.to_double());
  if (m == Scalar::Mode::sqrt2) return Scalar(Scalar::to_quad(x) * Scalar::to_quad(y));
  return Scalar(mpq_class(x.as_rational() * y.as_rational()));
}

Scalar operator-(const Scalar& x) {
  switch (x.mode()) {
    case Scalar::Mode::rational: return Scalar(mpq_class(-x.as_rational()));
    case Scalar::Mode::sqrt2: return Scalar(-x.as_quad());
    default: return Scalar(-x.to_double());
  }
}

Scalar Scalar::inverse() const {
  switch (mode()) {
    case Mode::rational: {
      if (as_rational() == 0) throw std::domain_error("Scalar: division by zero");
      return Scalar(mpq_class(1 / as_rational()));
    }
    case Mode::sqrt2: return Scalar(as_quad().inverse());
    default: {
      double x = std::get<double>(v_);
      if (x == 0.0) throw std::domain_error("Scalar: division by zero");
      return Scalar(1.0 / x);
    }
  }
}

bool Scalar::is_zero(double scale) const {
  switch (mode()) {
    case Mode::rational: return as_rational() == 0;
    case Mode::sqrt2: return as_quad().is_zero();
    default: return std::fabs(std::get<double>(v_)) <= 1e-9 * std::max(1.0, std::fabs(scale));
  }
}

bool Scalar::strictly_zero() const {
  switch (mode()) {
    case Mode::rational: return as_rational() == 0;
    case Mode::sqrt2: return as_quad().is_zero();
    default: return std::get<double>(v_) == 0.0;
  }
}

int Scalar::sign() const {
  switch (mode()) {
    case Mode::rational: return sgn(as_rational());
    case Mode::sqrt2: return as_quad().sign();
    default: {
      double x = std::get<double>(v_);
      return x > 0 ? 1 : (x < 0 ? -1 : 0);
    }
  }
}

double Scalar::to_double() const {
  switch (mode()) {
    case Mode::rational: return as_rational().get_d();
    case Mode::sqrt2: return as_quad().to_double();
    default: return std::get<double>(v_);
  }
}

std::string Scalar::to_string() const {
  switch (mode()) {
    case Mode::rational: return as_rational().get_str();
    case Mode::sqrt2: {
      const Quad& q = as_quad();
      std::ostringstream os;
      os << q.a.get_str();
      if (q.b >= 0) os << "+";
      os << q.b.get_str() << "*sqrt2";
      return os.str();
    }
    default: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(v_));
      return buf;
    }
  }
}

namespace {

bool parse_rational(const std::string& raw, mpq_class& out) {
  std::string s = raw;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);  // GMP rejects a leading plus
  if (s.empty()) return false;
  if (s.find_first_not_of("-0123456789/") != std::string::npos) return false;
  try {
    mpq_class q(s, 10);
    if (q.get_den() == 0) return false;
    q.canonicalize();
    out = std::move(q);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

// One term of the sqrt2 grammar: "R", "R*sqrt2", or "sqrt2" (sign included in R).
bool parse_term(const std::string& term, mpq_class& a, mpq_class& b) {
  auto star = term.find("*sqrt2");
  if (star != std::string::npos && star + 6 == term.size()) {
    mpq_class coef;
    if (!parse_rational(term.substr(0, star), coef)) return false;
    b += coef;
    return true;
  }
  if (term == "sqrt2" || term == "+sqrt2") {
    b += 1;
    return true;
  }
  if (term == "-sqrt2") {
    b -= 1;
    return true;
  }
  mpq_class coef;
  if (!parse_rational(term, coef)) return false;
  a += coef;
  return true;
}

}  // namespace

Scalar Scalar::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("Scalar::parse: empty token");

  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos) {
    char* end = nullptr;
    double x = std::strtod(s.c_str(), &end);
    if (end == nullptr || *end != '\0')
      throw std::invalid_argument("Scalar::parse: bad decimal '" + raw + "'");
    return Scalar(x);
  }

  if (s.find("sqrt2") == std::string::npos) {
    mpq_class q;
    if (!parse_rational(s, q)) throw std::invalid_argument("Scalar::parse: bad token '" + raw + "'");
    return Scalar(std::move(q));
  }

  // split into terms at '+'/'-' signs that are not leading
  mpq_class a(0), b(0);
  std::size_t start = 0;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '+' || s[i] == '-') {
      if (!parse_term(s.substr(start, i - start), a, b))
        throw std::invalid_argument("Scalar::parse: bad token '" + raw + "'");
      start = i;
    }
  }
  if (b == 0) return Scalar(std::move(a));
  return Scalar(Quad{std::move(a), std::move(b)});
}

}  // namespace klab
