#ifndef KLAB_RECIPROCAL_HPP
#define KLAB_RECIPROCAL_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "klab/poly.hpp"
#include "klab/scalar.hpp"

namespace klab {

/// The n-1 invariants xi_j = (|a_{j,j+1}| - |a_{j+1,j}|)^2 / 4 of a reciprocal
/// matrix. Everything the criteria decide depends on xi alone.
struct XiVector {
  int n = 0;
  std::vector<Scalar> xi;

  XiVector() = default;
  XiVector(int n_, std::vector<Scalar> xi_);

  Scalar::Mode mode() const;
  bool is_exact() const { return mode() != Scalar::Mode::real; }
  std::vector<double> to_doubles() const;

  /// xi_j <-> xi_{n-j}
  XiVector transposed() const;

  static XiVector from_doubles(int n, const std::vector<double>& v);
};

/// Tridiagonal matrix with zero main diagonal and a_{j,j+1} * a_{j+1,j} = 1.
struct ReciprocalMatrix {
  int n = 0;
  std::vector<std::complex<double>> super;  // a_{j,j+1}, j = 1..n-1
  std::vector<std::complex<double>> sub;    // a_{j+1,j}

  void validate() const;  // throws on reciprocity violation (tolerance 1e-12)
};

/// Eigenvalues 2 cos(k pi / (n+1)), k = 1..n. Shared by the whole class.
struct SpectrumList {
  int n = 0;
  std::vector<double> values;  // strictly decreasing
  /// Exact squared positive eigenvalues in Q(sqrt2), available for n = 7:
  /// {2+sqrt2, 2, 2-sqrt2}.
  std::optional<std::vector<Scalar>> exact_squared;
};

SpectrumList spectrum(int n);

/// Squared positive eigenvalues X_k^2, k = 1..m, as Scalars (exact for n = 7,
/// double otherwise).
std::vector<Scalar> squared_spectrum(int n);

/// Canonical real representative: |a_{j,j+1}| = sqrt(xi_j) + sqrt(xi_j + 1),
/// |a_{j+1,j}| = 1 / |a_{j,j+1}|, multiplied by the given unit phases.
ReciprocalMatrix matrix_from_xi(
    const XiVector& xi,
    const std::optional<std::vector<std::complex<double>>>& phases = std::nullopt);

XiVector xi_from_matrix(const ReciprocalMatrix& a);

/// Characteristic polynomial of any A in RM_n as a polynomial in zeta = lambda^2:
/// sum_j (-1)^j binom(n-j, j) zeta^(m-j). The odd-n prefactor -lambda is implied.
Poly<Scalar> char_poly_qn(int n);

/// Parses {"n": int, "xi": [...]} where entries are numbers or Scalar tokens.
XiVector xi_from_json(const std::string& json_text);

/// Parses a comma-separated xi list ("1,4,1,1,2,3" or "1/2,1+1*sqrt2,...").
XiVector xi_from_csv(int n, const std::string& csv, bool require_exact = false);

}  // namespace klab

#endif
