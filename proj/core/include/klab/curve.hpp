#ifndef KLAB_CURVE_HPP
#define KLAB_CURVE_HPP

#include <iosfwd>
#include <vector>

#include "klab/criteria.hpp"
#include "klab/reciprocal.hpp"

namespace klab {

/// One tangency point of the support-line family: the curve point generated by
/// branch j of Re(e^{i theta} A) at angle theta.
struct CurveSample {
  double theta = 0;
  int branch = 0;  // 1..n, eigenvalues sorted descending
  double x = 0, y = 0;
  bool reliable = true;  // false near eigenvalue collisions
};

struct EigenSystem {
  std::vector<double> values;                // descending
  std::vector<std::vector<double>> vectors;  // vectors[j] for values[j], in the
                                             // phase-rotated real coordinates
  std::vector<std::complex<double>> phases;  // diagonal unitary back to H(theta)
};

/// Eigenvalues (to 1e-12, Sturm-sequence bisection) and eigenvectors (inverse
/// iteration) of the Hermitian part Re(e^{i theta} A). The matrix is unitarily
/// reduced to a real symmetric tridiagonal one with zero diagonal.
EigenSystem hermitian_part_eigs(const ReciprocalMatrix& a, double theta);

/// Uniform symmetric grid of the given size over (-pi, pi].
std::vector<double> default_grid(int points = 2048);

/// Envelope points z = e^{-i theta} (lambda_j - i lambda_j') for every grid
/// angle and branch; lambda' from the first-order perturbation identity
/// <Re(i e^{i theta} A) v, v>. Parallel over theta (capped by KLAB_THREADS).
std::vector<CurveSample> sample_curve(const ReciprocalMatrix& a,
                                      const std::vector<double>& grid);

struct ConicFit {
  EllipseSpec spec;
  double max_residual = 0;
  int assigned = 0;
};

struct ConicAssignment {
  std::vector<ConicFit> fits;         // parallel to the input spec list
  std::vector<CurveSample> leftovers; // reliable samples not on any spec
  double leftover_min_residual = 0;   // min over leftovers of their best residual
};

/// Assigns each reliable sample to its minimum-residual spec (implicit
/// equation (x-p)^2/(C+X^2) + y^2/C - 1, or distance to the focal segment when
/// C = 0); samples farther than assign_tol from every spec land in the
/// leftover bucket.
ConicAssignment verify_conics(const std::vector<CurveSample>& samples,
                              const std::vector<EllipseSpec>& specs, double assign_tol = 1e-4);

/// theta,branch,x,y,flag rows.
void write_samples_csv(std::ostream& os, const std::vector<CurveSample>& samples);

/// Standalone figure: one polyline per assigned spec, leftover samples as dots,
/// equal axis scaling.
void write_svg(std::ostream& os, const std::vector<CurveSample>& samples,
               const std::vector<EllipseSpec>& specs);

/// Effective parallelism: hardware concurrency capped by the KLAB_THREADS
/// environment variable (values < 1 mean 1).
int effective_threads();

}  // namespace klab

#endif
