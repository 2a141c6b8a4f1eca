#pragma once

// Top eigenpairs of symmetric PSD matrices and top singular pairs of data
// matrices by power iteration.

#include <cstdint>
#include <optional>

#include "m2q/matrix.hpp"

namespace m2q {

struct SpectralOptions {
  double tol = 1e-10;
  int max_iter = 5000;
  std::uint64_t seed = 0;
};

/// Estimate of the top eigenpair of a symmetric PSD matrix M.
///
/// `lambda` is the Rayleigh quotient of `vector`, so it is always a valid
/// lower bound on the true top eigenvalue; `residual` = ||M v - lambda v||_2.
struct SpectralWitness {
  double lambda = 0.0;
  UnitVector vector;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Power iteration from a seeded uniform start. Stops once successive
/// Rayleigh quotients differ by at most tol * max(1, lambda), or after
/// max_iter steps. The zero matrix yields lambda = 0 and the start vector.
///
/// Throws std::invalid_argument if M is not square, has non-finite entries,
/// or is asymmetric beyond 1e-9 relative to its largest entry.
SpectralWitness top_eigenpair_psd(const Eigen::Ref<const Matrix>& m,
                                  const SpectralOptions& opts = {});

struct SingularPair {
  double sigma = 0.0;
  UnitVector right;
  /// X right / sigma; empty when sigma == 0.
  std::optional<Vector> left;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Top right singular vector of X via power iteration on X^T X.
SingularPair top_singular_pair(const DataMatrix& x, const SpectralOptions& opts = {});

}  // namespace m2q
