#pragma once

// Internal helpers shared by the certificate implementations.

#include <chrono>

#include "m2q/certify.hpp"

namespace m2q::detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Canonically ordered, prescaled copy of X. For the zero matrix the scale is
/// 1 and the data is left as is.
struct Workspace {
  RowMatrix y;
  double scale = 1.0;
  std::vector<Index> original_index;
  std::vector<Index> canonical_position;
  bool zero = false;
};

Workspace make_workspace(const DataMatrix& x);

/// Y^T diag(w) Y / n with w = weights.^2, formed as a symmetric rank update.
Matrix weighted_second_moment(const RowMatrix& y, const Vector& sqrt_weights);

/// Power iteration on M / max_diag(M) so the stopping tolerance is relative
/// to the top eigenvalue; lambda is then the Rayleigh quotient on M itself.
/// `relative_residual` is ||M v - lambda v|| / lambda.
struct ScaledEigen {
  SpectralWitness witness;
  double relative_residual = 0.0;
};
ScaledEigen top_eigenpair_relative(const Matrix& m, const SpectralOptions& opts);

/// ||Y ybar_k||_q̄ per row of Y (0 for zero rows).
Vector normalized_row_values_scaled(const RowMatrix& y, int q, std::size_t threads);

}  // namespace m2q::detail
