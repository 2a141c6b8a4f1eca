#pragma once

// Heuristic lower bounds on ||X||_{2->q̄} (and ||X||_{p->q}) used to validate
// certificates. Never used inside a certificate.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "m2q/matrix.hpp"

namespace m2q {

struct OracleResult {
  /// ||X vector||_q̄: always a valid lower bound on the true norm.
  double value = 0.0;
  UnitVector vector;
  int restarts_used = 0;
  long long ascent_iterations_total = 0;
  double converged_fraction = 0.0;
  /// Grid oracles only: bound on (true sup - value) from the objective's
  /// Lipschitz constant and the grid spacing.
  std::optional<double> grid_error_bound;
};

struct AscentResult {
  double value = 0.0;
  UnitVector vector;
  int iterations = 0;
  bool converged = false;
};

struct AscentOptions {
  int max_iter = 500;
  double tol = 1e-12;
};

/// Fixed-point ascent v <- normalize(E_i <x_i,v>^{q-1} x_i) on the sphere.
/// Keeps the best iterate; stops when the objective gain is at most
/// tol * max(1, objective), when an iterate fails to improve, or after
/// max_iter steps. A start that maps to zero is perturbed and retried.
AscentResult ascend(const DataMatrix& x, int q, const UnitVector& start,
                    const AscentOptions& opts = {});

struct OracleOptions {
  int restarts = 64;
  std::uint64_t seed = 0;
  AscentOptions ascent;
  std::size_t threads = 0;
};

/// Best of ascents from every warm start (in order) and then `restarts`
/// seeded uniform starts. Ties go to the earliest start.
OracleResult oracle_lower_bound(const DataMatrix& x, int q, const OracleOptions& opts = {},
                                std::span<const Vector> warm_starts = {});

/// Exhaustive search over v = (cos t, sin t), t on a uniform grid in [0, pi).
/// Throws std::invalid_argument unless d == 2 and grid_points >= 1000.
OracleResult grid_oracle_2d(const DataMatrix& x, int q, int grid_points = 100000);

/// Lower bound on ||X||_{p->q} = sup ||X v||_q / ||v||_p (standard norms).
struct PQOracleResult {
  double value = 0.0;
  /// ||vector||_p = 1.
  UnitVector vector;
};

/// d == 2: grid over directions. Otherwise: p == 1 is exact (max column
/// q-norm); p > 1 runs the nonlinear power method from every warm start and
/// `restarts` random starts. Warm starts always count as candidates too.
PQOracleResult pq_oracle(const DataMatrix& x, double p, int q, int restarts = 32,
                         std::uint64_t seed = 0, std::span<const Vector> warm_starts = {},
                         int grid_points = 100000);

}  // namespace m2q
