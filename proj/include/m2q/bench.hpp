#pragma once

// Scaling experiments: run certificates over growing d and fit
// log(value) = slope * log(d) + intercept.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "m2q/certify.hpp"

namespace m2q {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// log(value) - fitted, one per input point.
  std::vector<double> residuals;
};

/// Least squares on (log x, log y). Needs at least 3 distinct x and positive
/// values; throws std::invalid_argument otherwise.
LogLogFit fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// How n grows with d: "4d2" gives n = 4 d^2, "fixed:<n>" a constant.
struct NRule {
  bool quadratic = true;
  Index fixed_n = 0;

  Index rows(Index d) const { return quadratic ? 4 * d * d : fixed_n; }
  std::string to_string() const;
  static NRule parse(const std::string& text);
};

struct BenchConfig {
  int q = 4;
  std::vector<Index> dims{8, 16, 24, 32};
  NRule n_rule;
  int seeds = 3;
  std::uint64_t base_seed = 1;
  /// Any of "proxy", "baseline", "guth", "oracle".
  std::vector<std::string> methods{"proxy", "baseline", "oracle"};
  /// Instances with n^2 d^2 above this are skipped.
  double budget = 2e10;
  int oracle_restarts = 16;
  /// Replace every method value by d^exponent without running anything.
  std::optional<double> synthetic_exponent;
  CertifyConfig certify;
};

struct BenchRow {
  Index d = 0;
  Index n = 0;
  std::string method;
  std::uint64_t seed = 0;
  double value = 0.0;
  double wall_ms = 0.0;
};

struct BenchResult {
  BenchConfig config;
  std::vector<BenchRow> rows;
  /// Fit on (d, median over seeds) per method.
  std::map<std::string, LogLogFit> fits;
  std::vector<Index> skipped_dims;
  std::vector<std::string> warnings;
};

/// Seed used for the instance at (base_seed, seed index).
std::uint64_t bench_instance_seed(std::uint64_t base_seed, int seed_index);

/// Throws std::invalid_argument for fewer than 3 distinct dims or an unknown
/// method, and CapacityError if the budget leaves fewer than 3 dims.
BenchResult run_bench_scaling(const BenchConfig& cfg,
                              const std::function<void(const BenchRow&)>& progress = {});

std::string bench_rows_csv(const BenchResult& result);

}  // namespace m2q
