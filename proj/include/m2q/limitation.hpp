#pragma once

// Reproduces the failure of the "normalized rows + top singular vector" list
// on the planted instance from gen_appendix_a_spike: that list only sees
// O(1) fourth moments while e_1 (and hence the proxy list) sees about d.

#include <cstdint>
#include <vector>

#include "m2q/certify.hpp"

namespace m2q {

struct LimitationThresholds {
  double singular_fourth_max = 10.0;   // E <x, u>^4
  double row_fourth_max = 10.0;        // max_j E <x, xbar_j>^4
  double e1_fourth_min = 0.0;          // E <x, e_1>^4; 0 means "use d"
  double singular_distance_max = 0.25; // min ||u -+ e_2||
  double guth_b4_max = 10.0;
  double proxy_b4_min = 0.0;           // 0 means "use d"
};

struct LimitationConfig {
  Index d = 8;
  double c_multiplier = 50.0;
  double spike_variance = 1.0;
  int seeds = 3;
  std::uint64_t base_seed = 1;
  int q = 4;
  LimitationThresholds thresholds;
  CertifyConfig certify;
};

struct LimitationSeedResult {
  std::uint64_t seed = 0;
  Index n = 0;
  double singular_fourth = 0.0;
  double max_row_fourth = 0.0;
  double e1_fourth = 0.0;
  double singular_distance = 0.0;
  double guth_b4 = 0.0;
  double proxy_b4 = 0.0;
  bool singular_ok = false;
  bool rows_ok = false;
  bool e1_ok = false;
  bool distance_ok = false;
  bool guth_ok = false;
  bool proxy_ok = false;
};

struct LimitationReport {
  LimitationConfig config;
  /// Thresholds after substituting d for the "use d" defaults.
  LimitationThresholds resolved;
  std::vector<LimitationSeedResult> per_seed;
  /// Check name -> passes on a strict majority of seeds.
  std::vector<std::pair<std::string, bool>> majority;
  bool verdict = false;
};

/// Throws std::invalid_argument for d < 3.
LimitationReport run_limitation(const LimitationConfig& cfg);

}  // namespace m2q
