#pragma once

// Seeded instance generators. Row i is drawn from its own stream
// derive_seed(seed, i), so output is independent of evaluation order.

#include <cstdint>
#include <optional>
#include <string>

#include "m2q/matrix.hpp"

namespace m2q {

enum class GeneratorKind { gaussian, appendix_a_spike, rank_one, identity, planted_spike };

std::string to_string(GeneratorKind kind);
/// Accepts "gaussian", "appendixA_spike", "rank_one", "identity",
/// "planted_spike". Throws std::invalid_argument otherwise.
GeneratorKind generator_kind_from_string(const std::string& name);

struct GeneratorParams {
  /// appendixA_spike: n = C d^3 rounded to a multiple of d.
  double c_multiplier = 50.0;
  /// appendixA_spike: extra variance on the first coordinate of Z_i, i.e.
  /// Z_i ~ N(0, I_{d-1} + spike_variance e_1 e_1^T).
  double spike_variance = 1.0;
  /// rank_one: row scale c.
  double scale = 1.0;
  /// planted_spike: fraction rho of rows equal to s e_1, and s.
  double spike_fraction = 0.1;
  double spike_magnitude = 1.0;
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::gaussian;
  Index n = 0;  // ignored (derived) for appendixA_spike
  Index d = 0;
  int q_hint = 4;
  std::uint64_t seed = 0;
  GeneratorParams params;
};

/// Validates the spec against the kind's constraints; throws
/// std::invalid_argument.
void validate(const GeneratorSpec& spec);

/// Rows after resolving kind-specific shape rules.
Index resolved_rows(const GeneratorSpec& spec);

DataMatrix generate(const GeneratorSpec& spec);

/// Rows i.i.d. N(0, I_d).
DataMatrix gen_gaussian(Index n, Index d, std::uint64_t seed);

/// r = n/d rows (s_i sqrt(d), d^{1/4} Z_i) first, then (0, Z_i), with s_i
/// uniform signs and Z_i ~ N(0, I_{d-1} + spike_variance e_1 e_1^T).
/// n = d * round(C d^2). Throws std::invalid_argument for d < 3 or C < 1.
DataMatrix gen_appendix_a_spike(Index d, double c_multiplier, std::uint64_t seed,
                                double spike_variance = 1.0);

/// n rows all equal to c u for a seeded uniform unit u.
DataMatrix gen_rank_one(Index n, Index d, double c, std::uint64_t direction_seed);

/// The unit direction gen_rank_one uses for a seed.
Vector rank_one_direction(Index d, std::uint64_t direction_seed);

/// round(rho n) rows equal to s e_1, the rest i.i.d. N(0, I_d).
DataMatrix gen_planted_spike(Index n, Index d, double rho, double s, std::uint64_t seed);

/// Row i = e_{i mod d}; the identity for n = d.
DataMatrix gen_identity(Index n, Index d);

}  // namespace m2q
