#pragma once

// Seeded randomness shared by every module.
//
// All streams are std::mt19937_64 (output fully specified by the standard)
// seeded through SplitMix64. Normals use the Box-Muller transform on 53-bit
// uniforms, so generated data is reproducible across platforms and standard
// library versions.

#include <cstdint>
#include <random>

#include "m2q/matrix.hpp"

namespace m2q {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent substream seed for (seed, stream), e.g. one per row.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool coin() { return (engine_() >> 63) != 0; }
  double normal();
  Vector normal_vector(Index d);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Uniform direction on the Euclidean sphere in R^d.
UnitVector random_unit_vector(Index d, std::uint64_t seed);

}  // namespace m2q
