#include "m2q/random.hpp"

#include <cmath>
#include <numbers>

namespace m2q {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - u lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Vector Rng::normal_vector(Index d) {
  Vector v(d);
  for (Index i = 0; i < d; ++i) v[i] = normal();
  return v;
}

UnitVector random_unit_vector(Index d, std::uint64_t seed) {
  Rng rng(seed);
  for (;;) {
    Vector v = rng.normal_vector(d);
    if (v.norm() > 0.0) return UnitVector::normalized(v);
  }
}

}  // namespace m2q
