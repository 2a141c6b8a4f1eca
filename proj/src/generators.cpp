#include "m2q/generators.hpp"

#include <cmath>
#include <stdexcept>

#include "m2q/random.hpp"

namespace m2q {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::gaussian:
      return "gaussian";
    case GeneratorKind::appendix_a_spike:
      return "appendixA_spike";
    case GeneratorKind::rank_one:
      return "rank_one";
    case GeneratorKind::identity:
      return "identity";
    case GeneratorKind::planted_spike:
      return "planted_spike";
  }
  return "unknown";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
  for (auto k : {GeneratorKind::gaussian, GeneratorKind::appendix_a_spike,
                 GeneratorKind::rank_one, GeneratorKind::identity,
                 GeneratorKind::planted_spike}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown generator kind '" + name + "'");
}

namespace {

Index appendix_a_rows(Index d, double c) {
  const double per_block = std::round(c * static_cast<double>(d) * static_cast<double>(d));
  return d * static_cast<Index>(per_block);
}

}  // namespace

void validate(const GeneratorSpec& spec) {
  if (spec.d < 1) throw std::invalid_argument("generator: d must be >= 1");
  const auto& p = spec.params;
  switch (spec.kind) {
    case GeneratorKind::appendix_a_spike:
      if (spec.d < 3) throw std::invalid_argument("appendixA_spike: d must be >= 3");
      if (!(p.c_multiplier >= 1.0)) throw std::invalid_argument("appendixA_spike: C must be >= 1");
      if (!(p.spike_variance >= 0.0)) {
        throw std::invalid_argument("appendixA_spike: spike variance must be >= 0");
      }
      return;
    case GeneratorKind::rank_one:
      if (!(p.scale >= 0.0)) throw std::invalid_argument("rank_one: c must be >= 0");
      break;
    case GeneratorKind::planted_spike:
      if (!(p.spike_fraction > 0.0 && p.spike_fraction <= 1.0)) {
        throw std::invalid_argument("planted_spike: fraction must lie in (0, 1]");
      }
      if (!(p.spike_magnitude > 0.0)) {
        throw std::invalid_argument("planted_spike: magnitude must be > 0");
      }
      break;
    default:
      break;
  }
  if (spec.n < 1) throw std::invalid_argument("generator: n must be >= 1");
}

Index resolved_rows(const GeneratorSpec& spec) {
  if (spec.kind == GeneratorKind::appendix_a_spike) {
    return appendix_a_rows(spec.d, spec.params.c_multiplier);
  }
  return spec.n;
}

DataMatrix generate(const GeneratorSpec& spec) {
  validate(spec);
  const auto& p = spec.params;
  switch (spec.kind) {
    case GeneratorKind::gaussian:
      return gen_gaussian(spec.n, spec.d, spec.seed);
    case GeneratorKind::appendix_a_spike:
      return gen_appendix_a_spike(spec.d, p.c_multiplier, spec.seed, p.spike_variance);
    case GeneratorKind::rank_one:
      return gen_rank_one(spec.n, spec.d, p.scale, spec.seed);
    case GeneratorKind::identity:
      return gen_identity(spec.n, spec.d);
    case GeneratorKind::planted_spike:
      return gen_planted_spike(spec.n, spec.d, p.spike_fraction, p.spike_magnitude, spec.seed);
  }
  throw std::invalid_argument("generator: unknown kind");
}

DataMatrix gen_gaussian(Index n, Index d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("gen_gaussian: n, d must be >= 1");
  RowMatrix m(n, d);
  for (Index i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    for (Index j = 0; j < d; ++j) m(i, j) = rng.normal();
  }
  return DataMatrix(std::move(m));
}

DataMatrix gen_appendix_a_spike(Index d, double c_multiplier, std::uint64_t seed,
                                double spike_variance) {
  if (d < 3) throw std::invalid_argument("appendixA_spike: d must be >= 3");
  if (!(c_multiplier >= 1.0)) throw std::invalid_argument("appendixA_spike: C must be >= 1");
  const Index n = appendix_a_rows(d, c_multiplier);
  const Index r = n / d;
  const double root_d = std::sqrt(static_cast<double>(d));
  const double quarter_d = std::pow(static_cast<double>(d), 0.25);
  const double first_sd = std::sqrt(1.0 + spike_variance);
  RowMatrix m = RowMatrix::Zero(n, d);
  for (Index i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const bool spiked = i < r;
    const double sign = rng.coin() ? 1.0 : -1.0;
    const double z_scale = spiked ? quarter_d : 1.0;
    m(i, 0) = spiked ? sign * root_d : 0.0;
    for (Index j = 1; j < d; ++j) {
      const double z = rng.normal() * (j == 1 ? first_sd : 1.0);
      m(i, j) = z_scale * z;
    }
  }
  return DataMatrix(std::move(m));
}

Vector rank_one_direction(Index d, std::uint64_t direction_seed) {
  return random_unit_vector(d, direction_seed).coords();
}

DataMatrix gen_rank_one(Index n, Index d, double c, std::uint64_t direction_seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("gen_rank_one: n, d must be >= 1");
  if (!(c >= 0.0)) throw std::invalid_argument("gen_rank_one: c must be >= 0");
  const Vector u = rank_one_direction(d, direction_seed);
  RowMatrix m(n, d);
  for (Index i = 0; i < n; ++i) m.row(i) = c * u.transpose();
  return DataMatrix(std::move(m));
}

DataMatrix gen_planted_spike(Index n, Index d, double rho, double s, std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("gen_planted_spike: n, d must be >= 1");
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("gen_planted_spike: rho in (0, 1]");
  if (!(s > 0.0)) throw std::invalid_argument("gen_planted_spike: s must be > 0");
  const auto spiked = static_cast<Index>(std::llround(rho * static_cast<double>(n)));
  RowMatrix m(n, d);
  for (Index i = 0; i < n; ++i) {
    if (i < spiked) {
      m.row(i).setZero();
      m(i, 0) = s;
      continue;
    }
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    for (Index j = 0; j < d; ++j) m(i, j) = rng.normal();
  }
  return DataMatrix(std::move(m));
}

DataMatrix gen_identity(Index n, Index d) {
  if (n < 1 || d < 1) throw std::invalid_argument("gen_identity: n, d must be >= 1");
  RowMatrix m = RowMatrix::Zero(n, d);
  for (Index i = 0; i < n; ++i) m(i, i % d) = 1.0;
  return DataMatrix(std::move(m));
}

}  // namespace m2q
