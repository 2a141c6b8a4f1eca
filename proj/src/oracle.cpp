#include "m2q/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "m2q/parallel.hpp"
#include "m2q/random.hpp"

namespace m2q {
namespace {

void require_even(int q) {
  if (q < 2 || q % 2 != 0) throw std::invalid_argument("oracle: q must be even and >= 2");
}

double moment(const Vector& t, int q) {
  double acc = 0.0;
  for (Index i = 0; i < t.size(); ++i) acc += ipow(t[i], q);
  return acc / static_cast<double>(t.size());
}

// Ascent on data already divided by its largest row norm.
AscentResult ascend_scaled(const RowMatrix& y, int q, const Vector& start,
                           const AscentOptions& opts, std::uint64_t perturb_seed) {
  Vector v = start;
  Vector t = y * v;
  double f = moment(t, q);
  AscentResult out;
  Vector grad(y.cols());
  int attempts = 0;
  for (int it = 0; it < opts.max_iter; ++it) {
    grad.noalias() = y.transpose() * t.unaryExpr([q](double a) { return ipow(a, q - 1); });
    const double gn = grad.norm();
    if (!(gn > 0.0)) {
      // Start orthogonal to every row; perturb (only before any progress).
      if (it == 0 && attempts < 8 && !y.isZero(0.0)) {
        Rng rng(derive_seed(perturb_seed, static_cast<std::uint64_t>(++attempts)));
        v = (v + 0.1 * rng.normal_vector(v.size())).normalized();
        t = y * v;
        f = moment(t, q);
        it = -1;
        continue;
      }
      out.converged = true;
      break;
    }
    Vector w = grad / gn;
    Vector tw = y * w;
    const double fw = moment(tw, q);
    ++out.iterations;
    if (!(fw >= f)) {
      // Roundoff-level decrease: keep the best iterate seen.
      out.converged = true;
      break;
    }
    const double gain = fw - f;
    v = std::move(w);
    t = std::move(tw);
    f = fw;
    if (gain <= opts.tol * std::max(1.0, f)) {
      out.converged = true;
      break;
    }
  }
  out.vector = UnitVector::normalized(v);
  out.value = expectation_q_norm(y * out.vector.coords(), q);
  return out;
}

RowMatrix scaled_copy(const DataMatrix& x, double& scale) {
  scale = x.is_zero() ? 1.0 : x.max_row_norm();
  return x.entries() / scale;
}

}  // namespace

AscentResult ascend(const DataMatrix& x, int q, const UnitVector& start,
                    const AscentOptions& opts) {
  require_even(q);
  if (start.size() != x.cols()) throw std::invalid_argument("ascend: start has wrong length");
  double s = 1.0;
  const RowMatrix y = scaled_copy(x, s);
  auto r = ascend_scaled(y, q, start.coords().normalized(), opts, 0x5eed);
  r.value *= s;
  return r;
}

OracleResult oracle_lower_bound(const DataMatrix& x, int q, const OracleOptions& opts,
                                std::span<const Vector> warm_starts) {
  require_even(q);
  if (opts.restarts < 0) throw std::invalid_argument("oracle: restarts must be >= 0");
  double s = 1.0;
  const RowMatrix y = scaled_copy(x, s);
  const Index d = x.cols();

  std::vector<Vector> starts;
  for (const auto& w : warm_starts) {
    if (w.size() != d) throw std::invalid_argument("oracle: warm start has wrong length");
    if (w.norm() > 0.0) starts.push_back(w.normalized());
  }
  for (int r = 0; r < opts.restarts; ++r) {
    starts.push_back(random_unit_vector(d, derive_seed(opts.seed, static_cast<std::uint64_t>(r))).coords());
  }
  if (starts.empty()) starts.push_back(Vector::Unit(d, 0));

  std::vector<AscentResult> results(starts.size());
  parallel_for(
      starts.size(),
      [&](std::size_t k) {
        results[k] = ascend_scaled(y, q, starts[k], opts.ascent,
                                   derive_seed(opts.seed ^ 0xa5a5a5a5ULL, k));
      },
      opts.threads);

  OracleResult out;
  std::size_t best = 0;
  int converged = 0;
  for (std::size_t k = 0; k < results.size(); ++k) {
    out.ascent_iterations_total += results[k].iterations;
    converged += results[k].converged ? 1 : 0;
    if (results[k].value > results[best].value) best = k;
  }
  out.value = s * results[best].value;
  out.vector = results[best].vector;
  out.restarts_used = static_cast<int>(results.size());
  out.converged_fraction = static_cast<double>(converged) / static_cast<double>(results.size());
  return out;
}

OracleResult grid_oracle_2d(const DataMatrix& x, int q, int grid_points) {
  require_even(q);
  if (x.cols() != 2) throw std::invalid_argument("grid_oracle_2d: requires d = 2");
  if (grid_points < 1000) throw std::invalid_argument("grid_oracle_2d: need >= 1000 points");
  double s = 1.0;
  const RowMatrix y = scaled_copy(x, s);
  const double step = std::numbers::pi / grid_points;
  double best = -1.0;
  Vector best_v(2);
  for (int k = 0; k < grid_points; ++k) {
    const Vector v{{std::cos(k * step), std::sin(k * step)}};
    const double f = moment(y * v, q);
    if (f > best) {
      best = f;
      best_v = v;
    }
  }
  OracleResult out;
  out.vector = UnitVector::normalized(best_v);
  out.value = s * expectation_q_norm(y * out.vector.coords(), q);
  out.restarts_used = grid_points;
  out.converged_fraction = 1.0;
  // |d/dt ||X v(t)||_q̄| <= max_i ||x_i||_2; the nearest grid point is within step/2.
  out.grid_error_bound = x.max_row_norm() * step / 2.0;
  return out;
}

namespace {

double pq_ratio(const RowMatrix& y, const Vector& v, double p, int q) {
  const double pn = lp_norm(v, p);
  if (!(pn > 0.0)) return 0.0;
  return lp_norm(y * v, q) / pn;
}

// sign(z) |z|^{r-1}, the l_r duality map up to scaling.
Vector duality_map(const Vector& z, double r) {
  const double m = z.lpNorm<Eigen::Infinity>();
  if (m == 0.0) return z;
  return z.unaryExpr([&](double a) {
    return std::copysign(std::pow(std::abs(a) / m, r - 1.0), a);
  });
}

// Nonlinear power method for the p->q norm (p > 1); keeps the best iterate.
Vector pq_ascend(const RowMatrix& y, double p, int q, Vector v) {
  const double p_dual = p / (p - 1.0);
  double best = pq_ratio(y, v, p, q);
  for (int it = 0; it < 500; ++it) {
    const Vector z = y.transpose() * duality_map(y * v, q);
    Vector w = duality_map(z, p_dual);
    if (!(w.norm() > 0.0)) break;
    const double r = pq_ratio(y, w, p, q);
    if (!(r > best)) break;
    const double gain = r - best;
    v = std::move(w);
    best = r;
    if (gain <= 1e-13 * best) break;
  }
  return v;
}

}  // namespace

PQOracleResult pq_oracle(const DataMatrix& x, double p, int q, int restarts,
                         std::uint64_t seed, std::span<const Vector> warm_starts,
                         int grid_points) {
  if (!(p >= 1.0)) throw std::invalid_argument("pq_oracle: p must be >= 1");
  if (q < 1) throw std::invalid_argument("pq_oracle: q must be >= 1");
  double s = 1.0;
  const RowMatrix y = scaled_copy(x, s);
  const Index d = x.cols();

  std::vector<Vector> candidates;
  if (d == 2) {
    const double step = std::numbers::pi / grid_points;
    for (int k = 0; k < grid_points; ++k) {
      candidates.push_back(Vector{{std::cos(k * step), std::sin(k * step)}});
    }
  } else if (p == 1.0) {
    // The ratio is convex in v, so its sup over the l_1 ball is at a vertex.
    for (Index r = 0; r < d; ++r) candidates.push_back(Vector::Unit(d, r));
  } else {
    std::vector<Vector> starts;
    for (const auto& w : warm_starts) {
      if (w.size() == d && w.norm() > 0.0) starts.push_back(w);
    }
    for (Index r = 0; r < d; ++r) starts.push_back(Vector::Unit(d, r));
    for (int r = 0; r < restarts; ++r) {
      starts.push_back(random_unit_vector(d, derive_seed(seed, static_cast<std::uint64_t>(r))).coords());
    }
    for (auto& st : starts) candidates.push_back(pq_ascend(y, p, q, st));
  }
  // Warm starts always count as candidates.
  for (const auto& w : warm_starts) {
    if (w.size() == d && w.norm() > 0.0) candidates.push_back(w);
  }

  double best = -1.0;
  Vector best_v = Vector::Unit(d, 0);
  for (const auto& c : candidates) {
    const double r = pq_ratio(y, c, p, q);
    if (r > best) {
      best = r;
      best_v = c;
    }
  }
  PQOracleResult out;
  out.vector = UnitVector::normalized(best_v, p);
  out.value = s * std::max(0.0, best);
  return out;
}

}  // namespace m2q
