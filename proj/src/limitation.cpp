#include "m2q/limitation.hpp"

#include <algorithm>
#include <stdexcept>

#include "m2q/generators.hpp"
#include "m2q/random.hpp"

namespace m2q {

LimitationReport run_limitation(const LimitationConfig& cfg) {
  if (cfg.d < 3) throw std::invalid_argument("limitation: d must be >= 3");
  if (cfg.seeds < 1) throw std::invalid_argument("limitation: seeds must be >= 1");
  const int q = cfg.q;
  require_even_q(q);

  LimitationReport rep;
  rep.config = cfg;
  rep.resolved = cfg.thresholds;
  const auto d_real = static_cast<double>(cfg.d);
  if (rep.resolved.e1_fourth_min <= 0.0) rep.resolved.e1_fourth_min = d_real;
  if (rep.resolved.proxy_b4_min <= 0.0) rep.resolved.proxy_b4_min = d_real;
  const auto& th = rep.resolved;

  for (int s = 0; s < cfg.seeds; ++s) {
    LimitationSeedResult r;
    r.seed = derive_seed(cfg.base_seed, static_cast<std::uint64_t>(s));
    const DataMatrix x = gen_appendix_a_spike(cfg.d, cfg.c_multiplier, r.seed, cfg.spike_variance);
    r.n = x.rows();

    const auto sv = top_singular_pair(x, cfg.certify.spectral);
    const Vector& u = sv.right.coords();
    r.singular_fourth = expectation_q_moment(x.entries() * u, q);
    r.e1_fourth = expectation_q_moment(x.entries().col(0), q);
    const Vector e2 = Vector::Unit(cfg.d, 1);
    r.singular_distance = std::min((u - e2).norm(), (u + e2).norm());

    const auto rows = normalized_row_values(x, q, cfg.certify.threads);
    const double row_max = *std::max_element(rows.begin(), rows.end());
    r.max_row_fourth = ipow(row_max, q);

    const auto guth = guth_certificate(x, q, cfg.certify);
    r.guth_b4 = ipow(*guth.list_max, 4);
    const auto proxy = proxy_certificate(x, q, cfg.certify);
    r.proxy_b4 = ipow(*proxy.report.list_max, 4);

    r.singular_ok = r.singular_fourth <= th.singular_fourth_max;
    r.rows_ok = r.max_row_fourth <= th.row_fourth_max;
    r.e1_ok = r.e1_fourth >= th.e1_fourth_min;
    r.distance_ok = r.singular_distance <= th.singular_distance_max;
    r.guth_ok = r.guth_b4 <= th.guth_b4_max;
    r.proxy_ok = r.proxy_b4 >= th.proxy_b4_min;
    rep.per_seed.push_back(r);
  }

  auto majority = [&](auto member) {
    const auto passed = std::count_if(rep.per_seed.begin(), rep.per_seed.end(),
                                      [&](const LimitationSeedResult& r) { return r.*member; });
    return 2 * passed > static_cast<long>(rep.per_seed.size());
  };
  rep.majority = {
      {"singular_fourth", majority(&LimitationSeedResult::singular_ok)},
      {"max_row_fourth", majority(&LimitationSeedResult::rows_ok)},
      {"e1_fourth", majority(&LimitationSeedResult::e1_ok)},
      {"singular_distance", majority(&LimitationSeedResult::distance_ok)},
      {"guth_b4", majority(&LimitationSeedResult::guth_ok)},
      {"proxy_b4", majority(&LimitationSeedResult::proxy_ok)},
  };
  rep.verdict = std::all_of(rep.majority.begin(), rep.majority.end(),
                            [](const auto& kv) { return kv.second; });
  return rep;
}

}  // namespace m2q
