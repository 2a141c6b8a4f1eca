#include "m2q/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "m2q/errors.hpp"
#include "m2q/generators.hpp"
#include "m2q/oracle.hpp"
#include "m2q/random.hpp"

namespace m2q {

LogLogFit fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit: x and y differ in length");
  std::set<double> distinct(x.begin(), x.end());
  if (distinct.size() < 3) throw std::invalid_argument("fit: need at least 3 distinct x values");
  const auto m = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("fit: values must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.residuals.push_back(ly[i] - (fit.intercept + fit.slope * lx[i]));
  }
  return fit;
}

std::string NRule::to_string() const {
  return quadratic ? "4d2" : "fixed:" + std::to_string(fixed_n);
}

NRule NRule::parse(const std::string& text) {
  if (text == "4d2") return NRule{};
  if (text.rfind("fixed:", 0) == 0) {
    NRule r;
    r.quadratic = false;
    try {
      r.fixed_n = std::stoll(text.substr(6));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad n-rule '" + text + "'");
    }
    if (r.fixed_n < 1) throw std::invalid_argument("bad n-rule '" + text + "'");
    return r;
  }
  throw std::invalid_argument("bad n-rule '" + text + "' (expected 4d2 or fixed:<n>)");
}

std::uint64_t bench_instance_seed(std::uint64_t base_seed, int seed_index) {
  return derive_seed(base_seed, static_cast<std::uint64_t>(seed_index));
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

const std::set<std::string>& known_methods() {
  static const std::set<std::string> k{"proxy", "baseline", "guth", "oracle"};
  return k;
}

}  // namespace

BenchResult run_bench_scaling(const BenchConfig& cfg,
                              const std::function<void(const BenchRow&)>& progress) {
  require_even_q(cfg.q);
  if (std::set<Index>(cfg.dims.begin(), cfg.dims.end()).size() < 3) {
    throw std::invalid_argument("bench: need at least 3 distinct dims");
  }
  if (cfg.seeds < 1) throw std::invalid_argument("bench: seeds must be >= 1");
  for (const auto& m : cfg.methods) {
    if (!known_methods().contains(m)) throw std::invalid_argument("bench: unknown method '" + m + "'");
  }

  BenchResult result;
  result.config = cfg;
  std::vector<Index> used_dims;
  for (Index d : cfg.dims) {
    const Index n = cfg.n_rule.rows(d);
    const double work = static_cast<double>(n) * n * d * d;
    if (!cfg.synthetic_exponent && work > cfg.budget) {
      result.skipped_dims.push_back(d);
      result.warnings.push_back("skipping d = " + std::to_string(d) + ": n^2 d^2 = " +
                                std::to_string(work) + " exceeds the budget");
      continue;
    }
    used_dims.push_back(d);
    for (int s = 0; s < cfg.seeds; ++s) {
      const std::uint64_t seed = bench_instance_seed(cfg.base_seed, s);
      auto emit = [&](const std::string& method, double value, double ms) {
        BenchRow row{d, n, method, seed, value, ms};
        if (progress) progress(row);
        result.rows.push_back(std::move(row));
      };
      if (cfg.synthetic_exponent) {
        for (const auto& m : cfg.methods) {
          emit(m, std::pow(static_cast<double>(d), *cfg.synthetic_exponent), 0.0);
        }
        continue;
      }
      const DataMatrix x = gen_gaussian(n, d, seed);
      std::optional<ProxyCertificate> proxy;
      for (const auto& m : cfg.methods) {
        const auto t0 = std::chrono::steady_clock::now();
        double value = 0.0;
        if (m == "proxy") {
          proxy = proxy_certificate(x, cfg.q, cfg.certify);
          value = proxy->report.certified_upper;
        } else if (m == "baseline") {
          value = baseline_certificate(x, cfg.q, cfg.certify).certified_upper;
        } else if (m == "guth") {
          value = guth_certificate(x, cfg.q, cfg.certify).certified_upper;
        } else {
          OracleOptions oo;
          oo.restarts = cfg.oracle_restarts;
          oo.seed = seed;
          oo.threads = cfg.certify.threads;
          // The proxy witness alone keeps oracle >= B; seeding from the whole
          // list (2n+d+1 starts) dominates the run time at d = 32.
          std::vector<Vector> warm;
          if (proxy) warm.push_back(proxy->report.best_direction->coords());
          value = oracle_lower_bound(x, cfg.q, oo, warm).value;
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        emit(m, value, ms);
      }
    }
  }
  if (used_dims.size() < 3) {
    throw CapacityError("bench: fewer than 3 dims fit in the budget; refusing to fit a slope");
  }
  for (const auto& m : cfg.methods) {
    std::vector<double> xs, ys;
    for (Index d : used_dims) {
      std::vector<double> vals;
      for (const auto& r : result.rows) {
        if (r.d == d && r.method == m) vals.push_back(r.value);
      }
      xs.push_back(static_cast<double>(d));
      ys.push_back(median(vals));
    }
    result.fits[m] = fit_loglog_slope(xs, ys);
  }
  return result;
}

std::string bench_rows_csv(const BenchResult& result) {
  std::ostringstream out;
  out.precision(17);
  out << "d,n,method,seed,value,wall_ms\n";
  for (const auto& r : result.rows) {
    out << r.d << ',' << r.n << ',' << r.method << ',' << r.seed << ',' << r.value << ','
        << r.wall_ms << '\n';
  }
  return out.str();
}

}  // namespace m2q
