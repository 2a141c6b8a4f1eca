#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "m2q/bench.hpp"
#include "m2q/certify.hpp"
#include "m2q/errors.hpp"
#include "m2q/generators.hpp"
#include "m2q/io.hpp"
#include "m2q/limitation.hpp"
#include "m2q/oracle.hpp"
#include "m2q/report_json.hpp"

namespace m2q::cli {
namespace {

namespace fs = std::filesystem;

struct SpectralFlags {
  double eig_tol = 1e-10;
  int max_iter = 5000;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    app.add_option("--eig-tol", eig_tol, "Power-iteration tolerance")->check(CLI::PositiveNumber);
    app.add_option("--max-iter", max_iter, "Power-iteration step cap")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for power-iteration starts");
  }
  CertifyConfig config() const {
    CertifyConfig cfg;
    cfg.spectral.tol = eig_tol;
    cfg.spectral.max_iter = max_iter;
    cfg.spectral.seed = seed;
    return cfg;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

void check_budget(const DataMatrix& x, double budget) {
  const double work = static_cast<double>(x.rows()) * x.rows() * x.cols() * x.cols();
  if (work > budget) {
    std::ostringstream msg;
    msg << "n^2 d^2 = " << work << " exceeds the budget " << budget << " (raise --budget)";
    throw CapacityError(msg.str());
  }
}

int exit_for(Decision d) {
  switch (d) {
    case Decision::no_consistent:
      return kOk;
    case Decision::yes_witnessed:
      return kYesWitnessed;
    case Decision::inconclusive:
      return kInconclusive;
  }
  return kFailure;
}

// ---------------------------------------------------------------- gen

struct GenCommand {
  std::string kind;
  Index n = 0;
  Index d = 0;
  std::uint64_t seed = 0;
  int q_hint = 4;
  std::string out_path;
  GeneratorParams params;

  void add(CLI::App& app) {
    app.add_option("--kind", kind, "gaussian | appendixA_spike | rank_one | identity | planted_spike")
        ->required();
    app.add_option("--n", n, "Rows (derived for appendixA_spike)");
    app.add_option("--d", d, "Columns")->required();
    app.add_option("--seed", seed, "Generator seed");
    app.add_option("--q-hint", q_hint, "Even q the instance is meant for");
    app.add_option("--out", out_path, "Output matrix (.m2qb/.bin binary, otherwise CSV)");
    app.add_option("--C", params.c_multiplier, "appendixA_spike: n = C d^3");
    app.add_option("--spike-variance", params.spike_variance,
                   "appendixA_spike: extra variance of coordinate 2");
    app.add_option("--c", params.scale, "rank_one: row scale");
    app.add_option("--rho", params.spike_fraction, "planted_spike: spiked fraction");
    app.add_option("--s", params.spike_magnitude, "planted_spike: spike magnitude");
  }

  int run(std::ostream& out) const {
    GeneratorSpec spec;
    spec.kind = generator_kind_from_string(kind);
    spec.n = n;
    spec.d = d;
    spec.seed = seed;
    spec.q_hint = q_hint;
    spec.params = params;
    const DataMatrix x = generate(spec);
    json summary = {{"kind", to_string(spec.kind)},
                    {"n", x.rows()},
                    {"d", x.cols()},
                    {"checksum", io::checksum(x)},
                    {"seed", seed}};
    if (!out_path.empty()) {
      io::write_matrix(out_path, x);
      const std::string sidecar = out_path + ".spec.json";
      write_text(sidecar, to_json(spec).dump(2) + "\n");
      summary["out"] = out_path;
      summary["spec"] = sidecar;
    }
    out << summary.dump() << '\n';
    return kOk;
  }
};

// ---------------------------------------------------------------- certify

struct CertifyCommand {
  std::string in;
  int q = 4;
  std::string method = "proxy";
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> p;
  std::string json_path;
  double budget = 2e10;
  SpectralFlags spectral;

  void add(CLI::App& app) {
    app.add_option("--in", in, "Input matrix")->required();
    app.add_option("--q", q, "Even q >= 2");
    app.add_option("--method", method, "proxy | baseline | guth | all")
        ->check(CLI::IsMember({"proxy", "baseline", "guth", "all"}));
    app.add_option("--alpha", alpha, "Decision threshold (NO promise: norm <= alpha)");
    app.add_option("--beta", beta, "YES threshold; defaults to factor * alpha");
    app.add_option("--p", p, "Certify the p->q norm instead (proxy list only)");
    app.add_option("--json", json_path, "Also write the report JSON to this file");
    app.add_option("--budget", budget, "Cap on n^2 d^2 per certificate");
    spectral.add(app);
  }

  int run(std::ostream& out) const {
    require_even_q(q);
    const DataMatrix x = io::read_matrix(in);
    const CertifyConfig cfg = spectral.config();
    check_budget(x, budget);

    json result;
    int code = kOk;
    if (p) {
      if (method != "proxy") throw std::invalid_argument("--p requires --method proxy");
      const auto rep = p_to_q_certificate(x, *p, q, cfg);
      result = to_json(rep);
    } else {
      std::vector<std::string> methods =
          method == "all" ? std::vector<std::string>{"proxy", "baseline", "guth"}
                          : std::vector<std::string>{method};
      std::vector<CertificateReport> reports;
      for (const auto& m : methods) {
        CertificateReport rep = m == "proxy"      ? proxy_certificate(x, q, cfg).report
                                : m == "baseline" ? baseline_certificate(x, q, cfg)
                                                  : guth_certificate(x, q, cfg);
        if (alpha) apply_decision(rep, *alpha, beta);
        reports.push_back(std::move(rep));
      }
      if (alpha) {
        // Any witness wins; otherwise any NO-consistent certificate settles it.
        bool yes = false, no = false;
        for (const auto& r : reports) {
          yes = yes || r.decision == Decision::yes_witnessed;
          no = no || r.decision == Decision::no_consistent;
        }
        code = yes ? kYesWitnessed : no ? kOk : kInconclusive;
      }
      if (reports.size() == 1) {
        result = to_json(reports.front());
      } else {
        result = json::array();
        for (const auto& r : reports) result.push_back(to_json(r));
      }
    }
    const std::string text = result.dump(2);
    out << text << '\n';
    if (!json_path.empty()) write_text(json_path, text + "\n");
    return code;
  }
};

// ---------------------------------------------------------------- search

struct SearchCommand {
  std::string in;
  int q = 4;
  double budget = 2e10;
  SpectralFlags spectral;

  void add(CLI::App& app) {
    app.add_option("--in", in, "Input matrix")->required();
    app.add_option("--q", q, "Even q >= 2");
    app.add_option("--budget", budget, "Cap on n^2 d^2");
    spectral.add(app);
  }

  int run(std::ostream& out) const {
    require_even_q(q);
    const DataMatrix x = io::read_matrix(in);
    check_budget(x, budget);
    const auto cert = proxy_certificate(x, q, spectral.config());
    const auto& rep = cert.report;
    json j = {{"q", q},
              {"n", rep.n},
              {"d", rep.d},
              {"value", *rep.list_max},
              {"factor", rep.factor},
              {"provenance", rep.best_provenance->to_string()},
              {"direction", std::vector<double>(rep.best_direction->coords().data(),
                                                rep.best_direction->coords().data() +
                                                    rep.best_direction->size())},
              {"guarantee", "value >= norm / factor"},
              {"seed", rep.seed}};
    out << j.dump(2) << '\n';
    return kOk;
  }
};

// ---------------------------------------------------------------- oracle

struct OracleCommand {
  std::string in;
  int q = 4;
  int restarts = 64;
  std::uint64_t seed = 0;
  bool warm_from_proxy = false;
  int grid = 0;
  double budget = 2e10;

  void add(CLI::App& app) {
    app.add_option("--in", in, "Input matrix")->required();
    app.add_option("--q", q, "Even q >= 2");
    app.add_option("--restarts", restarts, "Random restarts")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", seed, "Restart seed");
    app.add_flag("--warm-from-proxy", warm_from_proxy, "Also start from every proxy-list vector");
    app.add_option("--grid", grid, "d = 2 only: exhaustive angle grid with this many points");
    app.add_option("--budget", budget, "Cap on n^2 d^2 for --warm-from-proxy");
  }

  int run(std::ostream& out) const {
    require_even_q(q);
    const DataMatrix x = io::read_matrix(in);
    OracleResult r;
    if (grid > 0) {
      r = grid_oracle_2d(x, q, grid);
    } else {
      std::vector<Vector> warm;
      if (warm_from_proxy) {
        check_budget(x, budget);
        CertifyConfig cfg;
        cfg.spectral.seed = seed;
        warm = proxy_certificate(x, q, cfg).list.directions();
      }
      OracleOptions opts;
      opts.restarts = restarts;
      opts.seed = seed;
      r = oracle_lower_bound(x, q, opts, warm);
    }
    out << to_json(r, q, seed).dump(2) << '\n';
    return kOk;
  }
};

// ---------------------------------------------------------------- bench-scaling

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct BenchCommand {
  int q = 4;
  std::string dims = "8,16,24,32";
  std::string n_rule = "4d2";
  int seeds = 3;
  std::uint64_t base_seed = 1;
  std::string methods = "proxy,baseline,oracle";
  double budget = 2e10;
  int oracle_restarts = 16;
  std::optional<double> synthetic;
  std::string csv_path;
  std::string json_path;

  void add(CLI::App& app) {
    app.add_option("--q", q, "Even q >= 2");
    app.add_option("--dims", dims, "Comma-separated dimensions (>= 3 distinct)");
    app.add_option("--n-rule", n_rule, "4d2 or fixed:<n>");
    app.add_option("--seeds", seeds, "Instances per dimension")->check(CLI::PositiveNumber);
    app.add_option("--base-seed", base_seed, "Base seed");
    app.add_option("--methods", methods, "Comma-separated: proxy,baseline,guth,oracle");
    app.add_option("--budget", budget, "Skip instances with n^2 d^2 above this");
    app.add_option("--oracle-restarts", oracle_restarts, "Random restarts for the oracle");
    app.add_option("--synthetic-exponent", synthetic,
                   "Inject values d^e instead of running (fitter self-check)");
    app.add_option("--csv", csv_path, "Write per-instance rows as CSV");
    app.add_option("--json", json_path, "Write the full result as JSON");
  }

  int run(std::ostream& out, std::ostream& err) const {
    BenchConfig cfg;
    cfg.q = q;
    cfg.dims.clear();
    for (const auto& d : split_csv(dims)) cfg.dims.push_back(std::stoll(d));
    cfg.n_rule = NRule::parse(n_rule);
    cfg.seeds = seeds;
    cfg.base_seed = base_seed;
    cfg.methods = split_csv(methods);
    cfg.budget = budget;
    cfg.oracle_restarts = oracle_restarts;
    cfg.synthetic_exponent = synthetic;
    const auto result = run_bench_scaling(cfg, [&](const BenchRow& r) {
      std::ostringstream line;
      line << "d=" << r.d << " n=" << r.n << " " << r.method << " value=" << r.value << " ("
           << std::fixed << std::setprecision(1) << r.wall_ms << " ms)\n";
      err << line.str();
    });
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    if (!csv_path.empty()) write_text(csv_path, bench_rows_csv(result));
    if (!json_path.empty()) write_text(json_path, to_json(result).dump(2) + "\n");
    std::ostringstream table;
    table << "method      slope      intercept\n";
    for (const auto& [m, fit] : result.fits) {
      table << std::left << std::setw(10) << m << "  " << std::right << std::fixed
          << std::setprecision(4) << std::setw(8) << fit.slope << "  " << std::setw(10)
          << fit.intercept << '\n';
    }
    out << table.str();
    return kOk;
  }
};

// ---------------------------------------------------------------- limitation

struct LimitationCommand {
  LimitationConfig cfg;
  std::string json_path;

  void add(CLI::App& app) {
    app.add_option("--d", cfg.d, "Dimension (>= 3)");
    app.add_option("--C", cfg.c_multiplier, "n = C d^3");
    app.add_option("--seeds", cfg.seeds, "Independent instances")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.base_seed, "Base seed");
    app.add_option("--spike-variance", cfg.spike_variance, "Extra variance of coordinate 2");
    app.add_option("--json", json_path, "Also write the report JSON to this file");
  }

  int run(std::ostream& out) const {
    const auto rep = run_limitation(cfg);
    const std::string text = to_json(rep).dump(2);
    out << text << '\n';
    if (!json_path.empty()) write_text(json_path, text + "\n");
    return rep.verdict ? kOk : kFailure;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"m2q: certified bounds for hypercontractive 2->q matrix norms"};
  app.require_subcommand(1);

  GenCommand gen;
  CertifyCommand certify;
  SearchCommand search;
  OracleCommand oracle;
  BenchCommand bench;
  LimitationCommand limitation;
  auto* gen_app = app.add_subcommand("gen", "Generate a seeded instance");
  gen.add(*gen_app);
  auto* certify_app = app.add_subcommand("certify", "Certify an upper bound on ||X||_{2->q}");
  certify.add(*certify_app);
  auto* search_app = app.add_subcommand("search", "Find a direction with large ||Xv||_q");
  search.add(*search_app);
  auto* oracle_app = app.add_subcommand("oracle", "Heuristic lower bound by tensor power ascent");
  oracle.add(*oracle_app);
  auto* bench_app = app.add_subcommand("bench-scaling", "Log-log scaling experiment over d");
  bench.add(*bench_app);
  auto* limitation_app =
      app.add_subcommand("limitation", "Planted instance where row/singular proxies fail");
  limitation.add(*limitation_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*gen_app) return gen.run(out);
    if (*certify_app) return certify.run(out);
    if (*search_app) return search.run(out);
    if (*oracle_app) return oracle.run(out);
    if (*bench_app) return bench.run(out, err);
    if (*limitation_app) return limitation.run(out);
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceCap;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DegenerateInputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace m2q::cli
