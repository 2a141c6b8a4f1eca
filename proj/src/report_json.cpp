#include "m2q/report_json.hpp"

#include <stdexcept>

namespace m2q {
namespace {

json vector_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const CertificateReport& r) {
  json j;
  j["method"] = to_string(r.method);
  j["q"] = r.q;
  j["n"] = r.n;
  j["d"] = r.d;
  j["factor"] = r.factor;
  j["B"] = optional_json(r.list_max);
  j["certified_upper"] = r.certified_upper;
  if (r.best_direction) {
    j["best_direction"] = {
        {"provenance", r.best_provenance ? r.best_provenance->to_string() : "unknown"},
        {"coords", vector_json(r.best_direction->coords())}};
  } else {
    j["best_direction"] = nullptr;
  }
  if (r.decision) j["decision"] = to_string(*r.decision);
  if (r.alpha) j["alpha"] = *r.alpha;
  if (r.beta) j["beta"] = *r.beta;
  j["seed"] = r.seed;
  j["tolerances"] = {{"eig_tol", r.tolerances.tol}, {"max_iter", r.tolerances.max_iter}};
  const auto& dg = r.diagnostics;
  json diag = {{"max_eig_residual", dg.max_eig_residual},
               {"lambda_Mtilde", optional_json(dg.lambda_mtilde)},
               {"max_eig_iterations", dg.max_eig_iterations},
               {"all_converged", dg.all_converged},
               {"wall_ms",
                {{"gram", dg.wall_ms.gram_ms},
                 {"Mi_loop", dg.wall_ms.mi_loop_ms},
                 {"Mtilde", dg.wall_ms.mtilde_ms},
                 {"list_eval", dg.wall_ms.list_eval_ms}}}};
  if (dg.lambda_flattening) diag["lambda_flattening"] = *dg.lambda_flattening;
  if (dg.route) diag["route"] = *dg.route;
  j["diagnostics"] = std::move(diag);
  return j;
}

json to_json(const PToQReport& r) {
  json j = to_json(r.proxy);
  j["method"] = "proxy_p_to_q";
  j["p"] = r.p;
  j["gamma_p"] = r.gamma_p;
  j["factor"] = r.factor;
  j["lower"] = r.lower;
  j["certified_upper"] = r.certified_upper;
  j["best_direction"] = {{"provenance", r.best_provenance.to_string()},
                         {"coords", vector_json(r.best_direction.coords())},
                         {"norm_p", r.p}};
  return j;
}

json to_json(const OracleResult& r, int q, std::uint64_t seed) {
  json j = {{"method", "oracle"},
            {"q", q},
            {"value", r.value},
            {"vector", vector_json(r.vector.coords())},
            {"restarts_used", r.restarts_used},
            {"ascent_iterations_total", r.ascent_iterations_total},
            {"converged_fraction", r.converged_fraction},
            {"seed", seed}};
  if (r.grid_error_bound) j["grid_error_bound"] = *r.grid_error_bound;
  return j;
}

json to_json(const BenchResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"d", row.d},
                    {"n", row.n},
                    {"method", row.method},
                    {"seed", row.seed},
                    {"value", row.value},
                    {"wall_ms", row.wall_ms}});
  }
  json fits = json::object();
  for (const auto& [method, fit] : r.fits) {
    fits[method] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"residuals", fit.residuals}};
  }
  json j = {{"q", r.config.q},
            {"dims", r.config.dims},
            {"n_rule", r.config.n_rule.to_string()},
            {"seeds", r.config.seeds},
            {"base_seed", r.config.base_seed},
            {"methods", r.config.methods},
            {"rows", rows},
            {"fits", fits},
            {"skipped_dims", r.skipped_dims},
            {"warnings", r.warnings}};
  if (r.config.synthetic_exponent) j["synthetic_exponent"] = *r.config.synthetic_exponent;
  return j;
}

json to_json(const LimitationReport& r) {
  json seeds = json::array();
  for (const auto& s : r.per_seed) {
    seeds.push_back({{"seed", s.seed},
                     {"n", s.n},
                     {"singular_fourth", s.singular_fourth},
                     {"max_row_fourth", s.max_row_fourth},
                     {"e1_fourth", s.e1_fourth},
                     {"singular_distance", s.singular_distance},
                     {"guth_b4", s.guth_b4},
                     {"proxy_b4", s.proxy_b4},
                     {"pass",
                      {{"singular_fourth", s.singular_ok},
                       {"max_row_fourth", s.rows_ok},
                       {"e1_fourth", s.e1_ok},
                       {"singular_distance", s.distance_ok},
                       {"guth_b4", s.guth_ok},
                       {"proxy_b4", s.proxy_ok}}}});
  }
  json majority = json::object();
  for (const auto& [name, ok] : r.majority) majority[name] = ok;
  const auto& th = r.resolved;
  return {{"d", r.config.d},
          {"C", r.config.c_multiplier},
          {"spike_variance", r.config.spike_variance},
          {"q", r.config.q},
          {"base_seed", r.config.base_seed},
          {"thresholds",
           {{"singular_fourth_max", th.singular_fourth_max},
            {"row_fourth_max", th.row_fourth_max},
            {"e1_fourth_min", th.e1_fourth_min},
            {"singular_distance_max", th.singular_distance_max},
            {"guth_b4_max", th.guth_b4_max},
            {"proxy_b4_min", th.proxy_b4_min}}},
          {"per_seed", seeds},
          {"majority", majority},
          {"verdict", r.verdict ? "pass" : "fail"}};
}

json to_json(const GeneratorSpec& s) {
  return {{"kind", to_string(s.kind)},
          {"n", resolved_rows(s)},
          {"d", s.d},
          {"q_hint", s.q_hint},
          {"seed", s.seed},
          {"params",
           {{"C", s.params.c_multiplier},
            {"spike_variance", s.params.spike_variance},
            {"c", s.params.scale},
            {"spike_fraction", s.params.spike_fraction},
            {"spike_magnitude", s.params.spike_magnitude}}}};
}

GeneratorSpec generator_spec_from_json(const json& j) {
  try {
    GeneratorSpec s;
    s.kind = generator_kind_from_string(j.at("kind").get<std::string>());
    s.n = j.value("n", Index{0});
    s.d = j.at("d").get<Index>();
    s.q_hint = j.value("q_hint", 4);
    s.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("params")) {
      const auto& p = j.at("params");
      s.params.c_multiplier = p.value("C", s.params.c_multiplier);
      s.params.spike_variance = p.value("spike_variance", s.params.spike_variance);
      s.params.scale = p.value("c", s.params.scale);
      s.params.spike_fraction = p.value("spike_fraction", s.params.spike_fraction);
      s.params.spike_magnitude = p.value("spike_magnitude", s.params.spike_magnitude);
    }
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("generator spec: ") + e.what());
  }
}

}  // namespace m2q
