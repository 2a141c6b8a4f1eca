// Thin bindings: matrices in as float64 arrays, reports out as dicts (via the
// same JSON encoding the CLI emits).
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "m2q/certify.hpp"
#include "m2q/errors.hpp"
#include "m2q/generators.hpp"
#include "m2q/oracle.hpp"
#include "m2q/report_json.hpp"

namespace py = pybind11;
using namespace m2q;

namespace {

DataMatrix to_data(const Eigen::Ref<const Matrix>& a) { return DataMatrix(a); }

py::object to_py(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

CertifyConfig config(std::uint64_t seed, double eig_tol, int max_iter) {
  CertifyConfig cfg;
  cfg.spectral.seed = seed;
  cfg.spectral.tol = eig_tol;
  cfg.spectral.max_iter = max_iter;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_m2q, m) {
  m.doc() = "Certified bounds for 2->q matrix norms";

  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);

  m.def(
      "certify",
      [](const Eigen::Ref<const Matrix>& x, int q, const std::string& method, std::uint64_t seed,
         double eig_tol, int max_iter) {
        const DataMatrix dm = to_data(x);
        const auto cfg = config(seed, eig_tol, max_iter);
        if (method == "proxy") return to_py(to_json(proxy_certificate(dm, q, cfg).report));
        if (method == "baseline") return to_py(to_json(baseline_certificate(dm, q, cfg)));
        if (method == "guth") return to_py(to_json(guth_certificate(dm, q, cfg)));
        throw std::invalid_argument("unknown method: " + method);
      },
      py::arg("x"), py::arg("q") = 4, py::arg("method") = "proxy", py::arg("seed") = 0,
      py::arg("eig_tol") = 1e-10, py::arg("max_iter") = 5000);

  m.def(
      "certify_p_to_q",
      [](const Eigen::Ref<const Matrix>& x, double p, int q, std::uint64_t seed) {
        return to_py(to_json(p_to_q_certificate(to_data(x), p, q, config(seed, 1e-10, 5000))));
      },
      py::arg("x"), py::arg("p"), py::arg("q") = 4, py::arg("seed") = 0);

  m.def(
      "oracle",
      [](const Eigen::Ref<const Matrix>& x, int q, int restarts, std::uint64_t seed) {
        OracleOptions opts;
        opts.restarts = restarts;
        opts.seed = seed;
        return to_py(to_json(oracle_lower_bound(to_data(x), q, opts), q, seed));
      },
      py::arg("x"), py::arg("q") = 4, py::arg("restarts") = 64, py::arg("seed") = 0);

  m.def(
      "expectation_norm",
      [](const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Vector>& v, int q) {
        return expectation_norm_of_image(to_data(x), v, q);
      },
      py::arg("x"), py::arg("v"), py::arg("q"));

  m.def("gamma_p", &gamma_p, py::arg("p"));

  m.def(
      "generate",
      [](const std::string& kind, Index n, Index d, std::uint64_t seed) -> Matrix {
        GeneratorSpec spec;
        spec.kind = generator_kind_from_string(kind);
        spec.n = n;
        spec.d = d;
        spec.seed = seed;
        return generate(spec).entries();
      },
      py::arg("kind"), py::arg("n"), py::arg("d"), py::arg("seed") = 0);
}
