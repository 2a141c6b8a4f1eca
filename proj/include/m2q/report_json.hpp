#pragma once

// JSON encodings of reports and generator specs (schema in
// docs/report.schema.json).

#include <json.hpp>  // nlohmann/json (vendored)

#include "m2q/bench.hpp"
#include "m2q/certify.hpp"
#include "m2q/generators.hpp"
#include "m2q/limitation.hpp"
#include "m2q/oracle.hpp"

namespace m2q {

using json = nlohmann::json;

json to_json(const CertificateReport& report);
json to_json(const PToQReport& report);
json to_json(const OracleResult& result, int q, std::uint64_t seed);
json to_json(const BenchResult& result);
json to_json(const LimitationReport& report);

json to_json(const GeneratorSpec& spec);
/// Throws std::invalid_argument on unknown kinds or missing fields.
GeneratorSpec generator_spec_from_json(const json& j);

}  // namespace m2q
