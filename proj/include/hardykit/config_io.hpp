#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "hardykit/estimator.hpp"
#include "hardykit/sup_search.hpp"

namespace hardykit {

using json = nlohmann::json;

/// Weight document, e.g. {"family":"power","lambda":-2.0,"interval":[1.0,"inf"]}.
/// "inf"/"-inf" string tokens denote infinite endpoints. Unknown keys are hard
/// errors.
WeightSpec weight_from_json(const json& j);
json weight_to_json(const WeightSpec& w);

Interval interval_from_json(const json& j);
json interval_to_json(const Interval& iv);

QuadratureSettings quadrature_from_json(const json& j);
SupSettings sup_from_json(const json& j);

/// Minimal TOML reader covering run configs: [table] headers, dotted keys,
/// strings, numbers, booleans and flat arrays.
json toml_to_json(const std::string& text);

/// Parses a config document by extension (.json default, .toml accepted).
json load_config_document(const std::string& path);

/// FNV-1a over the canonical dump; embedded in every output record.
std::uint64_t config_hash(const json& j);

}  // namespace hardykit
