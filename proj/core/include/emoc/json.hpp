#pragma once

#include <nlohmann/json.hpp>

#include "emoc/analyze.hpp"
#include "emoc/equiv.hpp"
#include "emoc/lang.hpp"
#include "emoc/value.hpp"
#include "emoc/vm.hpp"

// JSON views of toolkit types, used by the CLI and the file formats.

namespace emoc {

using ordered_json = nlohmann::ordered_json;

ordered_json value_to_json(const Value& value);
/// Integers, booleans and (nested) arrays of them.
Value value_from_json(const nlohmann::json& j);

ordered_json outcome_to_json(const Outcome& outcome);
ordered_json report_to_json(const EvalReport& report);
ordered_json ast_to_json(const Ast& ast);
ordered_json verdict_to_json(const EquivVerdict& verdict);
ordered_json cluster_to_json(const ClusterResult& result);
ordered_json diversity_to_json(const DiversityReport& report);

}  // namespace emoc
