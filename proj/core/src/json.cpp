#include "emoc/json.hpp"

#include "emoc/error.hpp"

namespace emoc {

ordered_json value_to_json(const Value& value) {
  switch (value.kind()) {
    case Value::Kind::Int: return value.as_int();
    case Value::Kind::Bool: return value.as_bool();
    case Value::Kind::List: {
      ordered_json arr = ordered_json::array();
      for (const auto& item : value.items()) arr.push_back(value_to_json(item));
      return arr;
    }
  }
  return nullptr;
}

Value value_from_json(const nlohmann::json& j) {
  if (j.is_boolean()) return Value::boolean(j.get<bool>());
  if (j.is_number_unsigned()) {
    auto u = j.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) throw ConfigError("integer out of 64-bit range");
    return Value::integer(static_cast<std::int64_t>(u));
  }
  if (j.is_number_integer()) return Value::integer(j.get<std::int64_t>());
  if (j.is_array()) {
    std::vector<Value> items;
    for (const auto& item : j) items.push_back(value_from_json(item));
    return Value::list(std::move(items));
  }
  throw ConfigError("expected an integer, boolean or list, got " + j.dump());
}

ordered_json outcome_to_json(const Outcome& outcome) {
  if (const auto* v = std::get_if<Value>(&outcome)) return {{"value", value_to_json(*v)}};
  if (const auto* t = std::get_if<Trap>(&outcome)) return {{"trap", trap_name(t->kind)}};
  return {{"budget_exhausted", budget_name(std::get<BudgetExhausted>(outcome).which)}};
}

ordered_json report_to_json(const EvalReport& report) {
  ordered_json counts = ordered_json::object();
  for (Opcode op : all_opcodes()) {
    auto n = report.op_counts[static_cast<std::size_t>(op)];
    if (n) counts[std::string(opcode_name(op))] = n;
  }
  return {{"outcome", outcome_to_json(report.outcome)},
          {"steps", report.steps},
          {"aux_peak_cells", report.aux_peak_cells},
          {"op_counts", std::move(counts)}};
}

namespace {

ordered_json node_to_json(const Node& n) {
  ordered_json j;
  j["kind"] = kind_name(n.kind);
  if (n.op != Op::None) j["op"] = op_symbol(n.op);
  if (!n.name.empty()) j["name"] = n.name;
  if (n.kind == NodeKind::IntLit) j["value"] = n.value;
  if (n.kind == NodeKind::BoolLit) j["value"] = n.value != 0;
  if (n.slot >= 0) j["slot"] = n.slot;
  if (!n.children.empty()) {
    j["children"] = ordered_json::array();
    for (const auto& c : n.children) j["children"].push_back(node_to_json(c));
  }
  return j;
}

}  // namespace

ordered_json ast_to_json(const Ast& ast) {
  ordered_json arr = ordered_json::array();
  for (const auto& fn : ast.functions) arr.push_back(node_to_json(fn));
  return {{"functions", std::move(arr)}};
}

ordered_json verdict_to_json(const EquivVerdict& verdict) {
  ordered_json j{{"relation", relation_name(verdict.relation)},
                 {"mode", mode_name(verdict.mode)},
                 {"equal", verdict.equal}};
  if (verdict.relation == Relation::Functional) j["probes_examined"] = verdict.probes_examined;
  if (verdict.witness) {
    j["witness"] = std::visit(
        [](const auto& w) -> ordered_json {
          using W = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<W, ByteWitness>) {
            return {{"type", "byte"}, {"offset", w.offset}};
          } else if constexpr (std::is_same_v<W, NodeWitness>) {
            return {{"type", "node"}, {"path", w.path}};
          } else if constexpr (std::is_same_v<W, InstructionWitness>) {
            return {{"type", "instruction"}, {"function", w.function}, {"index", w.index}};
          } else {
            ordered_json args = ordered_json::array();
            for (const auto& a : w.args) args.push_back(value_to_json(a));
            return {{"type", "probe"},
                    {"probe_index", w.probe_index},
                    {"args", std::move(args)},
                    {"left", outcome_to_json(w.left)},
                    {"right", outcome_to_json(w.right)}};
          }
        },
        *verdict.witness);
    j["witness_text"] = verdict.describe_witness();
  }
  return j;
}

ordered_json cluster_to_json(const ClusterResult& result) {
  ordered_json assignments = ordered_json::object();
  for (std::size_t i = 0; i < result.ids.size(); ++i) assignments[result.ids[i]] = result.assignments[i];
  ordered_json j{{"k", result.k},
                 {"seed", result.seed},
                 {"restarts", result.restarts},
                 {"best_restart", result.best_restart},
                 {"inertia", result.inertia},
                 {"kept_dimensions", result.kept_dimensions},
                 {"assignments", std::move(assignments)},
                 {"centroids", result.centroids}};
  if (result.accuracy) j["accuracy"] = *result.accuracy;
  if (result.purity) j["purity"] = *result.purity;
  return j;
}

ordered_json diversity_to_json(const DiversityReport& report) {
  return {{"population", report.population},
          {"distinct_o_patterns", report.distinct_o_patterns},
          {"e_failures", report.e_failures},
          {"mean_pairwise_distance", report.mean_pairwise_distance},
          {"m_variance", report.m_variance},
          {"c_variance", report.c_variance}};
}

}  // namespace emoc
