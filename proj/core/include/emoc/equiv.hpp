#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "emoc/lang.hpp"
#include "emoc/normalize.hpp"
#include "emoc/probes.hpp"
#include "emoc/runner.hpp"
#include "emoc/vm.hpp"

namespace emoc {

enum class Relation : std::uint8_t { Encoding, Ast, Instruction, Functional };
enum class Mode : std::uint8_t { Raw, Normalized };

std::string_view relation_name(Relation relation);
Relation relation_from_name(std::string_view name);
std::string_view mode_name(Mode mode);
Mode mode_from_name(std::string_view name);

struct ByteWitness {
  std::size_t offset;
};

/// Path of kind[index] steps from the function list to the first difference.
struct NodeWitness {
  std::string path;
};

struct InstructionWitness {
  std::size_t function;
  std::size_t index;
};

struct ProbeWitness {
  std::size_t probe_index;
  std::vector<Value> args;
  Outcome left;
  Outcome right;
};

using Witness = std::variant<ByteWitness, NodeWitness, InstructionWitness, ProbeWitness>;

struct EquivVerdict {
  Relation relation = Relation::Encoding;
  Mode mode = Mode::Raw;
  bool equal = false;
  std::optional<Witness> witness;
  /// Functional verdicts: number of probes compared.
  std::size_t probes_examined = 0;

  std::string describe_witness() const;
};

EquivVerdict encoding_equivalent(const SourceUnit& a, const SourceUnit& b);

/// Raw mode compares alpha-canonical trees; normalized mode compares
/// normalize(tree, passes).
EquivVerdict ast_equivalent(const Ast& a, const Ast& b, Mode mode, const PassConfig& passes = {});

EquivVerdict instruction_equivalent(const Ast& a, const Ast& b, Mode mode,
                                    const PassConfig& passes = {});

/// Output agreement on every probe of `suite`. A trap or budget event on
/// either side is a disagreement. Throws EvalError on arity mismatch.
EquivVerdict functional_equivalent(const Program& a, const Program& b, const ProbeSuite& suite,
                                   const Budgets& budgets = {}, Mode mode = Mode::Raw,
                                   const PassConfig& passes = {}, ReportCache* cache = nullptr);

}  // namespace emoc
