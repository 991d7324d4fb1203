#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>

#include "emoc/lang.hpp"
#include "emoc/value.hpp"
#include "emoc/vm.hpp"

namespace emoc::testing {

// Direct tree-walking evaluator over a resolved Ast. Shares nothing with the
// lowering or the VM; used as an oracle for both.
using RefOutcome = std::variant<Value, TrapKind>;

RefOutcome reference_eval(const Ast& ast, std::string_view entry, std::span<const Value> args);

/// The VM outcome projected onto the reference's domain. Budget events map to
/// nullopt-like failures in tests, so they are not representable here.
bool same_outcome(const RefOutcome& ref, const Outcome& vm);

}  // namespace emoc::testing
