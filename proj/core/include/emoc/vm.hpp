#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "emoc/bytecode.hpp"
#include "emoc/value.hpp"

namespace emoc {

/// Deterministic resource limits standing in for "halts on the domain".
struct Budgets {
  std::uint64_t max_steps = 1'000'000'000;
  std::uint64_t max_cells = 10'000'000;
  std::uint64_t max_call_depth = 10'000;

  void validate() const;

  friend bool operator==(const Budgets&, const Budgets&) = default;
};

enum class TrapKind : std::uint8_t {
  DivisionByZero,
  ModuloByZero,
  IndexOutOfBounds,
  IntegerOverflow,
  AssertionFailure,
  PopFromEmpty,
  TypeError,
};

enum class BudgetKind : std::uint8_t { Steps, Cells, Depth };

std::string_view trap_name(TrapKind kind);
std::string_view budget_name(BudgetKind kind);

struct Trap {
  TrapKind kind;
  friend bool operator==(const Trap&, const Trap&) = default;
};

struct BudgetExhausted {
  BudgetKind which;
  friend bool operator==(const BudgetExhausted&, const BudgetExhausted&) = default;
};

using Outcome = std::variant<Value, Trap, BudgetExhausted>;

std::string outcome_to_string(const Outcome& outcome);

using OpCounts = std::array<std::uint64_t, kOpcodeCount>;

struct EvalReport {
  Outcome outcome;
  std::uint64_t steps = 0;
  OpCounts op_counts{};
  /// Peak live cells minus the heap cells of the input arguments.
  std::uint64_t aux_peak_cells = 0;

  bool completed() const { return std::holds_alternative<Value>(outcome); }
  bool exhausted() const { return std::holds_alternative<BudgetExhausted>(outcome); }
  const Value* value() const { return std::get_if<Value>(&outcome); }

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Runs `entry` on `args`. Every executed instruction costs one step.
///
/// Memory model: a call frame costs 2 cells plus one per local slot; a list
/// costs 1 + length cells. Cells are released when the last reference goes
/// away (reassignment, pop, frame exit).
///
/// Throws EvalError when the entry function is missing or the argument count
/// does not match its arity; every runtime failure is reported in `outcome`.
EvalReport evaluate(const InstructionStream& stream, std::string_view entry,
                    std::span<const Value> args, const Budgets& budgets = {});

}  // namespace emoc
