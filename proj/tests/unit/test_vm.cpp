#include <gtest/gtest.h>

#include <numeric>

#include "emoc/error.hpp"
#include "emoc/vm.hpp"
#include "helpers.hpp"
#include "program_gen.hpp"
#include "reference.hpp"

using namespace emoc;
using namespace emoc::testing;

namespace {

std::uint64_t count(const EvalReport& r, Opcode op) { return r.op_counts[static_cast<std::size_t>(op)]; }

std::uint64_t total(const OpCounts& counts) {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Outcome trap_of(TrapKind kind) { return Trap{kind}; }

}  // namespace

TEST(Vm, ConstantReturn) {
  EvalReport r = run_text("fn f(){return 181;}");
  EXPECT_EQ(r.outcome, Outcome(Value::integer(181)));
  EXPECT_EQ(r.steps, 2u);
  EXPECT_EQ(count(r, Opcode::CONST), 1u);
  EXPECT_EQ(count(r, Opcode::RET), 1u);
  EXPECT_EQ(total(r.op_counts), 2u);
  // frame header only, no locals
  EXPECT_EQ(r.aux_peak_cells, 2u);
}

TEST(Vm, PythagoreanTriple) {
  const char* src = "fn ptriple(a,b,c){ return a*a + b*b == c*c; }";
  auto ints = [](std::int64_t a, std::int64_t b, std::int64_t c) {
    return std::vector<Value>{Value::integer(a), Value::integer(b), Value::integer(c)};
  };
  EXPECT_EQ(run_text(src, ints(3, 4, 5)).outcome, Outcome(Value::boolean(true)));
  EXPECT_EQ(run_text(src, ints(2, 3, 4)).outcome, Outcome(Value::boolean(false)));
}

TEST(Vm, HandCountedLoop) {
  // 2 (let) + 2 (init) + 4 tests x 4 + 3 x (4 body + 5 increment/jump) + 2 (return)
  EvalReport r = run_text("fn f(){ let s = 0; for i in range(3) { s = s + i; } return s; }");
  EXPECT_EQ(r.outcome, Outcome(Value::integer(3)));
  EXPECT_EQ(r.steps, 49u);
  EXPECT_EQ(count(r, Opcode::BRANCH), 4u);
  EXPECT_EQ(count(r, Opcode::ADD), 6u);
  EXPECT_EQ(count(r, Opcode::LT), 4u);
}

TEST(Vm, InfiniteLoopExhaustsSteps) {
  Budgets b;
  b.max_steps = 1000;
  EvalReport r = run_text("fn f(){ while true {} return 0; }", {}, b);
  EXPECT_EQ(r.outcome, Outcome(BudgetExhausted{BudgetKind::Steps}));
  EXPECT_EQ(r.steps, 1000u);
  EXPECT_EQ(total(r.op_counts), 1000u);
}

TEST(Vm, DepthAndCellBudgets) {
  Budgets b;
  b.max_call_depth = 50;
  EXPECT_EQ(run_text("fn f(n){ return f(n + 1); }", {Value::integer(0)}, b).outcome,
            Outcome(BudgetExhausted{BudgetKind::Depth}));
  Budgets c;
  c.max_cells = 1000;
  EXPECT_EQ(run_text("fn f(n){ let xs = make_list(n, 0); return 0; }", {Value::integer(5000)}, c)
                .outcome,
            Outcome(BudgetExhausted{BudgetKind::Cells}));
  Budgets zero;
  zero.max_steps = 0;
  EXPECT_THROW(run_text("fn f(){ return 0; }", {}, zero), ConfigError);
}

TEST(Vm, Traps) {
  auto two = [](std::int64_t a, std::int64_t b) {
    return std::vector<Value>{Value::integer(a), Value::integer(b)};
  };
  EXPECT_EQ(run_text("fn f(a,b){ return a / b; }", two(1, 0)).outcome,
            trap_of(TrapKind::DivisionByZero));
  EXPECT_EQ(run_text("fn f(a,b){ return a % b; }", two(1, 0)).outcome,
            trap_of(TrapKind::ModuloByZero));
  EXPECT_EQ(run_text("fn f(a,b){ return a * b; }", two(4611686018427387904, 2)).outcome,
            trap_of(TrapKind::IntegerOverflow));
  EXPECT_EQ(run_text("fn f(a,b){ return a / b; }", two(INT64_MIN, -1)).outcome,
            trap_of(TrapKind::IntegerOverflow));
  EXPECT_EQ(run_text("fn f(a,b){ assert a < b; return 0; }", two(2, 1)).outcome,
            trap_of(TrapKind::AssertionFailure));
  EXPECT_EQ(run_text("fn f(a,b){ let xs = [a]; return xs[b]; }", two(1, 1)).outcome,
            trap_of(TrapKind::IndexOutOfBounds));
  EXPECT_EQ(run_text("fn f(a,b){ let xs = [a]; return xs[-b]; }", two(1, 1)).outcome,
            trap_of(TrapKind::IndexOutOfBounds));
  EXPECT_EQ(run_text("fn f(a,b){ let xs = [a]; pop(xs); return pop(xs); }", two(1, 1)).outcome,
            trap_of(TrapKind::PopFromEmpty));
  EXPECT_EQ(run_text("fn f(a,b){ return a == (b < 3); }", two(1, 1)).outcome,
            trap_of(TrapKind::TypeError));
  EXPECT_EQ(run_text("fn f(a,b){ let xs = [a]; push(xs, a < b); return 0; }", two(1, 1)).outcome,
            trap_of(TrapKind::TypeError));
  EXPECT_EQ(run_text("fn f(a,b){ if a { return 1; } return 0; }", two(1, 1)).outcome,
            trap_of(TrapKind::TypeError));
}

TEST(Vm, OutcomeNames) {
  EXPECT_EQ(outcome_to_string(Trap{TrapKind::DivisionByZero}), "trap(division-by-zero)");
  EXPECT_EQ(outcome_to_string(BudgetExhausted{BudgetKind::Steps}), "budget_exhausted(steps)");
  EXPECT_EQ(outcome_to_string(Value::int_list({1, 2})), "[1, 2]");
}

TEST(Vm, ImplicitReturnZero) {
  EXPECT_EQ(run_text("fn f(){ let x = 1; }").outcome, Outcome(Value::integer(0)));
}

TEST(Vm, EntryErrors) {
  Program p = program_text("fn f(a){ return a; }");
  InstructionStream s = lower(p.ast);
  std::vector<Value> none;
  EXPECT_THROW(evaluate(s, "g", none), EvalError);
  EXPECT_THROW(evaluate(s, "f", none), EvalError);
}

TEST(Vm, AuxMemoryAccounting) {
  // frame: 2 + 2 slots; new list: 1 + 10. The 100-element input is not counted.
  std::vector<Value> args{Value::int_list(std::vector<std::int64_t>(100, 7))};
  EvalReport r = run_text("fn f(xs){ let ys = make_list(10, 0); return len(xs); }", args);
  EXPECT_EQ(r.outcome, Outcome(Value::integer(100)));
  EXPECT_EQ(r.aux_peak_cells, 15u);

  // a call adds its own frame on top: 2 + 1 (caller) + 2 + 1 (callee)
  EvalReport c = run_text("fn f(a){ return g(a); } fn g(b){ return b; }", {Value::integer(1)});
  EXPECT_EQ(c.aux_peak_cells, 6u);
}

TEST(Vm, ListsAliasByReference) {
  EvalReport r = run_text("fn f(){ let a = [1, 2]; let b = a; b[0] = 9; return a; }");
  EXPECT_EQ(r.outcome, Outcome(Value::int_list({9, 2})));
  EvalReport p = run_text("fn f(xs){ push(xs, 4); return xs; }", {Value::int_list({1})});
  EXPECT_EQ(p.outcome, Outcome(Value::int_list({1, 4})));
}

TEST(Vm, ShortCircuitSkipsRightOperand) {
  EXPECT_EQ(run_text("fn f(a){ return a != 0 && 10 / a > 1; }", {Value::integer(0)}).outcome,
            Outcome(Value::boolean(false)));
  EXPECT_EQ(run_text("fn f(a){ return a == 0 || 10 / a > 1; }", {Value::integer(0)}).outcome,
            Outcome(Value::boolean(true)));
}

TEST(Vm, RangeVariants) {
  const char* src =
      "fn f(a, b){ let s = []; for i in range(a, b, b - a - 3) { push(s, i); }"
      " for j in range(b, a, -2) { push(s, j); }"
      " for k in range(b, a, a - b + 3) { push(s, k); } return s; }";
  EvalReport r = run_text(src, {Value::integer(1), Value::integer(7)});
  EXPECT_EQ(r.outcome, Outcome(Value::int_list({1, 4, 7, 5, 3, 7, 4})));
}

TEST(Vm, DeterministicReports) {
  Program p = program_file("sort/quick_v0_baseline.alg");
  InstructionStream s = lower(p.ast);
  std::vector<Value> args{Value::int_list({5, 3, 9, 1, 1, 8, 2})};
  EvalReport a = evaluate(s, p.entry, args);
  EvalReport b = evaluate(s, p.entry, args);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.outcome, Outcome(Value::int_list({1, 1, 2, 3, 5, 8, 9})));
  EXPECT_EQ(a.steps, total(a.op_counts));
}

TEST(Vm, MatchesReferenceInterpreter) {
  ProgramGen gen(2024);
  int completed = 0, trapped = 0;
  for (int k = 0; k < 600; ++k) {
    std::string text = gen.program();
    Program p = program_text(text);
    InstructionStream s = lower(p.ast);
    for (int t = 0; t < 3; ++t) {
      std::vector<Value> args = gen.arguments();
      EvalReport vm = evaluate(s, "f", args);
      RefOutcome ref = reference_eval(p.ast, "f", args);
      ASSERT_TRUE(same_outcome(ref, vm.outcome))
          << text << "\nvm: " << outcome_to_string(vm.outcome);
      ASSERT_EQ(vm.steps, total(vm.op_counts));
      ASSERT_GE(vm.aux_peak_cells, 2u);
      if (vm.completed()) ++completed;
      else ++trapped;
    }
  }
  // the generator must exercise both paths
  EXPECT_GT(completed, 300);
  EXPECT_GT(trapped, 50);
}
