#include "emoc/vm.hpp"

#include <memory>
#include <vector>

#include "emoc/arith.hpp"
#include "emoc/error.hpp"

namespace emoc {

void Budgets::validate() const {
  if (max_steps == 0 || max_cells == 0 || max_call_depth == 0)
    throw ConfigError("budgets must be strictly positive");
}

std::string_view trap_name(TrapKind kind) {
  switch (kind) {
    case TrapKind::DivisionByZero: return "division-by-zero";
    case TrapKind::ModuloByZero: return "modulo-by-zero";
    case TrapKind::IndexOutOfBounds: return "index-out-of-bounds";
    case TrapKind::IntegerOverflow: return "integer-overflow";
    case TrapKind::AssertionFailure: return "assertion-failure";
    case TrapKind::PopFromEmpty: return "pop-from-empty";
    case TrapKind::TypeError: return "type-error";
  }
  return "?";
}

std::string_view budget_name(BudgetKind kind) {
  switch (kind) {
    case BudgetKind::Steps: return "steps";
    case BudgetKind::Cells: return "cells";
    case BudgetKind::Depth: return "depth";
  }
  return "?";
}

std::string outcome_to_string(const Outcome& outcome) {
  if (const auto* v = std::get_if<Value>(&outcome)) return v->to_string();
  if (const auto* t = std::get_if<Trap>(&outcome)) return "trap(" + std::string(trap_name(t->kind)) + ")";
  return "budget_exhausted(" + std::string(budget_name(std::get<BudgetExhausted>(outcome).which)) + ")";
}

namespace {

enum Tag : std::uint8_t { kInt, kBool, kList };

struct ListObj;

struct Cell {
  Tag tag = kInt;
  union {
    std::int64_t i = 0;
    ListObj* list;
  };

  static Cell integer(std::int64_t v) {
    Cell c;
    c.tag = kInt;
    c.i = v;
    return c;
  }
  static Cell boolean(bool b) {
    Cell c;
    c.tag = kBool;
    c.i = b ? 1 : 0;
    return c;
  }
};

struct ListObj {
  std::uint64_t refs = 0;
  std::vector<Cell> items;
};

struct Frame {
  const FunctionCode* fn;
  std::size_t return_pc;
  std::size_t base;
};

// Raised internally to unwind the dispatch loop; never escapes evaluate().
struct Stop {
  Outcome outcome;
};

class Machine {
 public:
  Machine(const InstructionStream& stream, const Budgets& budgets)
      : stream_(stream), budgets_(budgets) {
    stack_.reserve(256);
    locals_.reserve(1024);
  }

  EvalReport run(std::size_t entry, std::span<const Value> args) {
    EvalReport report;
    std::uint64_t input_cells = 0;

    try {
      for (const auto& a : args) stack_.push_back(materialize(a));
      input_cells = live_;
      enter(stream_.functions[entry], 0);
      report.outcome = loop();
    } catch (Stop& stop) {
      report.outcome = std::move(stop.outcome);
    }

    report.steps = steps_;
    report.op_counts = counts_;
    report.aux_peak_cells = peak_ > input_cells ? peak_ - input_cells : 0;
    return report;
  }

 private:
  [[noreturn]] static void trap(TrapKind kind) { throw Stop{Trap{kind}}; }
  [[noreturn]] static void exhausted(BudgetKind which) { throw Stop{BudgetExhausted{which}}; }

  void grow(std::uint64_t cells) {
    live_ += cells;
    if (live_ > peak_) peak_ = live_;
    if (live_ > budgets_.max_cells) exhausted(BudgetKind::Cells);
  }

  ListObj* new_list() {
    if (!free_.empty()) {
      ListObj* l = free_.back();
      free_.pop_back();
      l->refs = 1;
      return l;
    }
    pool_.push_back(std::make_unique<ListObj>());
    pool_.back()->refs = 1;
    return pool_.back().get();
  }

  static void retain(const Cell& c) {
    if (c.tag == kList) ++c.list->refs;
  }

  void release(const Cell& c) {
    if (c.tag != kList || --c.list->refs != 0) return;
    std::vector<ListObj*> dead{c.list};
    while (!dead.empty()) {
      ListObj* l = dead.back();
      dead.pop_back();
      live_ -= 1 + l->items.size();
      for (const auto& item : l->items) {
        if (item.tag == kList && --item.list->refs == 0) dead.push_back(item.list);
      }
      l->items.clear();
      free_.push_back(l);
    }
  }

  Cell materialize(const Value& v) {
    switch (v.kind()) {
      case Value::Kind::Int:
        return Cell::integer(v.as_int());
      case Value::Kind::Bool:
        return Cell::boolean(v.as_bool());
      case Value::Kind::List: {
        Cell c;
        c.tag = kList;
        c.list = new_list();
        grow(1 + v.items().size());
        c.list->items.reserve(v.items().size());
        for (const auto& item : v.items()) c.list->items.push_back(materialize(item));
        return c;
      }
    }
    return {};
  }

  Value extract(const Cell& c, int depth = 0) const {
    switch (c.tag) {
      case kInt: return Value::integer(c.i);
      case kBool: return Value::boolean(c.i != 0);
      case kList: {
        if (depth > 10'000) trap(TrapKind::TypeError);
        std::vector<Value> items;
        items.reserve(c.list->items.size());
        for (const auto& item : c.list->items) items.push_back(extract(item, depth + 1));
        return Value::list(std::move(items));
      }
    }
    return {};
  }

  static bool same_kind(const ListObj& l, const Cell& v, std::size_t skip = SIZE_MAX) {
    for (std::size_t i = 0; i < l.items.size() && i < 2; ++i) {
      if (i == skip) continue;
      return l.items[i].tag == v.tag;
    }
    return true;
  }

  bool equal(const Cell& a, const Cell& b) const {
    if (a.tag != b.tag) trap(TrapKind::TypeError);
    if (a.tag != kList) return a.i == b.i;
    if (a.list == b.list) return true;
    const auto& x = a.list->items;
    const auto& y = b.list->items;
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].tag != y[i].tag) return false;
      if (!equal(x[i], y[i])) return false;
    }
    return true;
  }

  // Moves `arity` arguments from the operand stack into a fresh frame.
  void enter(const FunctionCode& fn, std::size_t return_pc) {
    if (frames_.size() >= budgets_.max_call_depth) exhausted(BudgetKind::Depth);
    std::size_t base = locals_.size();
    locals_.resize(base + fn.slot_count);
    std::size_t first_arg = stack_.size() - fn.arity;
    for (std::size_t k = 0; k < fn.arity; ++k) locals_[base + k] = stack_[first_arg + k];
    stack_.resize(first_arg);
    frames_.push_back(Frame{&fn, return_pc, base});
    grow(2 + fn.slot_count);
  }

  Outcome loop() {
    const FunctionCode* fn = frames_.back().fn;
    const Instruction* code = fn->code.data();
    Cell* locals = locals_.data() + frames_.back().base;
    std::size_t pc = 0;
    const std::uint64_t max_steps = budgets_.max_steps;

    auto pop = [&]() -> Cell {
      Cell c = stack_.back();
      stack_.pop_back();
      return c;
    };
    auto pop_int = [&]() -> std::int64_t {
      Cell c = pop();
      if (c.tag != kInt) {
        release(c);
        trap(TrapKind::TypeError);
      }
      return c.i;
    };
    auto pop_bool = [&]() -> bool {
      Cell c = pop();
      if (c.tag != kBool) {
        release(c);
        trap(TrapKind::TypeError);
      }
      return c.i != 0;
    };
    auto pop_list = [&]() -> Cell {
      Cell c = pop();
      if (c.tag != kList) trap(TrapKind::TypeError);
      return c;
    };
    auto checked = [](std::optional<std::int64_t> r) {
      if (!r) trap(TrapKind::IntegerOverflow);
      return *r;
    };

    for (;;) {
      if (steps_ == max_steps) exhausted(BudgetKind::Steps);
      const Instruction& ins = code[pc++];
      ++steps_;
      ++counts_[static_cast<std::size_t>(ins.op)];

      switch (ins.op) {
        case Opcode::CONST:
          stack_.push_back(ins.flag ? Cell::boolean(ins.arg != 0) : Cell::integer(ins.arg));
          break;
        case Opcode::LOAD: {
          const Cell& c = locals[ins.arg];
          retain(c);
          stack_.push_back(c);
          break;
        }
        case Opcode::STORE: {
          Cell& slot = locals[ins.arg];
          Cell old = slot;
          slot = pop();
          release(old);
          break;
        }
        case Opcode::ADD: {
          std::int64_t b = pop_int(), a = pop_int();
          stack_.push_back(Cell::integer(checked(arith::add(a, b))));
          break;
        }
        case Opcode::SUB: {
          std::int64_t b = pop_int(), a = pop_int();
          stack_.push_back(Cell::integer(checked(arith::sub(a, b))));
          break;
        }
        case Opcode::MUL: {
          std::int64_t b = pop_int(), a = pop_int();
          stack_.push_back(Cell::integer(checked(arith::mul(a, b))));
          break;
        }
        case Opcode::DIV: {
          std::int64_t b = pop_int(), a = pop_int();
          if (b == 0) trap(TrapKind::DivisionByZero);
          stack_.push_back(Cell::integer(checked(arith::div(a, b))));
          break;
        }
        case Opcode::MOD: {
          std::int64_t b = pop_int(), a = pop_int();
          if (b == 0) trap(TrapKind::ModuloByZero);
          stack_.push_back(Cell::integer(checked(arith::mod(a, b))));
          break;
        }
        case Opcode::NEG: {
          std::int64_t a = pop_int();
          stack_.push_back(Cell::integer(checked(arith::neg(a))));
          break;
        }
        case Opcode::EQ:
        case Opcode::NE: {
          Cell b = pop(), a = pop();
          bool eq = equal(a, b);
          release(a);
          release(b);
          stack_.push_back(Cell::boolean(ins.op == Opcode::EQ ? eq : !eq));
          break;
        }
        case Opcode::LT: {
          std::int64_t b = pop_int(), a = pop_int();
          stack_.push_back(Cell::boolean(a < b));
          break;
        }
        case Opcode::LE: {
          std::int64_t b = pop_int(), a = pop_int();
          stack_.push_back(Cell::boolean(a <= b));
          break;
        }
        case Opcode::GT: {
          std::int64_t b = pop_int(), a = pop_int();
          stack_.push_back(Cell::boolean(a > b));
          break;
        }
        case Opcode::GE: {
          std::int64_t b = pop_int(), a = pop_int();
          stack_.push_back(Cell::boolean(a >= b));
          break;
        }
        case Opcode::NOT:
          stack_.push_back(Cell::boolean(!pop_bool()));
          break;
        case Opcode::AND:
        case Opcode::OR: {
          const Cell& top = stack_.back();
          if (top.tag != kBool) trap(TrapKind::TypeError);
          bool decides = ins.op == Opcode::AND ? top.i == 0 : top.i != 0;
          if (decides) pc = static_cast<std::size_t>(ins.arg);
          else stack_.pop_back();
          break;
        }
        case Opcode::INDEX_LOAD: {
          std::int64_t idx = pop_int();
          Cell l = pop_list();
          auto& items = l.list->items;
          if (idx < 0 || static_cast<std::uint64_t>(idx) >= items.size()) {
            release(l);
            trap(TrapKind::IndexOutOfBounds);
          }
          Cell item = items[static_cast<std::size_t>(idx)];
          retain(item);
          release(l);
          stack_.push_back(item);
          break;
        }
        case Opcode::INDEX_STORE: {
          Cell v = pop();
          std::int64_t idx = pop_int();
          Cell l = pop_list();
          auto& items = l.list->items;
          if (idx < 0 || static_cast<std::uint64_t>(idx) >= items.size()) {
            release(v);
            release(l);
            trap(TrapKind::IndexOutOfBounds);
          }
          auto pos = static_cast<std::size_t>(idx);
          if (items.size() > 1 && !same_kind(*l.list, v, pos)) trap(TrapKind::TypeError);
          Cell old = items[pos];
          items[pos] = v;
          release(old);
          release(l);
          break;
        }
        case Opcode::LIST_NEW: {
          Cell c;
          c.tag = kList;
          if (ins.flag) {
            Cell fill = pop();
            std::int64_t n = pop_int();
            if (n < 0) n = 0;
            if (live_ + 1 + static_cast<std::uint64_t>(n) > budgets_.max_cells) {
              release(fill);
              exhausted(BudgetKind::Cells);
            }
            c.list = new_list();
            grow(1 + static_cast<std::uint64_t>(n));
            c.list->items.assign(static_cast<std::size_t>(n), fill);
            if (fill.tag == kList) fill.list->refs += static_cast<std::uint64_t>(n);
            release(fill);
          } else {
            auto n = static_cast<std::size_t>(ins.arg);
            std::size_t first = stack_.size() - n;
            for (std::size_t k = first + 1; k < stack_.size(); ++k) {
              if (stack_[k].tag != stack_[first].tag) trap(TrapKind::TypeError);
            }
            c.list = new_list();
            grow(1 + n);
            c.list->items.assign(stack_.begin() + static_cast<std::ptrdiff_t>(first), stack_.end());
            stack_.resize(first);
          }
          stack_.push_back(c);
          break;
        }
        case Opcode::LIST_PUSH: {
          Cell v = pop();
          Cell l = pop_list();
          if (!same_kind(*l.list, v)) trap(TrapKind::TypeError);
          grow(1);
          l.list->items.push_back(v);
          auto len = static_cast<std::int64_t>(l.list->items.size());
          release(l);
          stack_.push_back(Cell::integer(len));
          break;
        }
        case Opcode::LIST_POP: {
          Cell l = pop_list();
          auto& items = l.list->items;
          if (items.empty()) {
            release(l);
            trap(TrapKind::PopFromEmpty);
          }
          Cell v = items.back();
          items.pop_back();
          live_ -= 1;
          release(l);
          stack_.push_back(v);
          break;
        }
        case Opcode::LIST_LEN: {
          Cell l = pop_list();
          auto len = static_cast<std::int64_t>(l.list->items.size());
          release(l);
          stack_.push_back(Cell::integer(len));
          break;
        }
        case Opcode::JUMP:
          pc = static_cast<std::size_t>(ins.arg);
          break;
        case Opcode::BRANCH:
          if (!pop_bool()) {
            if (ins.arg == kAssertTarget) trap(TrapKind::AssertionFailure);
            pc = static_cast<std::size_t>(ins.arg);
          }
          break;
        case Opcode::CALL: {
          const FunctionCode& callee = stream_.functions[static_cast<std::size_t>(ins.arg)];
          enter(callee, pc);
          fn = &callee;
          code = fn->code.data();
          locals = locals_.data() + frames_.back().base;
          pc = 0;
          break;
        }
        case Opcode::RET: {
          Cell result = pop();
          Frame frame = frames_.back();
          frames_.pop_back();
          for (std::size_t k = frame.base; k < locals_.size(); ++k) release(locals_[k]);
          locals_.resize(frame.base);
          live_ -= 2 + frame.fn->slot_count;
          if (frames_.empty()) {
            Value v = extract(result);
            release(result);
            return v;
          }
          stack_.push_back(result);
          fn = frames_.back().fn;
          code = fn->code.data();
          locals = locals_.data() + frames_.back().base;
          pc = frame.return_pc;
          break;
        }
        case Opcode::POP_TOP:
          release(pop());
          break;
      }
    }
  }

  const InstructionStream& stream_;
  const Budgets& budgets_;
  std::vector<Cell> stack_;
  std::vector<Cell> locals_;
  std::vector<Frame> frames_;
  std::vector<std::unique_ptr<ListObj>> pool_;
  std::vector<ListObj*> free_;
  std::uint64_t live_ = 0;
  std::uint64_t peak_ = 0;
  std::uint64_t steps_ = 0;
  OpCounts counts_{};
};

}  // namespace

EvalReport evaluate(const InstructionStream& stream, std::string_view entry,
                    std::span<const Value> args, const Budgets& budgets) {
  budgets.validate();
  auto index = stream.find(entry);
  if (!index) throw EvalError("entry function '" + std::string(entry) + "' is not defined");
  const auto& fn = stream.functions[*index];
  if (fn.arity != args.size())
    throw EvalError("entry function '" + std::string(entry) + "' expects " +
                    std::to_string(fn.arity) + " argument(s), got " +
                    std::to_string(args.size()));
  Machine machine(stream, budgets);
  return machine.run(*index, args);
}

}  // namespace emoc
