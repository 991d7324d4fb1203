#include "emoc/bytecode.hpp"
#include "emoc/error.hpp"

namespace emoc {
namespace {

class FunctionLowering {
 public:
  explicit FunctionLowering(const Node& fn) : fn_(fn) {
    out_.name = fn.name;
    out_.arity = static_cast<std::uint32_t>(fn.children.size() - 1);
    next_hidden_ = named_slot_count(fn);
  }

  FunctionCode run() {
    const Node& body = fn_.children.back();
    block(body);
    if (body.children.empty() || body.children.back().kind != NodeKind::Return) {
      emit(Opcode::CONST, 0);
      emit(Opcode::RET);
    }
    out_.slot_count = static_cast<std::uint32_t>(next_hidden_);
    return std::move(out_);
  }

 private:
  std::size_t emit(Opcode op, std::int64_t arg = 0, std::uint8_t flag = 0) {
    out_.code.push_back(Instruction{op, flag, arg});
    return out_.code.size() - 1;
  }

  std::int64_t here() const { return static_cast<std::int64_t>(out_.code.size()); }
  void patch(std::size_t at) { out_.code[at].arg = here(); }

  void constant(const Scalar& s) { emit(Opcode::CONST, s.value, s.is_bool ? 1 : 0); }

  void expr(const Node& e) {
    if (auto folded = fold_constant(e)) {
      constant(*folded);
      return;
    }
    switch (e.kind) {
      case NodeKind::ListLit:
        for (const auto& c : e.children) expr(c);
        emit(Opcode::LIST_NEW, static_cast<std::int64_t>(e.children.size()));
        return;
      case NodeKind::Var:
        emit(Opcode::LOAD, e.slot);
        return;
      case NodeKind::Unary:
        expr(e.children[0]);
        emit(e.op == Op::Neg ? Opcode::NEG : Opcode::NOT);
        return;
      case NodeKind::Binary: {
        if (e.op == Op::And || e.op == Op::Or) {
          expr(e.children[0]);
          std::size_t jump = emit(e.op == Op::And ? Opcode::AND : Opcode::OR);
          expr(e.children[1]);
          patch(jump);
          return;
        }
        expr(e.children[0]);
        expr(e.children[1]);
        emit(binary_opcode(e.op));
        return;
      }
      case NodeKind::Index:
        expr(e.children[0]);
        expr(e.children[1]);
        emit(Opcode::INDEX_LOAD);
        return;
      case NodeKind::Call:
        for (const auto& c : e.children) expr(c);
        emit(Opcode::CALL, e.slot);
        return;
      case NodeKind::Builtin:
        for (const auto& c : e.children) expr(c);
        if (e.name == "len") emit(Opcode::LIST_LEN);
        else if (e.name == "push") emit(Opcode::LIST_PUSH);
        else if (e.name == "pop") emit(Opcode::LIST_POP);
        else emit(Opcode::LIST_NEW, 0, 1);
        return;
      default:
        throw Error("cannot lower " + std::string(kind_name(e.kind)) + " as an expression");
    }
  }

  static Opcode binary_opcode(Op op) {
    switch (op) {
      case Op::Add: return Opcode::ADD;
      case Op::Sub: return Opcode::SUB;
      case Op::Mul: return Opcode::MUL;
      case Op::Div: return Opcode::DIV;
      case Op::Mod: return Opcode::MOD;
      case Op::Eq: return Opcode::EQ;
      case Op::Ne: return Opcode::NE;
      case Op::Lt: return Opcode::LT;
      case Op::Le: return Opcode::LE;
      case Op::Gt: return Opcode::GT;
      case Op::Ge: return Opcode::GE;
      default: throw Error("not a binary operator");
    }
  }

  void block(const Node& b) {
    for (const auto& s : b.children) statement(s);
  }

  void statement(const Node& s) {
    switch (s.kind) {
      case NodeKind::Let:
      case NodeKind::Assign:
        expr(s.children[0]);
        emit(Opcode::STORE, s.slot);
        break;
      case NodeKind::IndexAssign:
        emit(Opcode::LOAD, s.slot);
        expr(s.children[0]);
        expr(s.children[1]);
        emit(Opcode::INDEX_STORE);
        break;
      case NodeKind::If: {
        expr(s.children[0]);
        std::size_t to_else = emit(Opcode::BRANCH);
        block(s.children[1]);
        if (s.children.size() > 2) {
          std::size_t to_end = emit(Opcode::JUMP);
          patch(to_else);
          block(s.children[2]);
          patch(to_end);
        } else {
          patch(to_else);
        }
        break;
      }
      case NodeKind::While: {
        std::int64_t top = here();
        auto cond = fold_constant(s.children[0]);
        if (cond && cond->is_bool && cond->value) {
          block(s.children[1]);
          emit(Opcode::JUMP, top);
          break;
        }
        expr(s.children[0]);
        std::size_t exit = emit(Opcode::BRANCH);
        block(s.children[1]);
        emit(Opcode::JUMP, top);
        patch(exit);
        break;
      }
      case NodeKind::For:
        for_loop(s);
        break;
      case NodeKind::Return:
        expr(s.children[0]);
        emit(Opcode::RET);
        break;
      case NodeKind::Assert: {
        auto cond = fold_constant(s.children[0]);
        if (cond && cond->is_bool && cond->value) break;
        expr(s.children[0]);
        emit(Opcode::BRANCH, kAssertTarget);
        break;
      }
      case NodeKind::ExprStmt:
        expr(s.children[0]);
        emit(Opcode::POP_TOP);
        break;
      default:
        throw Error("cannot lower " + std::string(kind_name(s.kind)) + " as a statement");
    }
  }

  // for v in range(start, stop, step): stop and a non-constant step are
  // evaluated once into hidden slots. A constant step fixes the comparison
  // direction at compile time; otherwise the sign is tested every iteration.
  void for_loop(const Node& s) {
    std::size_t nargs = s.children.size() - 1;
    const Node* start = nargs >= 2 ? &s.children[0] : nullptr;
    const Node& stop = nargs >= 2 ? s.children[1] : s.children[0];
    const Node* step = nargs == 3 ? &s.children[2] : nullptr;

    if (start) expr(*start);
    else emit(Opcode::CONST, 0);
    emit(Opcode::STORE, s.slot);

    auto stop_const = fold_constant(stop);
    std::int64_t stop_slot = -1;
    if (!stop_const) {
      stop_slot = next_hidden_++;
      expr(stop);
      emit(Opcode::STORE, stop_slot);
    }

    std::optional<Scalar> step_const = step ? fold_constant(*step) : Scalar{false, 1};
    if (step_const && step_const->is_bool) step_const.reset();
    std::int64_t step_slot = -1;
    if (!step_const) {
      step_slot = next_hidden_++;
      expr(*step);
      emit(Opcode::STORE, step_slot);
    }

    auto load_stop = [&] {
      if (stop_const) constant(*stop_const);
      else emit(Opcode::LOAD, stop_slot);
    };

    std::int64_t top = here();
    std::size_t exit;
    if (step_const) {
      emit(Opcode::LOAD, s.slot);
      load_stop();
      emit(step_const->value > 0 ? Opcode::LT : Opcode::GT);
      exit = emit(Opcode::BRANCH);
    } else {
      emit(Opcode::LOAD, step_slot);
      emit(Opcode::CONST, 0);
      emit(Opcode::GT);
      std::size_t to_down = emit(Opcode::BRANCH);
      emit(Opcode::LOAD, s.slot);
      load_stop();
      emit(Opcode::LT);
      std::size_t to_test = emit(Opcode::JUMP);
      patch(to_down);
      emit(Opcode::LOAD, s.slot);
      load_stop();
      emit(Opcode::GT);
      patch(to_test);
      exit = emit(Opcode::BRANCH);
    }

    block(s.children.back());

    emit(Opcode::LOAD, s.slot);
    if (step_const) constant(*step_const);
    else emit(Opcode::LOAD, step_slot);
    emit(Opcode::ADD);
    emit(Opcode::STORE, s.slot);
    emit(Opcode::JUMP, top);
    patch(exit);
  }

  const Node& fn_;
  FunctionCode out_;
  std::int32_t next_hidden_ = 0;
};

}  // namespace

InstructionStream lower(const Ast& ast) {
  InstructionStream stream;
  stream.functions.reserve(ast.functions.size());
  for (const auto& fn : ast.functions) stream.functions.push_back(FunctionLowering(fn).run());
  return stream;
}

}  // namespace emoc
