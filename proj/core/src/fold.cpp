#include "emoc/arith.hpp"
#include "emoc/lang.hpp"

namespace emoc {

bool is_pure(const Node& e) {
  switch (e.kind) {
    case NodeKind::IntLit:
    case NodeKind::BoolLit:
    case NodeKind::Var:
      return true;
    case NodeKind::Unary:
    case NodeKind::Binary:
    case NodeKind::Index:
      for (const auto& c : e.children) {
        if (!is_pure(c)) return false;
      }
      return true;
    case NodeKind::Builtin:
      return e.name == "len" && is_pure(e.children[0]);
    default:
      return false;
  }
}

bool is_trap_free(const Node& e) {
  switch (e.kind) {
    case NodeKind::IntLit:
    case NodeKind::BoolLit:
    case NodeKind::Var:
      return true;
    case NodeKind::Unary:
      return is_trap_free(e.children[0]);
    case NodeKind::Binary:
      if (e.op == Op::Div || e.op == Op::Mod) return false;
      return is_trap_free(e.children[0]) && is_trap_free(e.children[1]);
    default:
      return false;
  }
}

std::optional<Scalar> fold_constant(const Node& e) {
  switch (e.kind) {
    case NodeKind::IntLit:
      return Scalar{false, e.value};
    case NodeKind::BoolLit:
      return Scalar{true, e.value};
    case NodeKind::Unary: {
      auto v = fold_constant(e.children[0]);
      if (!v) return std::nullopt;
      if (e.op == Op::Not) {
        if (!v->is_bool) return std::nullopt;
        return Scalar{true, v->value ? 0 : 1};
      }
      if (v->is_bool) return std::nullopt;
      auto r = arith::neg(v->value);
      if (!r) return std::nullopt;
      return Scalar{false, *r};
    }
    case NodeKind::Binary: {
      auto a = fold_constant(e.children[0]);
      if (!a) return std::nullopt;
      auto b = fold_constant(e.children[1]);
      if (!b) return std::nullopt;
      if (e.op == Op::And || e.op == Op::Or) {
        if (!a->is_bool || !b->is_bool) return std::nullopt;
        bool r = e.op == Op::And ? (a->value && b->value) : (a->value || b->value);
        return Scalar{true, r ? 1 : 0};
      }
      if (e.op == Op::Eq || e.op == Op::Ne) {
        if (a->is_bool != b->is_bool) return std::nullopt;
        bool same = a->value == b->value;
        return Scalar{true, (e.op == Op::Eq) == same ? 1 : 0};
      }
      if (a->is_bool || b->is_bool) return std::nullopt;
      std::int64_t x = a->value;
      std::int64_t y = b->value;
      std::optional<std::int64_t> r;
      switch (e.op) {
        case Op::Add: r = arith::add(x, y); break;
        case Op::Sub: r = arith::sub(x, y); break;
        case Op::Mul: r = arith::mul(x, y); break;
        case Op::Div: if (y != 0) r = arith::div(x, y); break;
        case Op::Mod: if (y != 0) r = arith::mod(x, y); break;
        case Op::Lt: return Scalar{true, x < y};
        case Op::Le: return Scalar{true, x <= y};
        case Op::Gt: return Scalar{true, x > y};
        case Op::Ge: return Scalar{true, x >= y};
        default: break;
      }
      if (!r) return std::nullopt;
      return Scalar{false, *r};
    }
    default:
      return std::nullopt;
  }
}

}  // namespace emoc
