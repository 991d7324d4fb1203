#include "emoc/lang.hpp"

namespace emoc {
namespace {

int precedence(const Node& e) {
  switch (e.kind) {
    case NodeKind::Binary:
      switch (e.op) {
        case Op::Or: return 1;
        case Op::And: return 2;
        case Op::Eq:
        case Op::Ne: return 3;
        case Op::Lt:
        case Op::Le:
        case Op::Gt:
        case Op::Ge: return 4;
        case Op::Add:
        case Op::Sub: return 5;
        default: return 6;
      }
    case NodeKind::Unary: return 7;
    case NodeKind::IntLit: return e.value < 0 ? 7 : 9;
    default: return 9;
  }
}

void expr(const Node& e, std::string& out);

void wrapped(const Node& e, bool parens, std::string& out) {
  if (parens) out += '(';
  expr(e, out);
  if (parens) out += ')';
}

void args(const std::vector<Node>& list, std::string& out) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ", ";
    expr(list[i], out);
  }
}

void expr(const Node& e, std::string& out) {
  switch (e.kind) {
    case NodeKind::IntLit:
      out += std::to_string(e.value);
      break;
    case NodeKind::BoolLit:
      out += e.value ? "true" : "false";
      break;
    case NodeKind::ListLit:
      out += '[';
      args(e.children, out);
      out += ']';
      break;
    case NodeKind::Var:
      out += e.name;
      break;
    case NodeKind::Unary:
      out += op_symbol(e.op);
      wrapped(e.children[0], precedence(e.children[0]) < 7, out);
      break;
    case NodeKind::Binary: {
      int p = precedence(e);
      wrapped(e.children[0], precedence(e.children[0]) < p, out);
      out += ' ';
      out += op_symbol(e.op);
      out += ' ';
      wrapped(e.children[1], precedence(e.children[1]) <= p, out);
      break;
    }
    case NodeKind::Index:
      wrapped(e.children[0], precedence(e.children[0]) < 8, out);
      out += '[';
      expr(e.children[1], out);
      out += ']';
      break;
    case NodeKind::Call:
    case NodeKind::Builtin:
      out += e.name;
      out += '(';
      args(e.children, out);
      out += ')';
      break;
    default:
      out += "<";
      out += kind_name(e.kind);
      out += ">";
  }
}

void indent(int depth, std::string& out) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

void block_body(const Node& b, int depth, std::string& out);

void statement(const Node& s, int depth, std::string& out) {
  indent(depth, out);
  switch (s.kind) {
    case NodeKind::Let:
      out += "let " + s.name + " = ";
      expr(s.children[0], out);
      out += ";\n";
      break;
    case NodeKind::Assign:
      out += s.name + " = ";
      expr(s.children[0], out);
      out += ";\n";
      break;
    case NodeKind::IndexAssign:
      out += s.name + "[";
      expr(s.children[0], out);
      out += "] = ";
      expr(s.children[1], out);
      out += ";\n";
      break;
    case NodeKind::If:
      out += "if ";
      expr(s.children[0], out);
      out += " {\n";
      block_body(s.children[1], depth + 1, out);
      indent(depth, out);
      out += "}";
      if (s.children.size() > 2) {
        out += " else {\n";
        block_body(s.children[2], depth + 1, out);
        indent(depth, out);
        out += "}";
      }
      out += "\n";
      break;
    case NodeKind::While:
      out += "while ";
      expr(s.children[0], out);
      out += " {\n";
      block_body(s.children[1], depth + 1, out);
      indent(depth, out);
      out += "}\n";
      break;
    case NodeKind::For: {
      out += "for " + s.name + " in range(";
      std::vector<Node> range(s.children.begin(), s.children.end() - 1);
      args(range, out);
      out += ") {\n";
      block_body(s.children.back(), depth + 1, out);
      indent(depth, out);
      out += "}\n";
      break;
    }
    case NodeKind::Return:
      out += "return ";
      expr(s.children[0], out);
      out += ";\n";
      break;
    case NodeKind::Assert:
      out += "assert ";
      expr(s.children[0], out);
      out += ";\n";
      break;
    case NodeKind::ExprStmt:
      expr(s.children[0], out);
      out += ";\n";
      break;
    default:
      out += "<";
      out += kind_name(s.kind);
      out += ">\n";
  }
}

void block_body(const Node& b, int depth, std::string& out) {
  for (const auto& s : b.children) statement(s, depth, out);
}

}  // namespace

std::string render_expr(const Node& e) {
  std::string out;
  expr(e, out);
  return out;
}

SourceUnit render(const Ast& ast) {
  std::string out;
  for (std::size_t i = 0; i < ast.functions.size(); ++i) {
    const Node& fn = ast.functions[i];
    if (i) out += '\n';
    out += "fn " + fn.name + "(";
    bool first = true;
    for (const auto& p : fn.children) {
      if (p.kind != NodeKind::Param) continue;
      if (!first) out += ", ";
      out += p.name;
      first = false;
    }
    out += ") {\n";
    block_body(fn.children.back(), 1, out);
    out += "}\n";
  }
  return SourceUnit{std::move(out), "<render>"};
}

}  // namespace emoc
