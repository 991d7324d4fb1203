#include <set>

#include "emoc/error.hpp"
#include "emoc/lang.hpp"
#include "lexer.hpp"

namespace emoc {

using detail::Tok;
using detail::Token;

std::string_view kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Function: return "Function";
    case NodeKind::Param: return "Param";
    case NodeKind::Block: return "Block";
    case NodeKind::Let: return "Let";
    case NodeKind::Assign: return "Assign";
    case NodeKind::IndexAssign: return "IndexAssign";
    case NodeKind::If: return "If";
    case NodeKind::While: return "While";
    case NodeKind::For: return "For";
    case NodeKind::Return: return "Return";
    case NodeKind::Assert: return "Assert";
    case NodeKind::ExprStmt: return "ExprStmt";
    case NodeKind::IntLit: return "IntLit";
    case NodeKind::BoolLit: return "BoolLit";
    case NodeKind::ListLit: return "ListLit";
    case NodeKind::Var: return "Var";
    case NodeKind::Unary: return "Unary";
    case NodeKind::Binary: return "Binary";
    case NodeKind::Index: return "Index";
    case NodeKind::Call: return "Call";
    case NodeKind::Builtin: return "Builtin";
  }
  return "?";
}

std::string_view op_symbol(Op op) {
  switch (op) {
    case Op::None: return "";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Mod: return "%";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Neg: return "-";
    case Op::Not: return "!";
  }
  return "?";
}

const Node* Ast::find_function(std::string_view name) const {
  for (const auto& fn : functions) {
    if (fn.name == name) return &fn;
  }
  return nullptr;
}

namespace {

const std::set<std::string, std::less<>> kBuiltins = {"len", "push", "pop", "make_list"};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Ast program() {
    Ast ast;
    while (peek().kind != Tok::End) ast.functions.push_back(function());
    if (ast.functions.empty()) fail(peek(), "expected at least one function definition");
    return ast;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }

  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    take();
    return true;
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw SyntaxError(message, at.line, at.column);
  }

  Token expect(Tok kind, std::string_view context) {
    if (peek().kind != kind) {
      std::string found = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
      fail(peek(), "expected " + std::string(detail::token_description(kind)) + " " +
                       std::string(context) + ", found " + found);
    }
    return take();
  }

  Node function() {
    expect(Tok::Fn, "at top level");
    Token name = expect(Tok::Ident, "after 'fn'");
    if (kBuiltins.count(name.text)) fail(name, "'" + name.text + "' is a builtin");
    Node fn{.kind = NodeKind::Function, .name = name.text};
    expect(Tok::LParen, "after function name");
    if (peek().kind != Tok::RParen) {
      do {
        Token p = expect(Tok::Ident, "in parameter list");
        fn.children.push_back(Node{.kind = NodeKind::Param, .name = p.text});
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen, "after parameters");
    fn.children.push_back(block());
    return fn;
  }

  Node block() {
    expect(Tok::LBrace, "to open block");
    Node b{.kind = NodeKind::Block};
    while (peek().kind != Tok::RBrace) {
      if (peek().kind == Tok::End) fail(peek(), "unterminated block");
      b.children.push_back(statement());
    }
    take();
    return b;
  }

  Node statement() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Let: {
        take();
        Token name = expect(Tok::Ident, "after 'let'");
        expect(Tok::Assign, "in let binding");
        Node n{.kind = NodeKind::Let, .name = name.text};
        n.children.push_back(expression());
        expect(Tok::Semi, "after let binding");
        return n;
      }
      case Tok::If: {
        take();
        Node n{.kind = NodeKind::If};
        n.children.push_back(expression());
        n.children.push_back(block());
        if (accept(Tok::Else)) n.children.push_back(block());
        return n;
      }
      case Tok::While: {
        take();
        Node n{.kind = NodeKind::While};
        n.children.push_back(expression());
        n.children.push_back(block());
        return n;
      }
      case Tok::For: {
        take();
        Token var = expect(Tok::Ident, "after 'for'");
        expect(Tok::In, "in for loop");
        expect(Tok::Range, "in for loop");
        expect(Tok::LParen, "after 'range'");
        Node n{.kind = NodeKind::For, .name = var.text};
        n.children.push_back(expression());
        for (int extra = 0; extra < 2 && accept(Tok::Comma); ++extra)
          n.children.push_back(expression());
        expect(Tok::RParen, "to close range");
        n.children.push_back(block());
        return n;
      }
      case Tok::Return:
      case Tok::Assert: {
        take();
        Node n{.kind = t.kind == Tok::Return ? NodeKind::Return : NodeKind::Assert};
        n.children.push_back(expression());
        expect(Tok::Semi, "after statement");
        return n;
      }
      case Tok::Ident:
        if (peek(1).kind == Tok::Assign) {
          Token name = take();
          take();
          Node n{.kind = NodeKind::Assign, .name = name.text};
          n.children.push_back(expression());
          expect(Tok::Semi, "after assignment");
          return n;
        }
        break;
      default:
        break;
    }

    Token start = peek();
    Node e = expression();
    if (peek().kind == Tok::Assign) {
      if (e.kind != NodeKind::Index || e.children[0].kind != NodeKind::Var)
        fail(peek(), "invalid assignment target");
      take();
      Node n{.kind = NodeKind::IndexAssign, .name = e.children[0].name};
      n.children.push_back(std::move(e.children[1]));
      n.children.push_back(expression());
      expect(Tok::Semi, "after assignment");
      return n;
    }
    expect(Tok::Semi, "after expression");
    Node n{.kind = NodeKind::ExprStmt};
    n.children.push_back(std::move(e));
    return n;
  }

  static int precedence(Tok kind) {
    switch (kind) {
      case Tok::OrOr: return 1;
      case Tok::AndAnd: return 2;
      case Tok::EqEq:
      case Tok::NotEq: return 3;
      case Tok::Less:
      case Tok::LessEq:
      case Tok::Greater:
      case Tok::GreaterEq: return 4;
      case Tok::Plus:
      case Tok::Minus: return 5;
      case Tok::Star:
      case Tok::Slash:
      case Tok::Percent: return 6;
      default: return 0;
    }
  }

  static Op binary_op(Tok kind) {
    switch (kind) {
      case Tok::OrOr: return Op::Or;
      case Tok::AndAnd: return Op::And;
      case Tok::EqEq: return Op::Eq;
      case Tok::NotEq: return Op::Ne;
      case Tok::Less: return Op::Lt;
      case Tok::LessEq: return Op::Le;
      case Tok::Greater: return Op::Gt;
      case Tok::GreaterEq: return Op::Ge;
      case Tok::Plus: return Op::Add;
      case Tok::Minus: return Op::Sub;
      case Tok::Star: return Op::Mul;
      case Tok::Slash: return Op::Div;
      case Tok::Percent: return Op::Mod;
      default: return Op::None;
    }
  }

  Node expression(int min_prec = 1) {
    Node lhs = unary();
    for (;;) {
      int prec = precedence(peek().kind);
      if (prec < min_prec || prec == 0) return lhs;
      Op op = binary_op(take().kind);
      Node rhs = expression(prec + 1);
      Node bin{.kind = NodeKind::Binary, .op = op};
      bin.children.push_back(std::move(lhs));
      bin.children.push_back(std::move(rhs));
      lhs = std::move(bin);
    }
  }

  Node unary() {
    if (peek().kind == Tok::Minus || peek().kind == Tok::Bang) {
      Op op = take().kind == Tok::Minus ? Op::Neg : Op::Not;
      Node n{.kind = NodeKind::Unary, .op = op};
      n.children.push_back(unary());
      return n;
    }
    return postfix();
  }

  Node postfix() {
    Node e = primary();
    while (accept(Tok::LBracket)) {
      Node idx{.kind = NodeKind::Index};
      idx.children.push_back(std::move(e));
      idx.children.push_back(expression());
      expect(Tok::RBracket, "to close index");
      e = std::move(idx);
    }
    return e;
  }

  std::vector<Node> arguments() {
    std::vector<Node> args;
    expect(Tok::LParen, "to open argument list");
    if (peek().kind != Tok::RParen) {
      do {
        args.push_back(expression());
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen, "to close argument list");
    return args;
  }

  Node primary() {
    Token t = take();
    switch (t.kind) {
      case Tok::Int:
        return Node{.kind = NodeKind::IntLit, .value = std::stoll(t.text)};
      case Tok::True:
      case Tok::False:
        return Node{.kind = NodeKind::BoolLit, .value = t.kind == Tok::True ? 1 : 0};
      case Tok::LParen: {
        Node e = expression();
        expect(Tok::RParen, "to close parenthesis");
        return e;
      }
      case Tok::LBracket: {
        Node list{.kind = NodeKind::ListLit};
        if (peek().kind != Tok::RBracket) {
          do {
            list.children.push_back(expression());
          } while (accept(Tok::Comma));
        }
        expect(Tok::RBracket, "to close list literal");
        return list;
      }
      case Tok::Ident: {
        if (peek().kind != Tok::LParen) return Node{.kind = NodeKind::Var, .name = t.text};
        bool builtin = kBuiltins.count(t.text) > 0;
        Node call{.kind = builtin ? NodeKind::Builtin : NodeKind::Call, .name = t.text};
        call.children = arguments();
        return call;
      }
      default: {
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        fail(t, "expected expression, found " + found);
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Ast parse(const SourceUnit& source) {
  Parser parser(detail::tokenize(source.text));
  Ast ast = parser.program();
  resolve(ast);
  return ast;
}

Program Program::from_source(SourceUnit source, std::string entry) {
  Program p;
  p.ast = parse(source);
  p.source = std::move(source);
  if (entry.empty()) entry = p.ast.functions.front().name;
  if (!p.ast.find_function(entry))
    throw ResolveError("entry function '" + entry + "' is not defined");
  p.entry = std::move(entry);
  return p;
}

const Node& Program::entry_function() const {
  const Node* fn = ast.find_function(entry);
  if (!fn) throw ResolveError("entry function '" + entry + "' is not defined");
  return *fn;
}

}  // namespace emoc
