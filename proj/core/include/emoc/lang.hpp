#pragma once

// MiniAlg: the deterministic imperative subject language every compared
// implementation is written in.
//
//   program := fndef+
//   fndef   := "fn" IDENT "(" [IDENT {"," IDENT}] ")" block
//   block   := "{" {stmt} "}"
//   stmt    := "let" IDENT "=" expr ";" | IDENT "=" expr ";"
//            | IDENT "[" expr "]" "=" expr ";"
//            | "if" expr block ["else" block] | "while" expr block
//            | "for" IDENT "in" "range" "(" expr ["," expr ["," expr]] ")" block
//            | "return" expr ";" | "assert" expr ";" | expr ";"
//
// Expressions: integer/boolean literals, list literals, identifiers, unary
// - and !, binary + - * / % == != < <= > >= && ||, indexing, calls, and the
// builtins len/push/pop/make_list. `#` starts a line comment.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emoc {

/// Raw program text. Always valid UTF-8 with LF line endings.
struct SourceUnit {
  std::string text;
  std::string origin;

  /// Validates UTF-8 and normalizes CRLF (and lone CR) to LF.
  static SourceUnit from_text(std::string_view text, std::string origin = "<inline>");
  static SourceUnit from_file(const std::filesystem::path& path);

  friend bool operator==(const SourceUnit&, const SourceUnit&) = default;
};

enum class NodeKind : std::uint8_t {
  Function,
  Param,
  Block,
  // statements
  Let,
  Assign,
  IndexAssign,
  If,
  While,
  For,
  Return,
  Assert,
  ExprStmt,
  // expressions
  IntLit,
  BoolLit,
  ListLit,
  Var,
  Unary,
  Binary,
  Index,
  Call,
  Builtin,
};

enum class Op : std::uint8_t {
  None,
  Add,
  Sub,
  Mul,
  Div,
  Mod,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  And,
  Or,
  Neg,
  Not,
};

std::string_view kind_name(NodeKind kind);
std::string_view op_symbol(Op op);

/// One syntax-tree node. Layout by kind:
///   Function    name; children = Param..., Block
///   Param       name, slot
///   Block       children = statements
///   Let/Assign  name, slot; children = {value}
///   IndexAssign name, slot; children = {index, value}
///   If          children = {cond, then-Block[, else-Block]}
///   While       children = {cond, Block}
///   For         name, slot; children = {range args (1..3)..., Block}
///   Return/Assert/ExprStmt  children = {expr}
///   IntLit/BoolLit          value
///   ListLit     children = elements
///   Var         name, slot
///   Unary/Binary op; children = operands
///   Index       children = {list, index}
///   Call        name, slot = callee function index; children = args
///   Builtin     name in {len, push, pop, make_list}; children = args
///
/// `slot` is derived by resolve(): locals are numbered densely from 0 in
/// declaration order (parameters first). Nodes carry no source positions.
struct Node {
  NodeKind kind = NodeKind::Block;
  Op op = Op::None;
  std::string name;
  std::int64_t value = 0;
  std::int32_t slot = -1;
  std::vector<Node> children;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Ast {
  std::vector<Node> functions;

  const Node* find_function(std::string_view name) const;

  friend bool operator==(const Ast&, const Ast&) = default;
};

/// Parses and resolves. Throws SyntaxError or ResolveError.
Ast parse(const SourceUnit& source);

/// Validates names and arities and recomputes every slot. Passes call this on
/// their output. Throws ResolveError.
void resolve(Ast& ast);

/// Canonical formatting: one statement per line, two-space indentation.
SourceUnit render(const Ast& ast);
std::string render_expr(const Node& expr);

/// Number of named local slots (parameters included) of a resolved function.
std::int32_t named_slot_count(const Node& function);

/// Syntactic purity: literals, variable reads, unary/binary operators over
/// pure operands, len and indexing of pure operands. Calls, push, pop,
/// make_list and list literals are impure.
bool is_pure(const Node& expr);

/// Pure and free of operations that may trap on well-typed input:
/// no division, modulo, indexing or calls of any kind.
bool is_trap_free(const Node& expr);

/// A compile-time scalar.
struct Scalar {
  bool is_bool = false;
  std::int64_t value = 0;

  friend bool operator==(const Scalar&, const Scalar&) = default;
};

/// Folds an expression whose operands are all constant. Returns nullopt if
/// any operand is non-constant or the evaluation would trap.
std::optional<Scalar> fold_constant(const Node& expr);

/// A parsed program plus the metadata used to compare it.
struct Program {
  std::string id;
  SourceUnit source;
  Ast ast;
  std::string entry;
  std::string problem;
  std::string label;

  /// Parses `source`. An empty `entry` selects the first function.
  static Program from_source(SourceUnit source, std::string entry = {});

  const Node& entry_function() const;
};

}  // namespace emoc
