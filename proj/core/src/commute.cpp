#include "emoc/normalize.hpp"
#include "emoc/util.hpp"

namespace emoc {
namespace {

void hash_into(const Node& n, Fnv1a& h) {
  h.u64(static_cast<std::uint64_t>(n.kind));
  h.u64(static_cast<std::uint64_t>(n.op));
  h.u64(n.name.size());
  h.bytes(n.name);
  h.u64(static_cast<std::uint64_t>(n.value));
  h.u64(n.children.size());
  for (const auto& c : n.children) hash_into(c, h);
}

bool commutative(Op op) {
  return op == Op::Add || op == Op::Mul || op == Op::Eq || op == Op::Ne || op == Op::And ||
         op == Op::Or;
}

void canonicalize(Node& n) {
  for (auto& c : n.children) canonicalize(c);
  if (n.kind != NodeKind::Binary || !commutative(n.op)) return;
  Node& a = n.children[0];
  Node& b = n.children[1];
  if (!is_pure(a) || !is_pure(b)) return;
  if ((n.op == Op::And || n.op == Op::Or) && !(is_trap_free(a) && is_trap_free(b))) return;
  auto ha = structural_hash(a);
  auto hb = structural_hash(b);
  if (hb < ha || (hb == ha && render_expr(b) < render_expr(a))) std::swap(a, b);
}

}  // namespace

std::uint64_t structural_hash(const Node& node) {
  Fnv1a h;
  hash_into(node, h);
  return h.digest();
}

Ast canonicalize_commutative(const Ast& ast) {
  Ast out = ast;
  for (auto& fn : out.functions) canonicalize(fn);
  resolve(out);
  return out;
}

}  // namespace emoc
