#pragma once

#include <set>
#include <string>

#include "emoc/lang.hpp"

namespace emoc::detail {

template <typename Fn>
void visit(const Node& n, Fn&& fn) {
  fn(n);
  for (const auto& c : n.children) visit(c, fn);
}

template <typename Fn>
void visit_mut(Node& n, Fn&& fn) {
  fn(n);
  for (auto& c : n.children) visit_mut(c, fn);
}

inline bool is_statement(NodeKind k) {
  return k >= NodeKind::Let && k <= NodeKind::ExprStmt;
}

/// Names read, assigned or declared anywhere under `n`.
inline std::set<std::string> names_in(const Node& n) {
  std::set<std::string> out;
  visit(n, [&](const Node& x) {
    switch (x.kind) {
      case NodeKind::Var:
      case NodeKind::Let:
      case NodeKind::Assign:
      case NodeKind::IndexAssign:
      case NodeKind::For:
      case NodeKind::Param:
        out.insert(x.name);
        break;
      default:
        break;
    }
  });
  return out;
}

/// Names declared or rebound (let, for, assignment) anywhere under `n`.
inline std::set<std::string> names_written(const Node& n) {
  std::set<std::string> out;
  visit(n, [&](const Node& x) {
    if (x.kind == NodeKind::Let || x.kind == NodeKind::Assign || x.kind == NodeKind::For)
      out.insert(x.name);
  });
  return out;
}

/// True if anything under `n` may write list contents or call user code.
inline bool may_mutate_heap(const Node& n) {
  bool found = false;
  visit(n, [&](const Node& x) {
    if (x.kind == NodeKind::IndexAssign || x.kind == NodeKind::Call) found = true;
    if (x.kind == NodeKind::Builtin && (x.name == "push" || x.name == "pop")) found = true;
  });
  return found;
}

inline bool reads_heap(const Node& n) {
  bool found = false;
  visit(n, [&](const Node& x) {
    if (x.kind == NodeKind::Index || (x.kind == NodeKind::Builtin && x.name == "len")) found = true;
  });
  return found;
}

}  // namespace emoc::detail
