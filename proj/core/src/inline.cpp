#include "ast_walk.hpp"
#include "emoc/normalize.hpp"

namespace emoc {
namespace {

Node* find_var(Node& e, std::int32_t slot) {
  if (e.kind == NodeKind::Var && e.slot == slot) return &e;
  for (auto& c : e.children) {
    if (Node* hit = find_var(c, slot)) return hit;
  }
  return nullptr;
}

class Inliner {
 public:
  explicit Inliner(Node& fn) : fn_(fn) {}

  bool once() { return block(fn_.children.back()); }

 private:
  bool single_use(std::int32_t slot) const {
    int reads = 0;
    bool written = false;
    detail::visit(fn_, [&](const Node& n) {
      if (n.slot != slot) return;
      if (n.kind == NodeKind::Var) ++reads;
      if (n.kind == NodeKind::Assign || n.kind == NodeKind::IndexAssign) written = true;
    });
    return reads == 1 && !written;
  }

  bool try_inline(Node& b, std::size_t i) {
    Node& let = b.children[i];
    const Node& value = let.children[0];
    if (!is_pure(value) || !single_use(let.slot)) return false;

    auto used = detail::names_in(value);
    bool heap = detail::reads_heap(value);
    for (std::size_t j = i + 1; j < b.children.size(); ++j) {
      Node& s = b.children[j];
      Node* site = nullptr;
      bool clean = true;
      for (auto& c : s.children) {
        if (c.kind == NodeKind::Block) continue;
        if (!is_pure(c)) clean = false;
        if (!site) site = find_var(c, let.slot);
      }
      if (site) {
        if (!clean || s.kind == NodeKind::While) return false;
        *site = value;
        b.children.erase(b.children.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
      }
      for (const auto& w : detail::names_written(s)) {
        if (used.count(w)) return false;
      }
      if (heap && detail::may_mutate_heap(s)) return false;
    }
    return false;
  }

  bool block(Node& b) {
    for (std::size_t i = 0; i < b.children.size(); ++i) {
      if (b.children[i].kind == NodeKind::Let && try_inline(b, i)) return true;
    }
    for (auto& s : b.children) {
      for (auto& c : s.children) {
        if (c.kind == NodeKind::Block && block(c)) return true;
      }
    }
    return false;
  }

  Node& fn_;
};

}  // namespace

Ast inline_intermediates(const Ast& ast) {
  Ast out = ast;
  for (auto& fn : out.functions) {
    for (int guard = 0; guard < 10'000; ++guard) {
      if (!Inliner(fn).once()) break;
      resolve(out);
    }
  }
  resolve(out);
  return out;
}

}  // namespace emoc
