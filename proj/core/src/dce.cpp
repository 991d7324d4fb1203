#include <map>
#include <vector>

#include "ast_walk.hpp"
#include "emoc/normalize.hpp"

namespace emoc {
namespace {

struct SlotUse {
  int reads = 0;
  bool removable = true;
};

class DeadCode {
 public:
  explicit DeadCode(Node& fn) : fn_(fn) {}

  bool run() {
    uses_.clear();
    detail::visit(fn_, [&](const Node& n) {
      switch (n.kind) {
        case NodeKind::Var:
        case NodeKind::IndexAssign:
          ++uses_[n.slot].reads;
          break;
        case NodeKind::Let:
        case NodeKind::Assign:
          if (!is_pure(n.children[0])) uses_[n.slot].removable = false;
          else uses_[n.slot];
          break;
        case NodeKind::Param:
        case NodeKind::For:
          uses_[n.slot].removable = false;
          break;
        default:
          break;
      }
    });
    return block(fn_.children.back());
  }

 private:
  bool dead(const Node& s) const {
    if (s.kind != NodeKind::Let && s.kind != NodeKind::Assign) return false;
    auto it = uses_.find(s.slot);
    return it != uses_.end() && it->second.reads == 0 && it->second.removable;
  }

  // Declared directly in `b` and also used somewhere else in the function.
  bool collides(const Node& b) const {
    for (const auto& s : b.children) {
      if (s.kind != NodeKind::Let) continue;
      int count = 0;
      detail::visit(fn_, [&](const Node& n) {
        if ((n.kind == NodeKind::Let || n.kind == NodeKind::For || n.kind == NodeKind::Param) &&
            n.name == s.name)
          ++count;
      });
      if (count > 1) return true;
    }
    return false;
  }

  bool block(Node& b) {
    bool changed = false;
    std::vector<Node> out;
    for (auto& s : b.children) {
      if (dead(s)) {
        changed = true;
        continue;
      }
      if (s.kind == NodeKind::If) {
        auto cond = fold_constant(s.children[0]);
        if (cond && cond->is_bool) {
          bool has_else = s.children.size() > 2;
          if (!cond->value && !has_else) {
            changed = true;
            continue;
          }
          Node& taken = cond->value ? s.children[1] : s.children[2];
          if (!collides(taken)) {
            block(taken);
            for (auto& inner : taken.children) out.push_back(std::move(inner));
            changed = true;
            if (!out.empty() && out.back().kind == NodeKind::Return) break;
            continue;
          }
        }
      }
      for (auto& c : s.children) {
        if (c.kind == NodeKind::Block) changed |= block(c);
      }
      bool is_return = s.kind == NodeKind::Return;
      out.push_back(std::move(s));
      if (is_return) {
        if (&s != &b.children.back()) changed = true;
        break;
      }
    }
    b.children = std::move(out);
    return changed;
  }

  Node& fn_;
  std::map<std::int32_t, SlotUse> uses_;
};

}  // namespace

Ast eliminate_dead_code(const Ast& ast) {
  Ast out = ast;
  for (int guard = 0; guard < 1000; ++guard) {
    bool changed = false;
    for (auto& fn : out.functions) changed |= DeadCode(fn).run();
    resolve(out);
    if (!changed) break;
  }
  return out;
}

}  // namespace emoc
