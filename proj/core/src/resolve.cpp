#include <map>
#include <string>
#include <vector>

#include "emoc/error.hpp"
#include "emoc/lang.hpp"

namespace emoc {
namespace {

struct Binding {
  std::int32_t slot;
  bool loop_var;
};

struct FunctionSig {
  std::int32_t index;
  std::size_t arity;
};

std::size_t builtin_arity(std::string_view name) {
  if (name == "push" || name == "make_list") return 2;
  return 1;
}

class Resolver {
 public:
  Resolver(const std::map<std::string, FunctionSig, std::less<>>& sigs, std::string fn_name)
      : sigs_(sigs), fn_(std::move(fn_name)) {}

  void function(Node& fn) {
    scopes_.emplace_back();
    for (auto& child : fn.children) {
      if (child.kind != NodeKind::Param) continue;
      if (scopes_.back().count(child.name))
        fail("duplicate parameter '" + child.name + "'");
      child.slot = declare(child.name, false);
    }
    block(fn.children.back());
    scopes_.pop_back();
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ResolveError(message + " in function '" + fn_ + "'");
  }

  std::int32_t declare(const std::string& name, bool loop_var) {
    std::int32_t slot = next_slot_++;
    scopes_.back()[name] = Binding{slot, loop_var};
    return slot;
  }

  const Binding* lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return &found->second;
    }
    return nullptr;
  }

  const Binding& require(const std::string& name) const {
    const Binding* b = lookup(name);
    if (!b) fail("unknown identifier '" + name + "'");
    return *b;
  }

  void block(Node& b) {
    scopes_.emplace_back();
    for (auto& stmt : b.children) statement(stmt);
    scopes_.pop_back();
  }

  void statement(Node& s) {
    switch (s.kind) {
      case NodeKind::Let:
        expr(s.children[0]);
        s.slot = declare(s.name, false);
        break;
      case NodeKind::Assign: {
        expr(s.children[0]);
        const Binding& b = require(s.name);
        if (b.loop_var) fail("cannot assign to loop variable '" + s.name + "'");
        s.slot = b.slot;
        break;
      }
      case NodeKind::IndexAssign:
        s.slot = require(s.name).slot;
        expr(s.children[0]);
        expr(s.children[1]);
        break;
      case NodeKind::If:
        expr(s.children[0]);
        block(s.children[1]);
        if (s.children.size() > 2) block(s.children[2]);
        break;
      case NodeKind::While:
        expr(s.children[0]);
        block(s.children[1]);
        break;
      case NodeKind::For: {
        std::size_t nargs = s.children.size() - 1;
        for (std::size_t i = 0; i < nargs; ++i) expr(s.children[i]);
        if (nargs == 3) {
          auto step = fold_constant(s.children[2]);
          if (step && !step->is_bool && step->value == 0) fail("range step must not be zero");
        }
        scopes_.emplace_back();
        s.slot = declare(s.name, true);
        block(s.children.back());
        scopes_.pop_back();
        break;
      }
      case NodeKind::Return:
      case NodeKind::Assert:
      case NodeKind::ExprStmt:
        expr(s.children[0]);
        break;
      default:
        fail("unexpected " + std::string(kind_name(s.kind)) + " in statement position");
    }
  }

  void expr(Node& e) {
    switch (e.kind) {
      case NodeKind::Var:
        e.slot = require(e.name).slot;
        return;
      case NodeKind::Call: {
        auto sig = sigs_.find(e.name);
        if (sig == sigs_.end()) fail("unknown function '" + e.name + "'");
        if (sig->second.arity != e.children.size())
          fail("function '" + e.name + "' expects " + std::to_string(sig->second.arity) +
               " argument(s), got " + std::to_string(e.children.size()));
        e.slot = sig->second.index;
        break;
      }
      case NodeKind::Builtin: {
        std::size_t arity = builtin_arity(e.name);
        if (arity != e.children.size())
          fail("builtin '" + e.name + "' expects " + std::to_string(arity) +
               " argument(s), got " + std::to_string(e.children.size()));
        break;
      }
      default:
        break;
    }
    for (auto& child : e.children) expr(child);
  }

  const std::map<std::string, FunctionSig, std::less<>>& sigs_;
  std::string fn_;
  std::vector<std::map<std::string, Binding>> scopes_;
  std::int32_t next_slot_ = 0;
};

void max_slot(const Node& n, std::int32_t& best) {
  if (n.kind == NodeKind::Param || n.kind == NodeKind::Let || n.kind == NodeKind::For)
    best = std::max(best, n.slot);
  for (const auto& child : n.children) max_slot(child, best);
}

}  // namespace

void resolve(Ast& ast) {
  std::map<std::string, FunctionSig, std::less<>> sigs;
  for (std::size_t i = 0; i < ast.functions.size(); ++i) {
    const Node& fn = ast.functions[i];
    if (fn.kind != NodeKind::Function) throw ResolveError("top-level node is not a function");
    if (sigs.count(fn.name)) throw ResolveError("duplicate function '" + fn.name + "'");
    sigs[fn.name] = FunctionSig{static_cast<std::int32_t>(i), fn.children.size() - 1};
  }
  for (auto& fn : ast.functions) Resolver(sigs, fn.name).function(fn);
}

std::int32_t named_slot_count(const Node& function) {
  std::int32_t best = -1;
  max_slot(function, best);
  return best + 1;
}

}  // namespace emoc
