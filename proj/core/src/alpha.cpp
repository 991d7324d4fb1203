#include "ast_walk.hpp"
#include "emoc/normalize.hpp"

namespace emoc {

Ast alpha_canonicalize(const Ast& ast) {
  Ast out = ast;
  for (auto& fn : out.functions) {
    detail::visit_mut(fn, [](Node& n) {
      switch (n.kind) {
        case NodeKind::Param:
        case NodeKind::Let:
        case NodeKind::Assign:
        case NodeKind::IndexAssign:
        case NodeKind::For:
        case NodeKind::Var:
          n.name = "v" + std::to_string(n.slot);
          break;
        default:
          break;
      }
    });
  }
  resolve(out);
  return out;
}

}  // namespace emoc
