#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "emoc/lang.hpp"

namespace emoc {

/// Which normalization passes run, and how many fixed-point rounds at most.
struct PassConfig {
  bool alpha = true;
  bool dce = true;
  bool inline_intermediates = true;
  bool commute = false;
  int max_iterations = 5;

  /// Parses "alpha,dce,inline,commute" (any subset; empty means none).
  static PassConfig from_list(std::string_view list);
  std::string to_list() const;
  void validate() const;

  friend bool operator==(const PassConfig&, const PassConfig&) = default;
};

/// Renames every parameter and local to v0, v1, ... in declaration order.
/// Function names are kept.
Ast alpha_canonicalize(const Ast& ast);

/// Removes pure bindings that are never read, statements after a return in
/// the same block, and `if` statements whose condition is constant.
/// Calls to user functions are never removed.
Ast eliminate_dead_code(const Ast& ast);

/// Substitutes single-use pure bindings into their use site when nothing in
/// between can change the value of the bound expression.
Ast inline_intermediates(const Ast& ast);

/// Orders the operands of + * == != (pure operands) and && || (pure and
/// trap-free operands) by structural hash, ties broken by rendered text.
Ast canonicalize_commutative(const Ast& ast);

/// alpha -> dce -> inline -> commute -> alpha (enabled passes only), repeated
/// until nothing changes or max_iterations is reached.
Ast normalize(const Ast& ast, const PassConfig& cfg = {});

/// Structural hash of a subtree: kinds, operators, names and literal values.
std::uint64_t structural_hash(const Node& node);

}  // namespace emoc
