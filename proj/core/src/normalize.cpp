#include <sstream>

#include "emoc/error.hpp"
#include "emoc/normalize.hpp"

namespace emoc {

PassConfig PassConfig::from_list(std::string_view list) {
  PassConfig cfg{false, false, false, false};
  std::stringstream in{std::string(list)};
  std::string item;
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    if (item == "alpha") cfg.alpha = true;
    else if (item == "dce") cfg.dce = true;
    else if (item == "inline") cfg.inline_intermediates = true;
    else if (item == "commute") cfg.commute = true;
    else if (item == "none") continue;
    else throw ConfigError("unknown pass '" + item + "' (expected alpha, dce, inline, commute)");
  }
  return cfg;
}

std::string PassConfig::to_list() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(alpha, "alpha");
  add(dce, "dce");
  add(inline_intermediates, "inline");
  add(commute, "commute");
  return out;
}

void PassConfig::validate() const {
  if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
}

Ast normalize(const Ast& ast, const PassConfig& cfg) {
  cfg.validate();
  Ast cur = ast;
  for (int round = 0; round < cfg.max_iterations; ++round) {
    Ast next = cur;
    if (cfg.alpha) next = alpha_canonicalize(next);
    if (cfg.dce) next = eliminate_dead_code(next);
    if (cfg.inline_intermediates) next = inline_intermediates(next);
    if (cfg.commute) next = canonicalize_commutative(next);
    if (cfg.alpha) next = alpha_canonicalize(next);
    bool fixed = next == cur;
    cur = std::move(next);
    if (fixed) break;
  }
  return cur;
}

}  // namespace emoc
