#include "emoc/equiv.hpp"

#include <algorithm>

#include "emoc/bytecode.hpp"
#include "emoc/error.hpp"

namespace emoc {

std::string_view relation_name(Relation relation) {
  switch (relation) {
    case Relation::Encoding: return "encoding";
    case Relation::Ast: return "ast";
    case Relation::Instruction: return "instruction";
    case Relation::Functional: return "functional";
  }
  return "?";
}

Relation relation_from_name(std::string_view name) {
  if (name == "encoding") return Relation::Encoding;
  if (name == "ast") return Relation::Ast;
  if (name == "instruction" || name == "instr") return Relation::Instruction;
  if (name == "functional") return Relation::Functional;
  throw ConfigError("unknown relation '" + std::string(name) +
                    "' (expected encoding, ast, instruction or functional)");
}

std::string_view mode_name(Mode mode) { return mode == Mode::Raw ? "raw" : "normalized"; }

Mode mode_from_name(std::string_view name) {
  if (name == "raw") return Mode::Raw;
  if (name == "normalized" || name == "normalize") return Mode::Normalized;
  throw ConfigError("unknown mode '" + std::string(name) + "' (expected raw or normalized)");
}

std::string EquivVerdict::describe_witness() const {
  if (!witness) return "";
  return std::visit(
      [](const auto& w) -> std::string {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, ByteWitness>) {
          return "first differing byte at offset " + std::to_string(w.offset);
        } else if constexpr (std::is_same_v<W, NodeWitness>) {
          return "first differing node at " + w.path;
        } else if constexpr (std::is_same_v<W, InstructionWitness>) {
          return "first differing instruction: function " + std::to_string(w.function) +
                 ", index " + std::to_string(w.index);
        } else {
          std::string args;
          for (std::size_t i = 0; i < w.args.size(); ++i) {
            if (i) args += ", ";
            args += w.args[i].to_string();
          }
          return "probe " + std::to_string(w.probe_index) + " (" + args +
                 "): " + outcome_to_string(w.left) + " vs " + outcome_to_string(w.right);
        }
      },
      *witness);
}

EquivVerdict encoding_equivalent(const SourceUnit& a, const SourceUnit& b) {
  EquivVerdict v{Relation::Encoding, Mode::Raw, a.text == b.text, std::nullopt, 0};
  if (!v.equal) {
    auto [ia, ib] = std::mismatch(a.text.begin(), a.text.end(), b.text.begin(), b.text.end());
    v.witness = ByteWitness{static_cast<std::size_t>(ia - a.text.begin())};
  }
  return v;
}

namespace {

std::optional<std::string> first_difference(const Node& a, const Node& b, const std::string& path) {
  std::string here = path + "/" + std::string(kind_name(a.kind));
  if (a.kind != b.kind || a.op != b.op || a.name != b.name || a.value != b.value) return here;
  std::size_t n = std::min(a.children.size(), b.children.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto d = first_difference(a.children[i], b.children[i], here + "[" + std::to_string(i) + "]");
    if (d) return d;
  }
  if (a.children.size() != b.children.size()) return here + "[" + std::to_string(n) + "]";
  return std::nullopt;
}

std::optional<std::string> first_difference(const Ast& a, const Ast& b) {
  std::size_t n = std::min(a.functions.size(), b.functions.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto d = first_difference(a.functions[i], b.functions[i], "functions[" + std::to_string(i) + "]");
    if (d) return d;
  }
  if (a.functions.size() != b.functions.size()) return "functions[" + std::to_string(n) + "]";
  return std::nullopt;
}

Ast prepare(const Ast& ast, Mode mode, const PassConfig& passes) {
  return mode == Mode::Raw ? alpha_canonicalize(ast) : normalize(ast, passes);
}

}  // namespace

EquivVerdict ast_equivalent(const Ast& a, const Ast& b, Mode mode, const PassConfig& passes) {
  Ast x = prepare(a, mode, passes);
  Ast y = prepare(b, mode, passes);
  EquivVerdict v{Relation::Ast, mode, x == y, std::nullopt, 0};
  if (!v.equal) {
    auto d = first_difference(x, y);
    v.witness = NodeWitness{d.value_or("functions")};
  }
  return v;
}

EquivVerdict instruction_equivalent(const Ast& a, const Ast& b, Mode mode, const PassConfig& passes) {
  InstructionStream x = mode == Mode::Raw ? lower(a) : lower(normalize(a, passes));
  InstructionStream y = mode == Mode::Raw ? lower(b) : lower(normalize(b, passes));
  EquivVerdict v{Relation::Instruction, mode, x.code_bytes() == y.code_bytes(), std::nullopt, 0};
  if (v.equal) return v;
  std::size_t nf = std::min(x.functions.size(), y.functions.size());
  for (std::size_t f = 0; f < nf; ++f) {
    const auto& fa = x.functions[f];
    const auto& fb = y.functions[f];
    if (fa.arity != fb.arity || fa.slot_count != fb.slot_count) {
      v.witness = InstructionWitness{f, 0};
      return v;
    }
    std::size_t n = std::min(fa.code.size(), fb.code.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = fa.code[i];
      const auto& q = fb.code[i];
      if (p.op != q.op || p.flag != q.flag || p.arg != q.arg) {
        v.witness = InstructionWitness{f, i};
        return v;
      }
    }
    if (fa.code.size() != fb.code.size()) {
      v.witness = InstructionWitness{f, n};
      return v;
    }
  }
  v.witness = InstructionWitness{nf, 0};
  return v;
}

EquivVerdict functional_equivalent(const Program& a, const Program& b, const ProbeSuite& suite,
                                   const Budgets& budgets, Mode mode, const PassConfig& passes,
                                   ReportCache* cache) {
  std::size_t arity = problem_spec(suite.problem).arity;
  for (const Program* p : {&a, &b}) {
    if (p->entry_function().children.size() - 1 != arity)
      throw EvalError("entry '" + p->entry + "' does not take " + std::to_string(arity) +
                      " argument(s) as " + std::string(problem_name(suite.problem)) + " requires");
  }
  auto stream = [&](const Program& p) {
    return mode == Mode::Raw ? lower(p.ast) : lower(normalize(p.ast, passes));
  };
  auto ra = run_suite(stream(a), a.entry, suite, budgets, cache);
  auto rb = run_suite(stream(b), b.entry, suite, budgets, cache);

  EquivVerdict v{Relation::Functional, mode, true, std::nullopt, 0};
  std::size_t n = std::min(ra->reports.size(), rb->reports.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = ra->reports[i];
    const auto& y = rb->reports[i];
    ++v.probes_examined;
    if (!x.completed() || !y.completed() || x.outcome != y.outcome) {
      v.equal = false;
      v.witness = ProbeWitness{i, suite.probes[i].args, x.outcome, y.outcome};
      return v;
    }
  }
  return v;
}

}  // namespace emoc
