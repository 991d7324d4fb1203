#include <gtest/gtest.h>

#include <functional>

#include "emoc/error.hpp"
#include "emoc/normalize.hpp"
#include "helpers.hpp"
#include "program_gen.hpp"
#include "reference.hpp"

using namespace emoc;
using namespace emoc::testing;

namespace {

Ast ast_of(std::string_view text) { return parse(SourceUnit::from_text(text)); }

Ast ast_file(std::string_view relative) {
  return parse(SourceUnit::from_file(corpus_path(relative)));
}

std::string show(const Ast& ast) { return render(ast).text; }

using PassFn = std::function<Ast(const Ast&)>;

std::vector<std::pair<std::string, PassFn>> all_passes() {
  PassConfig with_commute;
  with_commute.commute = true;
  return {
      {"alpha", alpha_canonicalize},
      {"dce", eliminate_dead_code},
      {"inline", inline_intermediates},
      {"commute", canonicalize_commutative},
      {"normalize", [](const Ast& a) { return normalize(a); }},
      {"normalize+commute", [with_commute](const Ast& a) { return normalize(a, with_commute); }},
  };
}

}  // namespace

TEST(Alpha, DeterministicRenaming) {
  EXPECT_EQ(show(alpha_canonicalize(ast_of("fn f(a){let x=a; return x;}"))),
            show(ast_of("fn f(v0){let v1=v0; return v1;}")));
}

TEST(Alpha, RenderUsesGeneratedNames) {
  EXPECT_EQ(show(alpha_canonicalize(ast_file("examples/ptriple.alg"))),
            "fn ptriple(v0, v1, v2) {\n  return v0 * v0 + v1 * v1 == v2 * v2;\n}\n");
}

TEST(Alpha, PortugueseBubbleCloneMatches) {
  Ast en = alpha_canonicalize(ast_file("sort/bubble_v0_baseline.alg"));
  Ast pt = alpha_canonicalize(ast_file("sort/bubble_v1_renamed.alg"));
  EXPECT_EQ(en, pt);
}

TEST(Alpha, ShadowedNamesGetDistinctSlots) {
  Ast a = alpha_canonicalize(ast_of("fn f(x){ if true { let x = 2; return x; } return x; }"));
  EXPECT_EQ(show(a), show(ast_of("fn f(v0){ if true { let v1 = 2; return v1; } return v0; }")));
}

TEST(Alpha, IdempotentOnCorpus) {
  for (const auto& path : corpus_files()) {
    Ast once = alpha_canonicalize(parse(SourceUnit::from_file(path)));
    EXPECT_EQ(alpha_canonicalize(once), once) << path;
  }
}

TEST(Dce, CallsAreKept) {
  Ast a = eliminate_dead_code(ast_file("examples/ptriple_extraneous.alg"));
  const Node& body = a.functions[0].children.back();
  ASSERT_EQ(body.children.size(), 2u);
  EXPECT_EQ(body.children[0].kind, NodeKind::Let);
}

TEST(Dce, PureBindingRemoved) {
  EXPECT_EQ(eliminate_dead_code(ast_file("examples/ptriple_extraneous_pure.alg")),
            ast_file("examples/ptriple.alg"));
}

TEST(Dce, UnreachableTailRemoved) {
  EXPECT_EQ(eliminate_dead_code(ast_of("fn f(){ return 1; let x = 2; }")),
            ast_of("fn f(){ return 1; }"));
}

TEST(Dce, ConstantConditions) {
  EXPECT_EQ(eliminate_dead_code(ast_of("fn f(a){ if 1 < 2 { return a; } else { return 0; } }")),
            ast_of("fn f(a){ return a; }"));
  EXPECT_EQ(eliminate_dead_code(ast_of("fn f(a){ if false { a = 2; } return a; }")),
            ast_of("fn f(a){ return a; }"));
  EXPECT_EQ(eliminate_dead_code(ast_of("fn f(a){ if false { a = 2; } else { a = 3; } return a; }")),
            ast_of("fn f(a){ a = 3; return a; }"));
}

TEST(Dce, LiveAndImpureBindingsStay) {
  Ast live = ast_of("fn f(a){ let x = a + 1; return x; }");
  EXPECT_EQ(eliminate_dead_code(live), live);
  Ast impure = ast_of("fn f(xs){ let x = pop(xs); return xs; }");
  EXPECT_EQ(eliminate_dead_code(impure), impure);
  // only written, never read: the writes go too
  EXPECT_EQ(eliminate_dead_code(ast_of("fn f(a){ let x = a; x = 5; return a; }")),
            ast_of("fn f(a){ return a; }"));
  // a self-referencing update counts as a read
  Ast self = ast_of("fn f(a){ let x = a; x = x + 1; return a; }");
  EXPECT_EQ(eliminate_dead_code(self), self);
}

TEST(Inline, SplitIntermediate) {
  EXPECT_EQ(inline_intermediates(ast_file("examples/ptriple_intermediate.alg")),
            ast_file("examples/ptriple.alg"));
  EXPECT_EQ(inline_intermediates(ast_of("fn f(a,b,c){ let z = a*a + b*b; return z == c*c; }")),
            ast_of("fn f(a,b,c){ return a*a + b*b == c*c; }"));
}

TEST(Inline, ConditionsBlockSubstitution) {
  for (const char* src : {
           "fn f(a){ let z = a * 2; return z + z; }",
           "fn f(a){ let z = a * 2; a = 3; return z; }",
           "fn f(xs){ let z = xs[0]; xs[0] = 5; return z; }",
           "fn f(xs){ let z = xs[0]; push(xs, 1); return z; }",
           "fn f(a){ let z = a + 1; while a < 3 { a = a + z; } return a; }",
           "fn f(a){ let z = a + 1; for i in range(3) { a = z; } return a; }",
           "fn f(a){ let z = g(a); return z; } fn g(b){ return b; }",
       }) {
    Ast a = ast_of(src);
    EXPECT_EQ(inline_intermediates(a), a) << src;
  }
}

TEST(Commute, ReorderedTriplesMatch) {
  EXPECT_EQ(canonicalize_commutative(ast_file("examples/ptriple.alg")),
            canonicalize_commutative(ast_file("examples/ptriple_reordered.alg")));
  EXPECT_EQ(canonicalize_commutative(ast_of("fn h(a,b){ return a+b; }")),
            canonicalize_commutative(ast_of("fn h(a,b){ return b+a; }")));
}

TEST(Commute, NonCommutativeAndUnsafeUntouched) {
  Ast sub = ast_of("fn h(a,b){ return a - b; }");
  EXPECT_EQ(canonicalize_commutative(sub), sub);
  Ast sub2 = ast_of("fn h(a,b){ return b - a; }");
  EXPECT_EQ(canonicalize_commutative(sub2), sub2);
  // a guarded division must keep its guard first
  Ast guarded = ast_of("fn h(a){ return a != 0 && 10 / a > 1; }");
  Ast flipped = ast_of("fn h(a){ return 10 / a > 1 && a != 0; }");
  EXPECT_NE(canonicalize_commutative(guarded), canonicalize_commutative(flipped));
  EXPECT_EQ(canonicalize_commutative(guarded).functions[0].children.back().children[0]
                .children[0].children[0].op,
            Op::Ne);
}

TEST(Commute, StructuralHashSeparatesTrees) {
  Ast a = ast_of("fn f(a,b){ return a + b; }");
  Ast b = ast_of("fn f(a,b){ return b + a; }");
  Ast c = ast_of("fn f(a,b){ return a + b; }");
  EXPECT_EQ(structural_hash(a.functions[0]), structural_hash(c.functions[0]));
  EXPECT_NE(structural_hash(a.functions[0]), structural_hash(b.functions[0]));
}

TEST(Normalize, ComposedVariantsReachPlainTriple) {
  Ast plain = alpha_canonicalize(ast_file("examples/ptriple.alg"));
  EXPECT_EQ(normalize(ast_file("examples/ptriple_combined.alg")), plain);
  EXPECT_EQ(normalize(ast_file("examples/ptriple_extraneous_pure.alg")), plain);
  EXPECT_EQ(normalize(ast_file("examples/ptriple_intermediate.alg")), plain);
  EXPECT_EQ(normalize(ast_file("examples/ptriple_renamed.alg")), plain);
}

TEST(Normalize, FixedPointInOneRound) {
  Ast n = normalize(ast_file("sort/merge_v3_intermediate.alg"));
  PassConfig one;
  one.max_iterations = 1;
  EXPECT_EQ(normalize(n, one), n);
}

TEST(Normalize, IdempotentOnCorpus) {
  PassConfig with_commute;
  with_commute.commute = true;
  for (const auto& path : corpus_files()) {
    Ast a = parse(SourceUnit::from_file(path));
    Ast n = normalize(a);
    EXPECT_EQ(normalize(n), n) << path;
    Ast c = normalize(a, with_commute);
    EXPECT_EQ(normalize(c, with_commute), c) << path;
  }
}

TEST(Normalize, IdempotentOnGeneratedPrograms) {
  ProgramGen gen(77);
  PassConfig with_commute;
  with_commute.commute = true;
  with_commute.max_iterations = 20;
  for (int k = 0; k < 300; ++k) {
    Ast a = parse(SourceUnit::from_text(gen.program()));
    Ast n = normalize(a, with_commute);
    ASSERT_EQ(normalize(n, with_commute), n) << show(a);
  }
}

TEST(Normalize, VariantsCollapseToBaseline) {
  for (const char* dir : {"sort", "search", "primes"}) {
    for (const auto& e : std::filesystem::directory_iterator(corpus_path(dir))) {
      std::string name = e.path().filename().string();
      auto at = name.find("_v0_baseline");
      if (at == std::string::npos) continue;
      std::string stem = name.substr(0, at);
      Ast base = normalize(parse(SourceUnit::from_file(e.path())));
      for (const char* v : {"_v1_renamed", "_v2_deadcode", "_v3_intermediate"}) {
        auto other = e.path().parent_path() / (stem + v + ".alg");
        EXPECT_EQ(lower(normalize(parse(SourceUnit::from_file(other)))).bytes(), lower(base).bytes())
            << other;
      }
    }
  }
}

TEST(Normalize, PassesPreserveGeneratedOutcomes) {
  ProgramGen gen(99);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    std::string text = gen.program();
    Ast a = parse(SourceUnit::from_text(text));
    std::vector<std::vector<Value>> inputs;
    for (int t = 0; t < 3; ++t) inputs.push_back(gen.arguments());
    for (const auto& [name, pass] : all_passes()) {
      Ast b = pass(a);
      InstructionStream s = lower(b);
      for (const auto& args : inputs) {
        RefOutcome before = reference_eval(a, "f", args);
        if (!std::holds_alternative<Value>(before)) continue;
        // the VM runs the transformed program; the oracle runs the original
        EvalReport after = evaluate(s, "f", args);
        ASSERT_TRUE(same_outcome(before, after.outcome))
            << name << "\n" << text << "\n--- becomes ---\n" << show(b);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 3000);
}

TEST(PassConfig, ListRoundTrip) {
  PassConfig d;
  EXPECT_EQ(d.to_list(), "alpha,dce,inline");
  EXPECT_EQ(PassConfig::from_list(d.to_list()), d);
  PassConfig c = PassConfig::from_list("commute, alpha");
  EXPECT_TRUE(c.commute);
  EXPECT_TRUE(c.alpha);
  EXPECT_FALSE(c.dce);
  EXPECT_EQ(PassConfig::from_list("").to_list(), "");
  EXPECT_EQ(PassConfig::from_list("none").to_list(), "");
  EXPECT_THROW(PassConfig::from_list("alpha,fold"), ConfigError);
  PassConfig bad;
  bad.max_iterations = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
}
