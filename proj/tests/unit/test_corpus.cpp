#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "emoc/config.hpp"
#include "emoc/corpus.hpp"
#include "emoc/error.hpp"
#include "helpers.hpp"

using namespace emoc;
using namespace emoc::testing;

namespace {

// writes a manifest into a scratch directory next to a copy of one program
class ManifestDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("emoc_manifest_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
    std::filesystem::copy_file(corpus_path("sort/bubble_v0_baseline.alg"), dir_ / "bubble.alg",
                               std::filesystem::copy_options::overwrite_existing);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name, std::ios::binary) << text;
    return dir_ / name;
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST(Manifests, ShippedCorpora) {
  struct Want {
    const char* file;
    Problem problem;
    std::size_t labels;
  };
  for (Want w : {Want{"sort.json", Problem::SortAscending, 6}, Want{"search.json", Problem::SearchIndex, 3},
                 Want{"primes.json", Problem::IsPrime, 3}}) {
    CorpusManifest m = load_manifest(corpus_path(w.file));
    EXPECT_EQ(m.problem, w.problem);
    EXPECT_EQ(m.entries.size(), w.labels * 5) << w.file;
    EXPECT_EQ(m.programs.size(), m.entries.size());
    std::set<std::string> labels, variants;
    for (const auto& e : m.entries) {
      labels.insert(e.label);
      variants.insert(e.variant);
    }
    EXPECT_EQ(labels.size(), w.labels);
    EXPECT_EQ(variants, (std::set<std::string>{"baseline", "renamed", "deadcode", "intermediate", "commuted"}));
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
      EXPECT_EQ(m.programs[i].id, m.entries[i].id);
      EXPECT_EQ(m.programs[i].label, m.entries[i].label);
    }
    EXPECT_EQ(m.labels().size(), m.entries.size());
  }
}

TEST_F(ManifestDir, DefaultsAndRelativePaths) {
  auto path = write("m.json",
                    R"({"problem": "sort", "entries": [{"path": "bubble.alg", "label": "bubble"}]})");
  CorpusManifest m = load_manifest(path);
  ASSERT_EQ(m.entries.size(), 1u);
  EXPECT_EQ(m.entries[0].id, "bubble");
  EXPECT_EQ(m.programs[0].entry, "bubble_sort");
  EXPECT_EQ(m.programs[0].problem, "sort_ascending");
}

TEST_F(ManifestDir, Rejections) {
  EXPECT_THROW(load_manifest(dir_ / "absent.json"), ConfigError);
  EXPECT_THROW(load_manifest(write("bad.json", "{ nope")), ConfigError);
  EXPECT_THROW(load_manifest(write("missing.json",
                                   R"({"problem": "sort", "entries": [{"path": "gone.alg", "label": "x"}]})")),
               Error);
  EXPECT_THROW(load_manifest(write("dup.json", R"({"problem": "sort", "entries": [
      {"path": "bubble.alg", "label": "a", "id": "one"},
      {"path": "./bubble.alg", "label": "a", "id": "two"}]})")),
               ConfigError);
  EXPECT_THROW(load_manifest(write("empty_label.json",
                                   R"({"problem": "sort", "entries": [{"path": "bubble.alg", "label": ""}]})")),
               ConfigError);
  EXPECT_THROW(load_manifest(write("arity.json",
                                   R"({"problem": "search", "entries": [{"path": "bubble.alg", "label": "a"}]})")),
               ConfigError);
  EXPECT_THROW(load_manifest(write("problem.json", R"({"problem": "factor", "entries": []})")), ConfigError);
  write("broken.alg", "fn f(xs) {\n  return xs\n}\n");
  EXPECT_THROW(load_manifest(write("syntax.json",
                                   R"({"problem": "sort", "entries": [{"path": "broken.alg", "label": "a"}]})")),
               SyntaxError);
}

TEST_F(ManifestDir, EmptyManifestCannotBeEmbedded) {
  CorpusManifest m = load_manifest(write("none.json", R"({"problem": "sort", "entries": []})"));
  EXPECT_TRUE(m.entries.empty());
  EXPECT_THROW(embed_corpus(m, {}, SizeSchedule{8, 2.0, 3}, 7), ConfigError);
}

TEST(EmbedCorpus, RowsFollowManifestOrder) {
  CorpusManifest m = load_manifest(corpus_path("search.json"));
  ReportCache cache;
  CorpusEmbedding a = embed_corpus(m, {}, SizeSchedule{8, 2.0, 4}, 7, {}, &cache);
  ASSERT_TRUE(a.failures.empty());
  ASSERT_EQ(a.rows.size(), m.entries.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].id, m.entries[i].id);
    EXPECT_EQ(a.rows[i].label, m.entries[i].label);
    EXPECT_EQ(a.rows[i].e, 0.0);
  }
  CorpusEmbedding b = embed_corpus(m, {}, SizeSchedule{8, 2.0, 4}, 7);
  EXPECT_EQ(embeddings_to_csv(a.rows), embeddings_to_csv(b.rows));
}

TEST(EmbedCorpus, WorkerCountDoesNotChangeOutput) {
  CorpusManifest m = load_manifest(corpus_path("sort.json"));
  SizeSchedule s{8, 2.0, 5};
  CorpusEmbedding one = embed_corpus(m, {}, s, 7, {}, nullptr, 1);
  for (std::size_t w : {2u, 5u, 64u}) {
    ReportCache shared;
    CorpusEmbedding many = embed_corpus(m, {}, s, 7, {}, &shared, w);
    EXPECT_EQ(embeddings_to_csv(many.rows), embeddings_to_csv(one.rows)) << w;
  }
}

TEST(EmbedCorpus, BudgetFailuresAreReportedNotThrown) {
  CorpusManifest m = load_manifest(corpus_path("sort.json"));
  Budgets tiny;
  tiny.max_steps = 50;
  CorpusEmbedding out = embed_corpus(m, {}, SizeSchedule{8, 2.0, 3}, 7, tiny);
  EXPECT_TRUE(out.rows.empty());
  EXPECT_EQ(out.failures.size(), m.entries.size());
  EXPECT_EQ(out.failures[0].rfind("bubble_v0_baseline: ", 0), 0u);
  EXPECT_EQ(out.failures.back().rfind(m.entries.back().id + ": ", 0), 0u);
}

TEST(Config, JsonForm) {
  EmocConfig c = parse_config(
      R"({"o_alphabet": ["ADD", "LIST_PUSH"], "o_mode": "counts", "w_e": 2, "w_o": 0.5,
          "passes": ["alpha", "commute"], "max_iterations": 3})");
  EXPECT_EQ(c.o_alphabet, (std::vector<Opcode>{Opcode::ADD, Opcode::LIST_PUSH}));
  EXPECT_EQ(c.o_mode, OMode::Counts);
  EXPECT_EQ(c.weights, (DistanceWeights{2.0, 1.0, 0.5, 1.0}));
  EXPECT_TRUE(c.passes.alpha);
  EXPECT_TRUE(c.passes.commute);
  EXPECT_FALSE(c.passes.dce);
  EXPECT_EQ(c.passes.max_iterations, 3);
}

TEST(Config, KeyValueForm) {
  EmocConfig c = parse_config(
      "# weights\n"
      "w_m = 0.25\n"
      "o_mode = \"binary\"\n"
      "passes = [\"dce\"]\n"
      "\n");
  EXPECT_EQ(c.weights.m, 0.25);
  EXPECT_EQ(c.o_mode, OMode::Binary);
  EXPECT_EQ(c.passes.to_list(), "dce");
  EXPECT_EQ(c.o_alphabet, default_o_alphabet());
}

TEST(Config, Rejections) {
  EXPECT_THROW(parse_config("speed = 3\n"), ConfigError);
  EXPECT_THROW(parse_config(R"({"w_e": -1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"o_alphabet": ["JUMP_FAR"]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"o_mode": "bits"})"), ConfigError);
  EXPECT_THROW(parse_config("w_e 3\n"), ConfigError);
  EXPECT_THROW(parse_config(R"({"w_e": 0, "w_m": 0, "w_o": 0, "w_c": 0})"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/emoc.toml"), ConfigError);
}
