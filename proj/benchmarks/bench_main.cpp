#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include "emoc/analyze.hpp"
#include "emoc/corpus.hpp"
#include "emoc/embedding.hpp"
#include "emoc/normalize.hpp"

using namespace emoc;

namespace {

std::filesystem::path corpus(const char* relative) { return std::filesystem::path(EMOC_CORPUS_DIR) / relative; }

Program load(const char* relative) { return Program::from_source(SourceUnit::from_file(corpus(relative))); }

}  // namespace

// instructions per second on reversed input
static void BM_VmBubbleWorst(benchmark::State& state) {
  Program p = load("sort/bubble_v0_baseline.alg");
  InstructionStream s = lower(p.ast);
  std::vector<std::int64_t> xs(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<std::int64_t>(xs.size() - i);
  std::vector<Value> args{Value::int_list(xs)};
  std::uint64_t steps = 0;
  for (auto _ : state) {
    EvalReport r = evaluate(s, p.entry, args);
    steps += r.steps;
    benchmark::DoNotOptimize(r);
  }
  state.counters["steps/s"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_VmBubbleWorst)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Normalize(benchmark::State& state) {
  Program p = load("sort/merge_v3_intermediate.alg");
  for (auto _ : state) benchmark::DoNotOptimize(normalize(p.ast));
}
BENCHMARK(BM_Normalize);

static void BM_EmbedMerge(benchmark::State& state) {
  Program p = load("sort/merge_v0_baseline.alg");
  ProbeSuite suite = build_probe_suite(Problem::SortAscending, SizeSchedule{8, 2.0, static_cast<int>(state.range(0))}, 7);
  for (auto _ : state) benchmark::DoNotOptimize(embed(p, suite));
}
BENCHMARK(BM_EmbedMerge)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_EmbedSearchCorpus(benchmark::State& state) {
  CorpusManifest m = load_manifest(corpus("search.json"));
  for (auto _ : state)
    benchmark::DoNotOptimize(embed_corpus(m, {}, problem_spec(m.problem).default_schedule, 7));
}
BENCHMARK(BM_EmbedSearchCorpus)->Unit(benchmark::kMillisecond);

static void BM_KMeans(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<EmocVector> pop(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < pop.size(); ++i) {
    pop[i].id = "p" + std::to_string(i);
    pop[i].m.resize(9);
    pop[i].o.resize(21);
    pop[i].c.resize(9);
    for (auto& x : pop[i].m) x = g(rng) + static_cast<double>(i % 6);
    for (auto& x : pop[i].o) x = static_cast<double>(rng() % 2);
    for (auto& x : pop[i].c) x = g(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(kmeans_cluster(pop, 6, 42, 32));
}
BENCHMARK(BM_KMeans)->Arg(60)->Arg(350)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
