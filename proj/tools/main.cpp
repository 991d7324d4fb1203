#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "emoc/analyze.hpp"
#include "emoc/config.hpp"
#include "emoc/corpus.hpp"
#include "emoc/embedding.hpp"
#include "emoc/equiv.hpp"
#include "emoc/error.hpp"
#include "emoc/json.hpp"
#include "emoc/normalize.hpp"
#include "emoc/probes.hpp"
#include "emoc/vm.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kEval = 3, kUnequal = 4 };

struct Common {
  std::string out;
  std::string config;
  std::uint64_t seed = 7;
  emoc::Budgets budgets;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(c.out, std::ios::binary | std::ios::trunc);
  if (!out) throw emoc::ConfigError("cannot write '" + c.out + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

emoc::EmocConfig load_cfg(const Common& c) {
  return c.config.empty() ? emoc::EmocConfig{} : emoc::load_config(c.config);
}

emoc::Program load_program(const std::string& path, const std::string& entry) {
  auto p = emoc::Program::from_source(emoc::SourceUnit::from_file(path), entry);
  p.id = std::filesystem::path(path).stem().string();
  return p;
}

emoc::SizeSchedule schedule_for(emoc::Problem problem, const std::string& sizes) {
  return sizes.empty() ? emoc::problem_spec(problem).default_schedule
                       : emoc::SizeSchedule::parse(sizes);
}

void add_budgets(CLI::App* cmd, Common& c) {
  cmd->add_option("--max-steps", c.budgets.max_steps, "Instruction budget per probe");
  cmd->add_option("--max-cells", c.budgets.max_cells, "Live memory cell budget");
  cmd->add_option("--max-depth", c.budgets.max_call_depth, "Call depth budget");
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-o,--out", c.out, "Write output to PATH instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"emoc: program equivalence and E/M/O/C embeddings for MiniAlg"};
  app.require_subcommand(1);
  Common c;
  int status = kOk;

  // parse
  std::string file, file_b, entry, entry_b, passes = "alpha,dce,inline", problem, sizes;
  int max_iterations = 5;
  auto* parse = app.add_subcommand("parse", "Parse a program and print its syntax tree as JSON");
  parse->add_option("file", file, "Source file")->required();
  bool render = false;
  parse->add_flag("--render", render, "Print canonical source instead of JSON");
  add_common(parse, c);
  parse->callback([&] {
    auto ast = emoc::parse(emoc::SourceUnit::from_file(file));
    emit(c, render ? emoc::render(ast).text : emoc::ast_to_json(ast).dump(2));
  });

  auto* norm = app.add_subcommand("normalize", "Run normalization passes and print the result");
  norm->add_option("file", file, "Source file")->required();
  norm->add_option("--passes", passes, "Comma-separated subset of alpha,dce,inline,commute")
      ->capture_default_str();
  norm->add_option("--max-iterations", max_iterations, "Fixed-point iteration bound")
      ->capture_default_str();
  std::string norm_emit = "source";
  norm->add_option("--emit", norm_emit, "source | ast | instructions")
      ->check(CLI::IsMember({"source", "ast", "instructions"}))
      ->capture_default_str();
  add_common(norm, c);
  norm->callback([&] {
    auto cfg = emoc::PassConfig::from_list(passes);
    cfg.max_iterations = max_iterations;
    auto ast = emoc::normalize(emoc::parse(emoc::SourceUnit::from_file(file)), cfg);
    if (norm_emit == "ast") emit(c, emoc::ast_to_json(ast).dump(2));
    else if (norm_emit == "instructions") emit(c, emoc::lower(ast).disassemble());
    else emit(c, emoc::render(ast).text);
  });

  std::string args_json = "[]";
  std::string run_passes;
  auto* run = app.add_subcommand("run", "Evaluate one function and print the report as JSON");
  run->add_option("file", file, "Source file")->required();
  run->add_option("--entry", entry, "Entry function (default: first)");
  run->add_option("--args", args_json, "Arguments as a JSON array")->capture_default_str();
  run->add_option("--passes", run_passes, "Normalize with these passes before running");
  add_budgets(run, c);
  add_common(run, c);
  run->callback([&] {
    auto program = load_program(file, entry);
    emoc::Ast ast = run_passes.empty() ? program.ast
                                       : emoc::normalize(program.ast, emoc::PassConfig::from_list(run_passes));
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(args_json);
    } catch (const nlohmann::json::exception& e) {
      throw emoc::ConfigError(std::string("--args is not valid JSON: ") + e.what());
    }
    if (!j.is_array()) throw emoc::ConfigError("--args must be a JSON array");
    std::vector<emoc::Value> args;
    for (const auto& a : j) args.push_back(emoc::value_from_json(a));
    auto report = emoc::evaluate(emoc::lower(ast), program.entry, args, c.budgets);
    emit(c, emoc::report_to_json(report).dump(2));
    if (!report.completed()) status = kEval;
  });

  std::size_t randoms = 3;
  auto* probes = app.add_subcommand("probes", "Build a probe suite and print it as JSON");
  probes->add_option("--problem", problem, "sort | search | is_prime")->required();
  probes->add_option("--sizes", sizes, "Schedule S0xR^N (default per problem)");
  probes->add_option("--seed", c.seed, "Generator seed")->capture_default_str();
  probes->add_option("--randoms", randoms, "Random cases per size")->capture_default_str();
  add_common(probes, c);
  probes->callback([&] {
    auto p = emoc::problem_from_name(problem);
    emit(c, emoc::build_probe_suite(p, schedule_for(p, sizes), c.seed, randoms).to_json());
  });

  std::string relation = "ast", mode = "raw";
  auto* equiv = app.add_subcommand("equiv", "Decide one equivalence relation between two programs");
  equiv->add_option("a", file, "First program")->required();
  equiv->add_option("b", file_b, "Second program")->required();
  equiv->add_option("--relation", relation, "encoding | ast | instr | functional")->capture_default_str();
  equiv->add_option("--mode", mode, "raw | normalized")->capture_default_str();
  equiv->add_option("--passes", passes, "Passes for normalized mode")->capture_default_str();
  equiv->add_option("--problem", problem, "Problem whose suite decides functional equivalence");
  equiv->add_option("--sizes", sizes, "Suite schedule S0xR^N");
  equiv->add_option("--seed", c.seed, "Suite seed")->capture_default_str();
  equiv->add_option("--entry", entry, "Entry of the first program");
  equiv->add_option("--entry-b", entry_b, "Entry of the second program (default: --entry)");
  add_budgets(equiv, c);
  add_common(equiv, c);
  equiv->callback([&] {
    auto rel = emoc::relation_from_name(relation);
    auto m = emoc::mode_from_name(mode);
    auto pc = emoc::PassConfig::from_list(passes);
    emoc::EquivVerdict v;
    if (rel == emoc::Relation::Encoding) {
      v = emoc::encoding_equivalent(emoc::SourceUnit::from_file(file), emoc::SourceUnit::from_file(file_b));
    } else {
      auto a = load_program(file, entry);
      auto b = load_program(file_b, entry_b.empty() ? entry : entry_b);
      if (rel == emoc::Relation::Ast) {
        v = emoc::ast_equivalent(a.ast, b.ast, m, pc);
      } else if (rel == emoc::Relation::Instruction) {
        v = emoc::instruction_equivalent(a.ast, b.ast, m, pc);
      } else {
        if (problem.empty()) throw emoc::ConfigError("--problem is required for functional equivalence");
        auto p = emoc::problem_from_name(problem);
        auto suite = emoc::build_probe_suite(p, schedule_for(p, sizes), c.seed);
        v = emoc::functional_equivalent(a, b, suite, c.budgets, m, pc);
      }
    }
    emit(c, emoc::verdict_to_json(v).dump(2));
    if (!v.equal) status = kUnequal;
  });

  std::string format = "csv", id, label;
  auto* embed = app.add_subcommand("embed", "Embed one program");
  embed->add_option("file", file, "Source file")->required();
  embed->add_option("--problem", problem, "sort | search | is_prime")->required();
  embed->add_option("--entry", entry, "Entry function (default: first)");
  embed->add_option("--id", id, "Row id (default: file stem)");
  embed->add_option("--label", label, "Row label");
  embed->add_option("--sizes", sizes, "Suite schedule S0xR^N");
  embed->add_option("--seed", c.seed, "Suite seed")->capture_default_str();
  embed->add_option("--config", c.config, "EmocConfig file (JSON or key = value)");
  embed->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  add_budgets(embed, c);
  add_common(embed, c);
  embed->callback([&] {
    auto p = emoc::problem_from_name(problem);
    auto program = load_program(file, entry);
    if (!id.empty()) program.id = id;
    program.label = label;
    auto suite = emoc::build_probe_suite(p, schedule_for(p, sizes), c.seed);
    std::vector<emoc::EmocVector> rows{emoc::embed(program, suite, load_cfg(c), c.budgets)};
    emit(c, format == "csv" ? emoc::embeddings_to_csv(rows) : emoc::embeddings_to_json(rows));
  });

  auto* corpus = app.add_subcommand("embed-corpus", "Embed every program of a manifest");
  corpus->add_option("manifest", file, "Manifest JSON")->required();
  corpus->add_option("--sizes", sizes, "Suite schedule S0xR^N");
  corpus->add_option("--seed", c.seed, "Suite seed")->capture_default_str();
  corpus->add_option("--config", c.config, "EmocConfig file (JSON or key = value)");
  corpus->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  std::size_t jobs = 0;
  corpus->add_option("-j,--jobs", jobs, "Worker threads (0: one per hardware thread)")->capture_default_str();
  add_budgets(corpus, c);
  add_common(corpus, c);
  corpus->callback([&] {
    auto manifest = emoc::load_manifest(file);
    auto table = emoc::embed_corpus(manifest, load_cfg(c), schedule_for(manifest.problem, sizes), c.seed,
                                    c.budgets, nullptr, jobs);
    emit(c, format == "csv" ? emoc::embeddings_to_csv(table.rows) : emoc::embeddings_to_json(table.rows));
    for (const auto& f : table.failures) std::cerr << "emoc: failed to embed " << f << '\n';
    if (!table.failures.empty()) status = kEval;
  });

  std::string query, other;
  auto* dist = app.add_subcommand("dist", "Distance between two rows of an embedding table");
  dist->add_option("embeddings", file, "Embedding CSV or JSON")->required();
  dist->add_option("a", query, "First id")->required();
  dist->add_option("b", other, "Second id")->required();
  dist->add_option("--config", c.config, "EmocConfig file supplying the weights");
  add_common(dist, c);
  dist->callback([&] {
    auto rows = emoc::load_embeddings(file);
    auto find = [&](const std::string& key) -> const emoc::EmocVector& {
      for (const auto& r : rows) {
        if (r.id == key) return r;
      }
      throw emoc::ConfigError("unknown program id '" + key + "'");
    };
    double d = emoc::distance(find(query), find(other), load_cfg(c).weights);
    emit(c, emoc::ordered_json{{"a", query}, {"b", other}, {"distance", d}}.dump(2));
  });

  std::size_t k = 6, restarts = 32, max_iters = 100;
  std::uint64_t cluster_seed = 42;
  std::string labels;
  auto* cluster = app.add_subcommand("cluster", "K-means over an embedding table");
  cluster->add_option("embeddings", file, "Embedding CSV or JSON")->required();
  cluster->add_option("--k", k, "Number of clusters")->capture_default_str();
  cluster->add_option("--seed", cluster_seed, "Initialization seed")->capture_default_str();
  cluster->add_option("--restarts", restarts, "Seeded restarts")->capture_default_str();
  cluster->add_option("--max-iters", max_iters, "Lloyd iterations per restart")->capture_default_str();
  cluster->add_option("--labels", labels, "Manifest whose labels score the clustering");
  add_common(cluster, c);
  cluster->callback([&] {
    auto rows = emoc::load_embeddings(file);
    auto result = emoc::kmeans_cluster(rows, k, cluster_seed, restarts, max_iters);
    emoc::LabelMap map;
    if (!labels.empty()) {
      map = emoc::load_manifest(labels).labels();
    } else {
      for (const auto& r : rows) {
        if (!r.label.empty()) map[r.id] = r.label;
      }
      if (map.size() != rows.size()) map.clear();
    }
    if (!map.empty()) {
      result.accuracy = emoc::match_accuracy(result, map);
      result.purity = emoc::purity(result, map);
    }
    emit(c, emoc::cluster_to_json(result).dump(2));
  });

  std::size_t top = 5;
  auto* knn = app.add_subcommand("knn", "Nearest neighbors of one row");
  knn->add_option("embeddings", file, "Embedding CSV or JSON")->required();
  knn->add_option("--query", query, "Program id")->required();
  knn->add_option("--top", top, "Number of neighbors")->capture_default_str();
  knn->add_option("--config", c.config, "EmocConfig file supplying the weights");
  add_common(knn, c);
  knn->callback([&] {
    auto rows = emoc::load_embeddings(file);
    auto result = emoc::nearest_neighbors(query, rows, top, load_cfg(c).weights);
    emoc::ordered_json arr = emoc::ordered_json::array();
    for (const auto& n : result) arr.push_back({{"id", n.id}, {"distance", n.distance}});
    emit(c, emoc::ordered_json{{"query", query}, {"neighbors", std::move(arr)}}.dump(2));
  });

  auto* diversity = app.add_subcommand("diversity", "Population statistics of an embedding table");
  diversity->add_option("embeddings", file, "Embedding CSV or JSON")->required();
  diversity->add_option("--config", c.config, "EmocConfig file supplying the weights");
  add_common(diversity, c);
  diversity->callback([&] {
    auto rows = emoc::load_embeddings(file);
    emit(c, emoc::diversity_to_json(emoc::diversity_report(rows, load_cfg(c).weights)).dump(2));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const emoc::SyntaxError& e) {
    std::cerr << "emoc: syntax error: " << e.what() << '\n';
    return kParse;
  } catch (const emoc::ResolveError& e) {
    std::cerr << "emoc: " << e.what() << '\n';
    return kParse;
  } catch (const emoc::EvalError& e) {
    std::cerr << "emoc: " << e.what() << '\n';
    return kEval;
  } catch (const emoc::Error& e) {
    std::cerr << "emoc: " << e.what() << '\n';
    return kUsage;
  }
  return status;
}
