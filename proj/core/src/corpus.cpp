#include "emoc/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "emoc/error.hpp"

namespace emoc {

std::map<std::string, std::string> CorpusManifest::labels() const {
  std::map<std::string, std::string> out;
  for (const auto& e : entries) out[e.id] = e.label;
  return out;
}

CorpusManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read manifest '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();

  CorpusManifest m;
  m.location = path;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
    m.problem = problem_from_name(j.at("problem").get<std::string>());
    std::set<std::string> paths, ids;
    for (const auto& ej : j.at("entries")) {
      ManifestEntry e;
      e.path = ej.at("path").get<std::string>();
      e.label = ej.at("label").get<std::string>();
      e.entry = ej.value("entry", "");
      e.variant = ej.value("variant", "");
      e.id = ej.value("id", e.path.stem().string());
      if (e.label.empty()) throw ConfigError("entry '" + e.path.string() + "' has an empty label");
      if (!paths.insert(e.path.lexically_normal().string()).second)
        throw ConfigError("duplicate path '" + e.path.string() + "' in manifest");
      if (!ids.insert(e.id).second) throw ConfigError("duplicate id '" + e.id + "' in manifest");
      m.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed manifest '" + path.string() + "': " + e.what());
  }

  std::size_t arity = problem_spec(m.problem).arity;
  auto base = path.parent_path();
  for (const auto& e : m.entries) {
    auto file = e.path.is_absolute() ? e.path : base / e.path;
    Program p;
    try {
      p = Program::from_source(SourceUnit::from_file(file), e.entry);
    } catch (const SyntaxError& err) {
      throw SyntaxError(file.string(), err);
    } catch (const ResolveError& err) {
      throw ResolveError(file.string() + ": " + err.what());
    }
    if (p.entry_function().children.size() - 1 != arity)
      throw ConfigError(file.string() + ": entry '" + p.entry + "' does not take " +
                        std::to_string(arity) + " argument(s)");
    p.id = e.id;
    p.label = e.label;
    p.problem = std::string(problem_name(m.problem));
    m.programs.push_back(std::move(p));
  }
  return m;
}

CorpusEmbedding embed_corpus(const CorpusManifest& manifest, const EmocConfig& cfg,
                             const SizeSchedule& schedule, std::uint64_t seed,
                             const Budgets& budgets, ReportCache* cache, std::size_t workers) {
  if (manifest.programs.empty()) throw ConfigError("manifest has no entries");
  cfg.validate();
  budgets.validate();
  ReportCache local;
  if (!cache) cache = &local;
  ProbeSuite suite = build_probe_suite(manifest.problem, schedule, seed);

  std::size_t n = manifest.programs.size();
  std::vector<std::optional<EmocVector>> rows(n);
  std::vector<std::string> reasons(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const Program& p = manifest.programs[i];
      try {
        rows[i] = embed(p, suite, cfg, budgets, cache);
      } catch (const EvalError& err) {
        reasons[i] = p.id + ": " + err.what();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
  }

  CorpusEmbedding out;
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    if (rows[i]) out.rows.push_back(std::move(*rows[i]));
    else out.failures.push_back(std::move(reasons[i]));
  }
  return out;
}

}  // namespace emoc
