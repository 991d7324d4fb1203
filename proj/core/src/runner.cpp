#include "emoc/runner.hpp"

#include "emoc/util.hpp"

namespace emoc {

std::shared_ptr<const SuiteRun> ReportCache::find(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = runs_.find(key);
  if (it == runs_.end()) return nullptr;
  ++hits_;
  return it->second;
}

void ReportCache::store(const std::string& key, std::shared_ptr<const SuiteRun> run) {
  std::lock_guard lock(mutex_);
  runs_.emplace(key, std::move(run));
}

std::size_t ReportCache::size() const {
  std::lock_guard lock(mutex_);
  return runs_.size();
}

std::size_t ReportCache::hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

std::shared_ptr<const SuiteRun> run_suite(const InstructionStream& stream, std::string_view entry,
                                          const ProbeSuite& suite, const Budgets& budgets,
                                          ReportCache* cache) {
  std::string key;
  if (cache) {
    key = hex64(Fnv1a().bytes(stream.bytes()).digest()) + "/" + std::string(entry) + "/" +
          std::to_string(budgets.max_steps) + "/" + std::to_string(budgets.max_cells) + "/" +
          std::to_string(budgets.max_call_depth) + "/" + suite.fingerprint();
    if (auto hit = cache->find(key)) return hit;
  }

  auto run = std::make_shared<SuiteRun>();
  const auto& probes = suite.probes;
  for (std::size_t i = 0; i < probes.size();) {
    std::size_t end = i;
    bool exhausted = false;
    while (end < probes.size() && probes[end].size == probes[i].size) {
      run->reports.push_back(evaluate(stream, entry, probes[end].args, budgets));
      exhausted |= run->reports.back().exhausted();
      ++end;
    }
    i = end;
    if (exhausted && i < probes.size()) {
      run->truncated = true;
      break;
    }
  }

  if (cache) cache->store(key, run);
  return run;
}

}  // namespace emoc
