#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "emoc/bytecode.hpp"
#include "emoc/probes.hpp"
#include "emoc/vm.hpp"

namespace emoc {

/// Reports for one (stream, entry, suite, budgets) in suite order. A run stops
/// after the first size in which any probe exhausts a budget, so `reports` may
/// be a prefix of the suite.
struct SuiteRun {
  std::vector<EvalReport> reports;
  bool truncated = false;
};

/// Memoizes suite runs. Evaluation is a pure function of its inputs, so a hit
/// is indistinguishable from re-running. Safe to share between threads.
class ReportCache {
 public:
  std::shared_ptr<const SuiteRun> find(const std::string& key) const;
  void store(const std::string& key, std::shared_ptr<const SuiteRun> run);
  std::size_t size() const;
  std::size_t hits() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const SuiteRun>> runs_;
  mutable std::size_t hits_ = 0;
};

std::shared_ptr<const SuiteRun> run_suite(const InstructionStream& stream, std::string_view entry,
                                          const ProbeSuite& suite, const Budgets& budgets,
                                          ReportCache* cache = nullptr);

}  // namespace emoc
