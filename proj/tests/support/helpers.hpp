#pragma once

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "emoc/bytecode.hpp"
#include "emoc/lang.hpp"
#include "emoc/value.hpp"
#include "emoc/vm.hpp"

namespace emoc {

inline void PrintTo(const Ast& ast, std::ostream* os) { *os << "\n" << render(ast).text; }

}  // namespace emoc

namespace emoc::testing {

inline std::filesystem::path corpus_path(std::string_view relative) {
  return std::filesystem::path(EMOC_CORPUS_DIR) / relative;
}

inline Program program_text(std::string_view text, std::string entry = {}) {
  return Program::from_source(SourceUnit::from_text(text), std::move(entry));
}

inline Program program_file(std::string_view relative, std::string entry = {}) {
  return Program::from_source(SourceUnit::from_file(corpus_path(relative)), std::move(entry));
}

inline EvalReport run_text(std::string_view text, const std::vector<Value>& args = {},
                           const Budgets& budgets = {}) {
  Program p = program_text(text);
  return evaluate(lower(p.ast), p.entry, args, budgets);
}

inline std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> files;
  for (const char* dir : {"sort", "search", "primes"})
    for (const auto& e : std::filesystem::directory_iterator(corpus_path(dir)))
      if (e.path().extension() == ".alg") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace emoc::testing
