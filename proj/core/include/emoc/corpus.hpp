#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "emoc/embedding.hpp"
#include "emoc/lang.hpp"
#include "emoc/probes.hpp"
#include "emoc/runner.hpp"
#include "emoc/vm.hpp"

namespace emoc {

struct ManifestEntry {
  /// Defaults to the file stem of `path`.
  std::string id;
  std::filesystem::path path;
  std::string entry;
  std::string label;
  std::string variant;
};

/// A validated list of labelled programs for one problem. Paths are resolved
/// relative to the manifest file and every program is parsed on load.
struct CorpusManifest {
  Problem problem = Problem::SortAscending;
  std::filesystem::path location;
  std::vector<ManifestEntry> entries;
  std::vector<Program> programs;

  std::map<std::string, std::string> labels() const;
};

/// Throws ConfigError (missing file, malformed JSON, duplicate path, empty
/// label, arity mismatch) or the parse error of the offending entry, with the
/// entry path prefixed.
CorpusManifest load_manifest(const std::filesystem::path& path);

struct CorpusEmbedding {
  std::vector<EmocVector> rows;
  /// "id: reason" for entries that could not be embedded.
  std::vector<std::string> failures;
};

/// One vector per entry, in manifest order, all against one shared suite.
/// Entries are embedded on `workers` threads (0: one per hardware thread);
/// the result does not depend on the worker count.
/// Throws ConfigError for an empty manifest.
CorpusEmbedding embed_corpus(const CorpusManifest& manifest, const EmocConfig& cfg,
                             const SizeSchedule& schedule, std::uint64_t seed,
                             const Budgets& budgets = {}, ReportCache* cache = nullptr,
                             std::size_t workers = 0);

}  // namespace emoc
