#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emoc/bytecode.hpp"
#include "emoc/lang.hpp"
#include "emoc/normalize.hpp"
#include "emoc/probes.hpp"
#include "emoc/runner.hpp"
#include "emoc/vm.hpp"

namespace emoc {

enum class OMode : std::uint8_t {
  /// 1 if the opcode executed on any probe.
  Binary,
  /// Total executions of the opcode summed over the suite.
  Counts,
};

std::string_view o_mode_name(OMode mode);
OMode o_mode_from_name(std::string_view name);

/// Non-negative block weights of the distance; not all zero.
struct DistanceWeights {
  double e = 1.0;
  double m = 1.0;
  double o = 1.0;
  double c = 1.0;

  void validate() const;
  friend bool operator==(const DistanceWeights&, const DistanceWeights&) = default;
};

/// ADD ... LIST_LEN: the 21 data-manipulating opcodes. Control flow and
/// variable traffic are excluded because every program exercises them.
std::vector<Opcode> default_o_alphabet();

struct EmocConfig {
  std::vector<Opcode> o_alphabet = default_o_alphabet();
  OMode o_mode = OMode::Binary;
  DistanceWeights weights;
  PassConfig passes;

  void validate() const;
  /// Identifies the vector layout: alphabet, o-mode and exponent count.
  std::string fingerprint(std::size_t exponent_count) const;
};

/// The E/M/O/C embedding of one program.
struct EmocVector {
  std::string id;
  std::string label;
  std::string problem;
  double e = 0.0;
  std::vector<double> m;
  std::vector<double> o;
  std::vector<double> c;
  std::string suite_fingerprint;
  std::string config_fingerprint;

  std::size_t size() const { return 1 + m.size() + o.size() + c.size(); }
  /// e, m..., o..., c... in CSV column order.
  std::vector<double> flatten() const;

  friend bool operator==(const EmocVector&, const EmocVector&) = default;
};

/// exponent_i = log(x_{i+1} / x_i) / log(size_{i+1} / size_i).
/// Throws ConfigError on non-positive measurements or mismatched lengths.
std::vector<double> scaling_exponents(std::span<const double> measurements,
                                      std::span<const std::int64_t> sizes);
std::vector<double> scaling_exponents(std::span<const double> measurements,
                                      const SizeSchedule& schedule);

/// Median; the mean of the two middle elements for even counts.
double median(std::vector<double> values);

/// Normalizes per cfg.passes, lowers, evaluates every probe and assembles the
/// vector. Throws EvalError if fewer than two sizes complete within budgets.
EmocVector embed(const Program& program, const ProbeSuite& suite, const EmocConfig& cfg = {},
                 const Budgets& budgets = {}, ReportCache* cache = nullptr);

/// Weighted Euclidean distance:
///   sqrt(wE*de^2 + wM*sum dm^2 + (wO/K)*sum do^2 + wC*sum dc^2).
/// Throws ConfigError if the vectors have different config fingerprints.
double distance(const EmocVector& u, const EmocVector& v, const DistanceWeights& w = {});

// Embedding tables.
std::string embeddings_to_csv(std::span<const EmocVector> rows);
std::string embeddings_to_json(std::span<const EmocVector> rows);
std::vector<EmocVector> embeddings_from_csv(std::string_view text);
std::vector<EmocVector> embeddings_from_json(std::string_view text);
/// Chooses JSON or CSV by content.
std::vector<EmocVector> load_embeddings(const std::string& path);

}  // namespace emoc
