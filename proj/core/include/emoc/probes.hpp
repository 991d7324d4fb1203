#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emoc/value.hpp"

namespace emoc {

enum class Problem : std::uint8_t { SortAscending, SearchIndex, IsPrime };

/// Geometric input-size schedule: size_i = round(s0 * ratio^i), i < count.
struct SizeSchedule {
  std::int64_t s0 = 8;
  double ratio = 2.0;
  int count = 10;

  std::vector<std::int64_t> sizes() const;
  void validate() const;

  /// Parses "8x2^10" (s0 x ratio ^ count).
  static SizeSchedule parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const SizeSchedule&, const SizeSchedule&) = default;
};

/// Static description of a bundled problem.
struct ProblemSpec {
  Problem id;
  std::string_view name;
  std::size_t arity;
  /// What "size" means for this problem.
  std::string_view size_semantics;
  SizeSchedule default_schedule;
  Value (*oracle)(std::span<const Value> args);
};

const ProblemSpec& problem_spec(Problem problem);
/// Accepts full names (sort_ascending, search_index, is_prime) and the short
/// aliases sort, search, prime/primes.
Problem problem_from_name(std::string_view name);
std::string_view problem_name(Problem problem);

enum class CaseTag : std::uint8_t { Worst, Best, Random };
std::string_view case_tag_name(CaseTag tag);

struct Probe {
  std::int64_t size = 0;
  CaseTag tag = CaseTag::Random;
  std::vector<Value> args;
  Value oracle;

  friend bool operator==(const Probe&, const Probe&) = default;
};

/// The finite input domain: per size, worst / best / seeded-random cases in
/// that order, each with its precomputed oracle output. Sizes ascend.
struct ProbeSuite {
  Problem problem = Problem::SortAscending;
  SizeSchedule schedule;
  std::uint64_t seed = 0;
  std::vector<Probe> probes;

  std::vector<std::int64_t> sizes() const { return schedule.sizes(); }
  std::string to_json() const;
  static ProbeSuite from_json(std::string_view text);
  std::string fingerprint() const;

  friend bool operator==(const ProbeSuite&, const ProbeSuite&) = default;
};

ProbeSuite build_probe_suite(Problem problem, const SizeSchedule& schedule, std::uint64_t seed,
                             std::size_t randoms_per_size = 3);

/// Ground truth. sort: ascending permutation; search: least index of the
/// target or -1; is_prime: primality. Throws ConfigError on shape mismatch.
Value oracle_output(Problem problem, std::span<const Value> args);

/// Deterministic trial division.
bool is_prime_u64(std::uint64_t n);
/// Largest prime strictly below 2^bits (bits in [2, 62]).
std::uint64_t largest_prime_below_pow2(int bits);

}  // namespace emoc
