#include "emoc/probes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "emoc/error.hpp"
#include "emoc/json.hpp"
#include "emoc/util.hpp"

namespace emoc {

std::vector<std::int64_t> SizeSchedule::sizes() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i)
    out.push_back(std::llround(static_cast<double>(s0) * std::pow(ratio, i)));
  return out;
}

void SizeSchedule::validate() const {
  if (s0 < 1) throw ConfigError("schedule s0 must be >= 1");
  if (!(ratio > 1.0)) throw ConfigError("schedule ratio must be > 1");
  if (count < 2) throw ConfigError("schedule count must be >= 2");
  if (static_cast<double>(s0) * std::pow(ratio, count - 1) > 1e9)
    throw ConfigError("schedule sizes exceed 1e9");
  auto s = sizes();
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] <= s[i - 1])
      throw ConfigError("schedule " + to_string() + " does not give strictly increasing sizes");
  }
}

SizeSchedule SizeSchedule::parse(std::string_view text) {
  auto x = text.find('x');
  auto hat = text.find('^');
  if (x == std::string_view::npos || hat == std::string_view::npos || hat < x)
    throw ConfigError("schedule must look like S0xR^N, e.g. 8x2^10");
  SizeSchedule s;
  auto num = [&](std::string_view part, auto& out) {
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc{} || p != part.data() + part.size() || part.empty())
      throw ConfigError("bad number '" + std::string(part) + "' in schedule");
  };
  num(text.substr(0, x), s.s0);
  num(text.substr(x + 1, hat - x - 1), s.ratio);
  num(text.substr(hat + 1), s.count);
  s.validate();
  return s;
}

std::string SizeSchedule::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%lldx%g^%d", static_cast<long long>(s0), ratio, count);
  return buf;
}

namespace {

void expect_shape(bool ok, std::string_view problem) {
  if (!ok) throw ConfigError("arguments do not match the shape of " + std::string(problem));
}

bool all_ints(const Value& v) {
  return std::all_of(v.items().begin(), v.items().end(), [](const Value& x) { return x.is_int(); });
}

Value sort_oracle(std::span<const Value> args) {
  expect_shape(args.size() == 1 && args[0].is_list() && all_ints(args[0]), "sort_ascending");
  std::vector<std::int64_t> xs;
  for (const auto& v : args[0].items()) xs.push_back(v.as_int());
  std::sort(xs.begin(), xs.end());
  return Value::int_list(xs);
}

Value search_oracle(std::span<const Value> args) {
  expect_shape(args.size() == 2 && args[0].is_list() && all_ints(args[0]) && args[1].is_int(),
               "search_index");
  const auto& xs = args[0].items();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].as_int() == args[1].as_int()) return Value::integer(static_cast<std::int64_t>(i));
  }
  return Value::integer(-1);
}

Value prime_oracle(std::span<const Value> args) {
  expect_shape(args.size() == 1 && args[0].is_int(), "is_prime");
  std::int64_t n = args[0].as_int();
  return Value::boolean(n > 1 && is_prime_u64(static_cast<std::uint64_t>(n)));
}

const ProblemSpec kSpecs[] = {
    {Problem::SortAscending, "sort_ascending", 1, "list length", SizeSchedule{8, 2.0, 10},
     &sort_oracle},
    {Problem::SearchIndex, "search_index", 2, "list length", SizeSchedule{8, 2.0, 10},
     &search_oracle},
    {Problem::IsPrime, "is_prime", 1, "bit length", SizeSchedule{4, 1.2, 10}, &prime_oracle},
};

}  // namespace

const ProblemSpec& problem_spec(Problem problem) { return kSpecs[static_cast<int>(problem)]; }

Problem problem_from_name(std::string_view name) {
  if (name == "sort_ascending" || name == "sort") return Problem::SortAscending;
  if (name == "search_index" || name == "search") return Problem::SearchIndex;
  if (name == "is_prime" || name == "prime" || name == "primes") return Problem::IsPrime;
  throw ConfigError("unknown problem '" + std::string(name) +
                    "' (expected sort_ascending, search_index or is_prime)");
}

std::string_view problem_name(Problem problem) { return problem_spec(problem).name; }

std::string_view case_tag_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::Worst: return "worst";
    case CaseTag::Best: return "best";
    case CaseTag::Random: return "random";
  }
  return "?";
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::uint64_t largest_prime_below_pow2(int bits) {
  if (bits < 2 || bits > 62) throw ConfigError("bit length must be in [2, 62]");
  std::uint64_t n = (std::uint64_t{1} << bits) - 1;
  while (!is_prime_u64(n)) --n;
  return n;
}

Value oracle_output(Problem problem, std::span<const Value> args) {
  return problem_spec(problem).oracle(args);
}

namespace {

std::vector<Value> sort_case(CaseTag tag, std::int64_t n, SplitMix64& rng) {
  std::vector<std::int64_t> xs(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    auto& x = xs[static_cast<std::size_t>(i)];
    switch (tag) {
      case CaseTag::Worst: x = n - i; break;
      case CaseTag::Best: x = i + 1; break;
      case CaseTag::Random: x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(4 * n + 1))); break;
    }
  }
  return {Value::int_list(xs)};
}

std::vector<Value> search_case(CaseTag tag, std::int64_t n, SplitMix64& rng) {
  std::vector<std::int64_t> xs(static_cast<std::size_t>(n));
  if (tag == CaseTag::Random) {
    std::int64_t v = static_cast<std::int64_t>(rng.below(3));
    for (auto& x : xs) {
      x = v;
      v += 1 + static_cast<std::int64_t>(rng.below(3));
    }
    auto pos = rng.below(static_cast<std::uint64_t>(n));
    return {Value::int_list(xs), Value::integer(xs[pos])};
  }
  for (std::int64_t i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = 2 * i;
  std::int64_t target = tag == CaseTag::Worst ? 2 * n - 1 : xs[0];
  return {Value::int_list(xs), Value::integer(target)};
}

std::vector<Value> prime_case(CaseTag tag, std::int64_t bits, SplitMix64& rng) {
  if (bits < 2 || bits > 62) throw ConfigError("is_prime sizes are bit lengths in [2, 62]");
  auto k = static_cast<int>(bits);
  std::uint64_t v = 0;
  switch (tag) {
    case CaseTag::Worst: v = largest_prime_below_pow2(k); break;
    case CaseTag::Best: v = std::uint64_t{1} << k; break;
    case CaseTag::Random: {
      std::uint64_t top = std::uint64_t{1} << (k - 1);
      v = top | rng.below(top) | 1;
      break;
    }
  }
  return {Value::integer(static_cast<std::int64_t>(v))};
}

}  // namespace

ProbeSuite build_probe_suite(Problem problem, const SizeSchedule& schedule, std::uint64_t seed,
                             std::size_t randoms_per_size) {
  schedule.validate();
  ProbeSuite suite{problem, schedule, seed, {}};
  SplitMix64 rng(seed);
  std::vector<CaseTag> tags{CaseTag::Worst, CaseTag::Best};
  tags.insert(tags.end(), randoms_per_size, CaseTag::Random);
  for (std::int64_t size : schedule.sizes()) {
    for (CaseTag tag : tags) {
      Probe p;
      p.size = size;
      p.tag = tag;
      switch (problem) {
        case Problem::SortAscending: p.args = sort_case(tag, size, rng); break;
        case Problem::SearchIndex: p.args = search_case(tag, size, rng); break;
        case Problem::IsPrime: p.args = prime_case(tag, size, rng); break;
      }
      p.oracle = oracle_output(problem, p.args);
      suite.probes.push_back(std::move(p));
    }
  }
  return suite;
}

std::string ProbeSuite::to_json() const {
  ordered_json j;
  j["problem"] = problem_name(problem);
  j["schedule"] = {{"s0", schedule.s0}, {"r", schedule.ratio}, {"n", schedule.count}};
  j["seed"] = seed;
  j["probes"] = ordered_json::array();
  for (const auto& p : probes) {
    ordered_json args = ordered_json::array();
    for (const auto& a : p.args) args.push_back(value_to_json(a));
    j["probes"].push_back({{"size", p.size},
                           {"tag", case_tag_name(p.tag)},
                           {"args", std::move(args)},
                           {"oracle", value_to_json(p.oracle)}});
  }
  return j.dump();
}

ProbeSuite ProbeSuite::from_json(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    ProbeSuite s;
    s.problem = problem_from_name(j.at("problem").get<std::string>());
    const auto& sch = j.at("schedule");
    s.schedule = SizeSchedule{sch.at("s0").get<std::int64_t>(), sch.at("r").get<double>(),
                              sch.at("n").get<int>()};
    s.schedule.validate();
    s.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& pj : j.at("probes")) {
      Probe p;
      p.size = pj.at("size").get<std::int64_t>();
      auto tag = pj.at("tag").get<std::string>();
      if (tag == "worst") p.tag = CaseTag::Worst;
      else if (tag == "best") p.tag = CaseTag::Best;
      else if (tag == "random") p.tag = CaseTag::Random;
      else throw ConfigError("unknown probe tag '" + tag + "'");
      for (const auto& a : pj.at("args")) p.args.push_back(value_from_json(a));
      p.oracle = value_from_json(pj.at("oracle"));
      s.probes.push_back(std::move(p));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid probe suite: ") + e.what());
  }
}

std::string ProbeSuite::fingerprint() const { return hex64(Fnv1a().bytes(to_json()).digest()); }

}  // namespace emoc
