#include "emoc/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "emoc/error.hpp"
#include "emoc/util.hpp"

namespace emoc {

std::string_view o_mode_name(OMode mode) { return mode == OMode::Binary ? "binary" : "counts"; }

OMode o_mode_from_name(std::string_view name) {
  if (name == "binary") return OMode::Binary;
  if (name == "counts") return OMode::Counts;
  throw ConfigError("unknown o_mode '" + std::string(name) + "' (expected binary or counts)");
}

void DistanceWeights::validate() const {
  for (double w : {e, m, o, c}) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("distance weights must be finite and >= 0");
  }
  if (e == 0 && m == 0 && o == 0 && c == 0) throw ConfigError("at least one distance weight must be > 0");
}

std::vector<Opcode> default_o_alphabet() {
  std::vector<Opcode> out;
  for (auto op = static_cast<int>(Opcode::ADD); op <= static_cast<int>(Opcode::LIST_LEN); ++op)
    out.push_back(static_cast<Opcode>(op));
  return out;
}

void EmocConfig::validate() const {
  if (o_alphabet.empty()) throw ConfigError("o_alphabet must not be empty");
  std::set<Opcode> seen(o_alphabet.begin(), o_alphabet.end());
  if (seen.size() != o_alphabet.size()) throw ConfigError("o_alphabet contains duplicates");
  weights.validate();
  passes.validate();
}

std::string EmocConfig::fingerprint(std::size_t exponent_count) const {
  Fnv1a h;
  for (Opcode op : o_alphabet) h.bytes(opcode_name(op)).bytes(",");
  h.bytes(o_mode_name(o_mode)).u64(exponent_count);
  return hex64(h.digest());
}

std::vector<double> EmocVector::flatten() const {
  std::vector<double> out{e};
  out.insert(out.end(), m.begin(), m.end());
  out.insert(out.end(), o.begin(), o.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

std::vector<double> scaling_exponents(std::span<const double> x, std::span<const std::int64_t> sizes) {
  if (x.size() != sizes.size()) throw ConfigError("measurement and size counts differ");
  if (x.size() < 2) throw ConfigError("scaling exponents need at least two sizes");
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (!(x[i] > 0) || !(x[i + 1] > 0)) throw ConfigError("measurements must be positive");
    if (sizes[i + 1] <= sizes[i] || sizes[i] <= 0) throw ConfigError("sizes must be positive and increasing");
    out.push_back(std::log(x[i + 1] / x[i]) /
                  std::log(static_cast<double>(sizes[i + 1]) / static_cast<double>(sizes[i])));
  }
  return out;
}

std::vector<double> scaling_exponents(std::span<const double> x, const SizeSchedule& schedule) {
  auto sizes = schedule.sizes();
  return scaling_exponents(x, sizes);
}

double median(std::vector<double> values) {
  if (values.empty()) throw ConfigError("median of an empty set");
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

EmocVector embed(const Program& program, const ProbeSuite& suite, const EmocConfig& cfg,
                 const Budgets& budgets, ReportCache* cache) {
  cfg.validate();
  std::size_t arity = problem_spec(suite.problem).arity;
  if (program.entry_function().children.size() - 1 != arity)
    throw EvalError("entry '" + program.entry + "' does not take " + std::to_string(arity) +
                    " argument(s) as " + std::string(problem_name(suite.problem)) + " requires");

  InstructionStream stream = lower(normalize(program.ast, cfg.passes));
  auto run = run_suite(stream, program.entry, suite, budgets, cache);
  const auto& reports = run->reports;

  EmocVector v;
  v.id = program.id;
  v.label = program.label;
  v.problem = std::string(problem_name(suite.problem));
  v.suite_fingerprint = suite.fingerprint();

  bool failed = run->truncated;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (!reports[i].completed() || reports[i].outcome != Outcome{suite.probes[i].oracle}) failed = true;
  }
  v.e = failed ? 1.0 : 0.0;

  std::vector<std::int64_t> sizes;
  std::vector<double> steps, aux;
  for (std::size_t i = 0; i < reports.size();) {
    std::size_t end = i;
    bool exhausted = false;
    std::vector<double> s, a;
    while (end < reports.size() && suite.probes[end].size == suite.probes[i].size) {
      exhausted |= reports[end].exhausted();
      s.push_back(static_cast<double>(reports[end].steps));
      a.push_back(static_cast<double>(reports[end].aux_peak_cells));
      ++end;
    }
    if (exhausted) break;
    sizes.push_back(suite.probes[i].size);
    steps.push_back(median(std::move(s)));
    aux.push_back(median(std::move(a)));
    i = end;
  }
  std::size_t want = static_cast<std::size_t>(suite.schedule.count) - 1;
  if (sizes.size() < 2)
    throw EvalError("program '" + program.id + "' completed fewer than two probe sizes within budgets");
  v.c = scaling_exponents(steps, sizes);
  v.m = scaling_exponents(aux, sizes);
  while (v.c.size() < want) v.c.push_back(v.c.back());
  while (v.m.size() < want) v.m.push_back(v.m.back());

  for (Opcode op : cfg.o_alphabet) {
    std::uint64_t total = 0;
    for (const auto& r : reports) total += r.op_counts[static_cast<std::size_t>(op)];
    v.o.push_back(cfg.o_mode == OMode::Binary ? (total > 0 ? 1.0 : 0.0) : static_cast<double>(total));
  }
  v.config_fingerprint = cfg.fingerprint(want);
  return v;
}

double distance(const EmocVector& u, const EmocVector& v, const DistanceWeights& w) {
  if (!u.config_fingerprint.empty() && !v.config_fingerprint.empty() &&
      u.config_fingerprint != v.config_fingerprint)
    throw ConfigError("vectors '" + u.id + "' and '" + v.id + "' use different embedding configs");
  if (u.m.size() != v.m.size() || u.o.size() != v.o.size() || u.c.size() != v.c.size())
    throw ConfigError("vectors '" + u.id + "' and '" + v.id + "' have different layouts");
  auto sq = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
  };
  double de = u.e - v.e;
  double k = u.o.empty() ? 1.0 : static_cast<double>(u.o.size());
  return std::sqrt(w.e * de * de + w.m * sq(u.m, v.m) + (w.o / k) * sq(u.o, v.o) + w.c * sq(u.c, v.c));
}

}  // namespace emoc
