#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "emoc/analyze.hpp"
#include "emoc/error.hpp"
#include "emoc/util.hpp"

namespace emoc {
namespace {

using Matrix = std::vector<std::vector<double>>;

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

struct Run {
  std::vector<std::size_t> assign;
  Matrix centroids;
  double inertia = 0;
};

Run lloyd(const Matrix& x, std::size_t k, SplitMix64& rng, std::size_t max_iters) {
  std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  Run r;
  std::set<std::vector<double>> used;
  for (std::size_t i : order) {
    if (r.centroids.size() == k) break;
    if (used.insert(x[i]).second) r.centroids.push_back(x[i]);
  }
  for (std::size_t i = 0; r.centroids.size() < k; ++i) r.centroids.push_back(x[order[i % n]]);

  r.assign.assign(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = sq_dist(x[i], r.centroids[0]);
      for (std::size_t c = 1; c < k; ++c) {
        double d = sq_dist(x[i], r.centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (r.assign[i] != best) {
        r.assign[i] = best;
        changed = true;
      }
    }
    if (!changed) break;
    std::size_t dims = x[0].size();
    Matrix sums(k, std::vector<double>(dims, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[r.assign[i]];
      for (std::size_t d = 0; d < dims; ++d) sums[r.assign[i]][d] += x[i][d];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t d = 0; d < dims; ++d) r.centroids[c][d] = sums[c][d] / static_cast<double>(counts[c]);
    }
  }
  r.inertia = 0;
  for (std::size_t i = 0; i < n; ++i) r.inertia += sq_dist(x[i], r.centroids[r.assign[i]]);
  return r;
}

}  // namespace

ClusterResult kmeans_cluster(std::span<const EmocVector> vectors, std::size_t k, std::uint64_t seed,
                             std::size_t restarts, std::size_t max_iters) {
  if (vectors.empty()) throw ConfigError("cannot cluster an empty population");
  if (k == 0 || k > vectors.size()) throw ConfigError("k must be in [1, population size]");
  if (restarts == 0 || max_iters == 0) throw ConfigError("restarts and max_iters must be >= 1");

  Matrix raw;
  for (const auto& v : vectors) {
    raw.push_back(v.flatten());
    if (raw.back().size() != raw.front().size())
      throw ConfigError("vector '" + v.id + "' has a different length");
    if (v.config_fingerprint != vectors[0].config_fingerprint)
      throw ConfigError("vector '" + v.id + "' uses a different embedding config");
  }

  ClusterResult out;
  out.k = k;
  out.restarts = restarts;
  out.seed = seed;
  for (const auto& v : vectors) out.ids.push_back(v.id);

  std::size_t n = raw.size();
  std::vector<double> mean, sd;
  for (std::size_t d = 0; d < raw[0].size(); ++d) {
    double lo = raw[0][d], hi = raw[0][d], sum = 0;
    for (const auto& row : raw) {
      lo = std::min(lo, row[d]);
      hi = std::max(hi, row[d]);
      sum += row[d];
    }
    if (lo == hi) continue;
    double mu = sum / static_cast<double>(n);
    double var = 0;
    for (const auto& row : raw) var += (row[d] - mu) * (row[d] - mu);
    out.kept_dimensions.push_back(d);
    mean.push_back(mu);
    sd.push_back(std::sqrt(var / static_cast<double>(n)));
  }
  Matrix x(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < out.kept_dimensions.size(); ++j)
      x[i].push_back((raw[i][out.kept_dimensions[j]] - mean[j]) / sd[j]);
  }

  SplitMix64 rng(seed);
  Run best;
  for (std::size_t r = 0; r < restarts; ++r) {
    SplitMix64 local(rng.next());
    Run run = lloyd(x, k, local, max_iters);
    if (r == 0 || run.inertia < best.inertia) {
      best = std::move(run);
      out.best_restart = r;
    }
  }
  out.assignments = best.assign;
  out.centroids = best.centroids;
  out.inertia = best.inertia;
  return out;
}

}  // namespace emoc
