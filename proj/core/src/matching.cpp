#include <algorithm>
#include <limits>
#include <set>

#include "emoc/analyze.hpp"
#include "emoc/error.hpp"

namespace emoc {

std::vector<int> max_weight_assignment(const std::vector<std::vector<double>>& weights) {
  std::size_t rows = weights.size();
  if (rows == 0) return {};
  std::size_t cols = weights[0].size();
  std::size_t n = std::max(rows, cols);
  double top = 0;
  for (const auto& r : weights) {
    if (r.size() != cols) throw ConfigError("assignment matrix is not rectangular");
    for (double w : r) top = std::max(top, w);
  }
  // Minimum-cost form on a padded square matrix, 1-indexed potentials.
  auto cost = [&](std::size_t i, std::size_t j) {
    double w = (i < rows && j < cols) ? weights[i][j] : 0.0;
    return top - w;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      std::size_t i0 = p[j0], j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> out(rows, -1);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] >= 1 && p[j] - 1 < rows && j - 1 < cols) out[p[j] - 1] = static_cast<int>(j - 1);
  }
  return out;
}

namespace {

struct Table {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> counts;
};

Table contingency(const ClusterResult& result, const LabelMap& labels) {
  std::set<std::string> names;
  for (const auto& id : result.ids) {
    auto it = labels.find(id);
    if (it == labels.end()) throw ConfigError("no label for program '" + id + "'");
    names.insert(it->second);
  }
  Table t;
  t.labels.assign(names.begin(), names.end());
  t.counts.assign(result.k, std::vector<double>(t.labels.size(), 0.0));
  for (std::size_t i = 0; i < result.ids.size(); ++i) {
    const auto& label = labels.at(result.ids[i]);
    auto col = std::lower_bound(t.labels.begin(), t.labels.end(), label) - t.labels.begin();
    t.counts[result.assignments[i]][static_cast<std::size_t>(col)] += 1.0;
  }
  return t;
}

}  // namespace

double match_accuracy(const ClusterResult& result, const LabelMap& labels) {
  if (result.ids.empty()) throw ConfigError("empty clustering");
  Table t = contingency(result, labels);
  auto match = max_weight_assignment(t.counts);
  double hits = 0;
  for (std::size_t c = 0; c < match.size(); ++c) {
    if (match[c] >= 0) hits += t.counts[c][static_cast<std::size_t>(match[c])];
  }
  return hits / static_cast<double>(result.ids.size());
}

double purity(const ClusterResult& result, const LabelMap& labels) {
  if (result.ids.empty()) throw ConfigError("empty clustering");
  Table t = contingency(result, labels);
  double hits = 0;
  for (const auto& row : t.counts) hits += *std::max_element(row.begin(), row.end());
  return hits / static_cast<double>(result.ids.size());
}

}  // namespace emoc
