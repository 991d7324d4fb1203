#include <algorithm>
#include <set>

#include "emoc/analyze.hpp"
#include "emoc/error.hpp"

namespace emoc {

std::vector<Neighbor> nearest_neighbors(std::string_view query, std::span<const EmocVector> population,
                                        std::size_t j, const DistanceWeights& w) {
  if (j == 0) throw ConfigError("neighbor count must be >= 1");
  auto q = std::find_if(population.begin(), population.end(),
                        [&](const EmocVector& v) { return v.id == query; });
  if (q == population.end()) throw ConfigError("unknown program id '" + std::string(query) + "'");
  std::vector<Neighbor> out;
  for (const auto& v : population) {
    if (&v == &*q) continue;
    out.push_back(Neighbor{v.id, distance(*q, v, w)});
  }
  std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
  });
  if (out.size() > j) out.resize(j);
  return out;
}

DiversityReport diversity_report(std::span<const EmocVector> population, const DistanceWeights& w) {
  if (population.empty()) throw ConfigError("diversity report needs a non-empty population");
  DiversityReport r;
  r.population = population.size();
  std::set<std::vector<double>> patterns;
  for (const auto& v : population) {
    patterns.insert(v.o);
    if (v.e != 0.0) ++r.e_failures;
  }
  r.distinct_o_patterns = patterns.size();

  auto variance = [&](auto block) {
    std::size_t dims = block(population[0]).size();
    std::vector<double> out(dims, 0.0);
    double n = static_cast<double>(population.size());
    for (std::size_t d = 0; d < dims; ++d) {
      double mean = 0;
      for (const auto& v : population) mean += block(v).at(d);
      mean /= n;
      double var = 0;
      for (const auto& v : population) var += (block(v)[d] - mean) * (block(v)[d] - mean);
      out[d] = var / n;
    }
    return out;
  };
  r.m_variance = variance([](const EmocVector& v) -> const std::vector<double>& { return v.m; });
  r.c_variance = variance([](const EmocVector& v) -> const std::vector<double>& { return v.c; });

  double total = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < population.size(); ++i) {
    for (std::size_t k = i + 1; k < population.size(); ++k) {
      total += distance(population[i], population[k], w);
      ++pairs;
    }
  }
  r.mean_pairwise_distance = pairs ? total / static_cast<double>(pairs) : 0.0;
  return r;
}

}  // namespace emoc
