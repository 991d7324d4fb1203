#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emoc/embedding.hpp"

namespace emoc {

struct ClusterResult {
  std::vector<std::string> ids;
  /// Parallel to ids.
  std::vector<std::size_t> assignments;
  /// k centroids in standardized space (kept dimensions only).
  std::vector<std::vector<double>> centroids;
  /// Indices into EmocVector::flatten() that survived standardization.
  std::vector<std::size_t> kept_dimensions;
  double inertia = 0.0;
  std::size_t k = 0;
  std::size_t restarts = 0;
  std::size_t best_restart = 0;
  std::uint64_t seed = 0;
  std::optional<double> accuracy;
  std::optional<double> purity;
};

/// Lloyd's k-means on z-scored dimensions (constant dimensions dropped).
/// Each restart starts from k distinct points chosen with a seeded
/// generator; the lowest inertia wins, ties by lowest restart index.
ClusterResult kmeans_cluster(std::span<const EmocVector> vectors, std::size_t k,
                             std::uint64_t seed, std::size_t restarts = 32,
                             std::size_t max_iters = 100);

using LabelMap = std::map<std::string, std::string>;

/// Fraction of programs agreeing under the best one-to-one cluster/label
/// matching. Throws ConfigError if an id has no label.
double match_accuracy(const ClusterResult& result, const LabelMap& labels);

/// Fraction of programs whose cluster's majority label matches their own.
double purity(const ClusterResult& result, const LabelMap& labels);

/// Maximum-weight one-to-one assignment on a rows x cols matrix (Hungarian
/// method). Returns, per row, the matched column or -1.
std::vector<int> max_weight_assignment(const std::vector<std::vector<double>>& weights);

struct Neighbor {
  std::string id;
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// The j closest programs to `query` (itself excluded), ascending by
/// distance, ties by id.
std::vector<Neighbor> nearest_neighbors(std::string_view query,
                                        std::span<const EmocVector> population, std::size_t j,
                                        const DistanceWeights& w = {});

struct DiversityReport {
  std::size_t population = 0;
  std::size_t distinct_o_patterns = 0;
  std::vector<double> m_variance;
  std::vector<double> c_variance;
  std::size_t e_failures = 0;
  double mean_pairwise_distance = 0.0;
};

DiversityReport diversity_report(std::span<const EmocVector> population,
                                 const DistanceWeights& w = {});

}  // namespace emoc
