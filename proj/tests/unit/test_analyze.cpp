#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "emoc/analyze.hpp"
#include "emoc/error.hpp"

using namespace emoc;

namespace {

EmocVector point(std::string id, std::vector<double> m) {
  EmocVector v;
  v.id = std::move(id);
  v.m = std::move(m);
  v.config_fingerprint = "cfg";
  return v;
}

// two well separated blobs of three
std::vector<EmocVector> blobs() {
  return {point("a1", {0.0, 0.1}),  point("a2", {0.1, 0.0}),  point("a3", {0.0, 0.0}),
          point("b1", {10.0, 9.9}), point("b2", {9.9, 10.0}), point("b3", {10.0, 10.0})};
}

double brute_best(const std::vector<std::vector<double>>& w) {
  std::size_t cols = w[0].size();
  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0;
  do {
    double s = 0;
    for (std::size_t r = 0; r < w.size() && r < cols; ++r) s += w[r][perm[r]];
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST(KMeans, SeparatedBlobs) {
  auto pop = blobs();
  ClusterResult r = kmeans_cluster(pop, 2, 1);
  ASSERT_EQ(r.assignments.size(), 6u);
  EXPECT_EQ(r.assignments[0], r.assignments[1]);
  EXPECT_EQ(r.assignments[0], r.assignments[2]);
  EXPECT_EQ(r.assignments[3], r.assignments[4]);
  EXPECT_EQ(r.assignments[3], r.assignments[5]);
  EXPECT_NE(r.assignments[0], r.assignments[3]);
  LabelMap labels{{"a1", "a"}, {"a2", "a"}, {"a3", "a"}, {"b1", "b"}, {"b2", "b"}, {"b3", "b"}};
  EXPECT_EQ(match_accuracy(r, labels), 1.0);
  EXPECT_EQ(purity(r, labels), 1.0);
}

TEST(KMeans, OneClusterPerPoint) {
  auto pop = blobs();
  ClusterResult r = kmeans_cluster(pop, 6, 3);
  std::vector<std::size_t> a = r.assignments;
  std::sort(a.begin(), a.end());
  EXPECT_EQ(a, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
  EXPECT_NEAR(r.inertia, 0.0, 1e-12);
}

TEST(KMeans, ConstantDimensionsDropped) {
  std::vector<EmocVector> pop{point("x", {1, 5}), point("y", {2, 5}), point("z", {3, 5})};
  ClusterResult r = kmeans_cluster(pop, 1, 0);
  // e is column 0; m1 is column 1 and the only one that varies
  EXPECT_EQ(r.kept_dimensions, (std::vector<std::size_t>{1}));
  ASSERT_EQ(r.centroids.size(), 1u);
  EXPECT_NEAR(r.centroids[0][0], 0.0, 1e-12);
  // z-scores of 1,2,3 are -s,0,s with s^2 = 3/2
  EXPECT_NEAR(r.inertia, 3.0, 1e-12);
}

TEST(KMeans, SeedDeterminismAndErrors) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::vector<EmocVector> pop;
  for (int i = 0; i < 40; ++i) pop.push_back(point("p" + std::to_string(i), {g(rng), g(rng), g(rng)}));
  ClusterResult a = kmeans_cluster(pop, 4, 9);
  ClusterResult b = kmeans_cluster(pop, 4, 9);
  EXPECT_EQ(a.assignments, b.assignments);
  EXPECT_EQ(a.inertia, b.inertia);
  EXPECT_EQ(a.best_restart, b.best_restart);
  // more restarts can only lower inertia
  EXPECT_LE(kmeans_cluster(pop, 4, 9, 64).inertia, kmeans_cluster(pop, 4, 9, 1).inertia + 1e-12);

  EXPECT_THROW(kmeans_cluster(pop, 0, 1), ConfigError);
  EXPECT_THROW(kmeans_cluster(pop, 41, 1), ConfigError);
  std::vector<EmocVector> none;
  EXPECT_THROW(kmeans_cluster(none, 1, 1), ConfigError);
  pop[3].config_fingerprint = "other";
  EXPECT_THROW(kmeans_cluster(pop, 2, 1), ConfigError);
}

TEST(KMeans, AssignmentsAreNearestCentroid) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-5, 5);
  std::vector<EmocVector> pop;
  for (int i = 0; i < 30; ++i) pop.push_back(point("p" + std::to_string(i), {u(rng), u(rng)}));
  ClusterResult r = kmeans_cluster(pop, 3, 2);
  // recompute standardized coordinates independently
  std::vector<std::vector<double>> z(pop.size());
  for (std::size_t d = 0; d < 2; ++d) {
    double mu = 0, var = 0;
    for (const auto& p : pop) mu += p.m[d];
    mu /= 30;
    for (const auto& p : pop) var += (p.m[d] - mu) * (p.m[d] - mu);
    double sd = std::sqrt(var / 30);
    for (std::size_t i = 0; i < pop.size(); ++i) z[i].push_back((pop[i].m[d] - mu) / sd);
  }
  double inertia = 0;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    auto sq = [&](std::size_t c) {
      return std::pow(z[i][0] - r.centroids[c][0], 2) + std::pow(z[i][1] - r.centroids[c][1], 2);
    };
    for (std::size_t c = 0; c < 3; ++c) EXPECT_LE(sq(r.assignments[i]), sq(c) + 1e-12);
    inertia += sq(r.assignments[i]);
  }
  EXPECT_NEAR(inertia, r.inertia, 1e-9);
}

TEST(Matching, HungarianAgreesWithBruteForce) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t rows = 1 + rng() % 6, cols = rows + rng() % 2;
    std::vector<std::vector<double>> w(rows, std::vector<double>(cols));
    for (auto& r : w)
      for (auto& x : r) x = static_cast<double>(rng() % 10);
    auto match = max_weight_assignment(w);
    ASSERT_EQ(match.size(), rows);
    double got = 0;
    std::vector<bool> used(cols, false);
    for (std::size_t r = 0; r < rows; ++r) {
      ASSERT_GE(match[r], 0);
      ASSERT_FALSE(used[static_cast<std::size_t>(match[r])]);
      used[static_cast<std::size_t>(match[r])] = true;
      got += w[r][static_cast<std::size_t>(match[r])];
    }
    ASSERT_EQ(got, brute_best(w));
  }
}

TEST(Matching, MoreRowsThanColumns) {
  std::vector<std::vector<double>> w{{1, 0}, {5, 0}, {0, 3}};
  auto match = max_weight_assignment(w);
  EXPECT_EQ(match, (std::vector<int>{-1, 0, 1}));
  EXPECT_THROW(max_weight_assignment({{1, 2}, {3}}), ConfigError);
}

TEST(Scores, AccuracyAndPurityByHand) {
  ClusterResult r;
  r.k = 2;
  r.ids = {"p1", "p2", "p3", "p4", "p5", "p6"};
  r.assignments = {0, 0, 0, 0, 1, 1};
  LabelMap labels{{"p1", "x"}, {"p2", "x"}, {"p3", "y"}, {"p4", "y"}, {"p5", "y"}, {"p6", "z"}};
  // matching: cluster 0 -> x (2) and cluster 1 -> y (1), or 0 -> y (2) and 1 -> z (1)
  EXPECT_DOUBLE_EQ(match_accuracy(r, labels), 3.0 / 6.0);
  // majorities: cluster 0 has 2, cluster 1 has 1
  EXPECT_DOUBLE_EQ(purity(r, labels), 3.0 / 6.0);
  labels.erase("p6");
  EXPECT_THROW(match_accuracy(r, labels), ConfigError);
  EXPECT_THROW(purity(r, labels), ConfigError);
}

TEST(Scores, PurityBoundsAccuracy) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    ClusterResult r;
    r.k = 1 + rng() % 4;
    LabelMap labels;
    for (int i = 0; i < 12; ++i) {
      r.ids.push_back("p" + std::to_string(i));
      r.assignments.push_back(rng() % r.k);
      labels[r.ids.back()] = std::string(1, static_cast<char>('a' + rng() % 4));
    }
    double acc = match_accuracy(r, labels), pur = purity(r, labels);
    ASSERT_LE(acc, pur + 1e-12);
    ASSERT_GT(acc, 0.0);
    ASSERT_LE(pur, 1.0);
  }
}

TEST(Neighbors, OrderedWithIdTieBreak) {
  std::vector<EmocVector> pop{point("q", {0, 0}), point("far", {3, 4}), point("b", {1, 0}),
                              point("a", {0, 1}), point("c", {0, 2})};
  auto nn = nearest_neighbors("q", pop, 3);
  ASSERT_EQ(nn.size(), 3u);
  EXPECT_EQ(nn[0], (Neighbor{"a", 1.0}));
  EXPECT_EQ(nn[1], (Neighbor{"b", 1.0}));
  EXPECT_EQ(nn[2], (Neighbor{"c", 2.0}));
  EXPECT_EQ(nearest_neighbors("q", pop, 10).back(), (Neighbor{"far", 5.0}));
  EXPECT_THROW(nearest_neighbors("missing", pop, 1), ConfigError);
  EXPECT_THROW(nearest_neighbors("q", pop, 0), ConfigError);
}

TEST(Diversity, Summary) {
  EmocVector a = point("a", {1, 2});
  EmocVector b = point("b", {3, 2});
  a.o = {1, 0};
  b.o = {1, 0};
  b.e = 1;
  a.c = {0};
  b.c = {2};
  std::vector<EmocVector> pop{a, b};
  DiversityReport r = diversity_report(pop);
  EXPECT_EQ(r.population, 2u);
  EXPECT_EQ(r.distinct_o_patterns, 1u);
  EXPECT_EQ(r.e_failures, 1u);
  EXPECT_EQ(r.m_variance, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(r.c_variance, (std::vector<double>{1.0}));
  EXPECT_DOUBLE_EQ(r.mean_pairwise_distance, std::sqrt(1.0 + 4.0 + 4.0));
  std::vector<EmocVector> none;
  EXPECT_THROW(diversity_report(none), ConfigError);
}
