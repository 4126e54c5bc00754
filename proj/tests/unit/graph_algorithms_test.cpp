#include "ontoforge/graph_algorithms.hpp"

#include <gtest/gtest.h>

#include <random>

namespace ontoforge {
namespace {

AdjacencyList undirected(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  AdjacencyList adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

// Definition-level oracle: all-pairs distances and shortest-path counts by
// Floyd-Warshall style relaxation, then sum sigma_sv * sigma_vt / sigma_st
// over unordered pairs.
std::vector<double> brute_force_betweenness(const AdjacencyList& adj) {
  const std::size_t n = adj.size();
  const double inf = 1e18;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    d[s][s] = 0;
    sigma[s][s] = 1;
    // Relax by path length layer; n rounds suffice.
    for (std::size_t len = 1; len < n; ++len)
      for (std::size_t v = 0; v < n; ++v)
        if (d[s][v] == static_cast<double>(len - 1))
          for (auto w : adj[v])
            if (d[s][w] >= static_cast<double>(len)) {
              d[s][w] = static_cast<double>(len);
              sigma[s][w] += sigma[s][v];
            }
  }
  std::vector<double> cb(n, 0.0);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t) {
      if (d[s][t] >= inf) continue;
      for (std::size_t v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        if (d[s][v] + d[v][t] == d[s][t]) cb[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
      }
    }
  return cb;
}

TEST(Bfs, DistancesAndEccentricity) {
  const auto adj = undirected(5, {{0, 1}, {1, 2}, {2, 3}});
  const auto d = bfs_distances(adj, 0);
  EXPECT_EQ(d, (std::vector<std::size_t>{0, 1, 2, 3, kUnreachable}));
  EXPECT_EQ(eccentricity(adj, 0), 3u);
  EXPECT_EQ(eccentricity(adj, 4), 0u);
}

TEST(Betweenness, PathAndStar) {
  const auto path = betweenness_centrality(undirected(3, {{0, 1}, {1, 2}}));
  EXPECT_DOUBLE_EQ(path[0], 0.0);
  EXPECT_DOUBLE_EQ(path[1], 1.0);
  EXPECT_DOUBLE_EQ(path[2], 0.0);
  const auto star = betweenness_centrality(undirected(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));
  EXPECT_DOUBLE_EQ(star[0], 6.0);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_DOUBLE_EQ(star[i], 0.0);
}

TEST(Betweenness, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 14;
    std::bernoulli_distribution edge(0.15 + 0.05 * (trial % 6));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (edge(rng)) edges.emplace_back(a, b);
    const auto adj = undirected(n, edges);
    const auto got = betweenness_centrality(adj);
    const auto want = brute_force_betweenness(adj);
    for (std::size_t v = 0; v < n; ++v) EXPECT_NEAR(got[v], want[v], 1e-9) << "trial " << trial << " node " << v;
  }
}

}  // namespace
}  // namespace ontoforge
