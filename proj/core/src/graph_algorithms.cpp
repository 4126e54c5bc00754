#include "ontoforge/graph_algorithms.hpp"

#include <algorithm>
#include <deque>
#include <stack>

namespace ontoforge {

std::vector<std::size_t> bfs_distances(const AdjacencyList& adj, std::size_t source) {
  std::vector<std::size_t> dist(adj.size(), kUnreachable);
  if (source >= adj.size()) return dist;
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[v]) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::size_t eccentricity(const AdjacencyList& adj, std::size_t source) {
  std::size_t ecc = 0;
  for (std::size_t d : bfs_distances(adj, source))
    if (d != kUnreachable) ecc = std::max(ecc, d);
  return ecc;
}

std::vector<double> betweenness_centrality(const AdjacencyList& adj) {
  const std::size_t n = adj.size();
  std::vector<double> cb(n, 0.0);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<double> sigma(n);
  std::vector<long long> dist(n);
  std::vector<double> delta(n);

  for (std::size_t s = 0; s < n; ++s) {
    std::stack<std::size_t> order;
    for (std::size_t v = 0; v < n; ++v) {
      preds[v].clear();
      sigma[v] = 0.0;
      dist[v] = -1;
      delta[v] = 0.0;
    }
    sigma[s] = 1.0;
    dist[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      order.push(v);
      for (std::size_t w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    while (!order.empty()) {
      const std::size_t w = order.top();
      order.pop();
      for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) cb[w] += delta[w];
    }
  }
  // Every unordered pair was visited from both endpoints.
  for (double& c : cb) c /= 2.0;
  return cb;
}

}  // namespace ontoforge
