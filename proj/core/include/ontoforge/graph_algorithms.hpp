#pragma once

#include <cstddef>
#include <vector>

namespace ontoforge {

using AdjacencyList = std::vector<std::vector<std::size_t>>;

inline constexpr std::size_t kUnreachable = static_cast<std::size_t>(-1);

// Unweighted hop counts from `source`; kUnreachable where no path exists.
std::vector<std::size_t> bfs_distances(const AdjacencyList& adj, std::size_t source);

// Longest finite distance from `source`.
std::size_t eccentricity(const AdjacencyList& adj, std::size_t source);

// Brandes betweenness for an undirected graph given as symmetric adjacency
// lists. Each unordered pair (s, t) counts once; values are not normalized.
std::vector<double> betweenness_centrality(const AdjacencyList& adj);

}  // namespace ontoforge
