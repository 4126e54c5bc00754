#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoforge/ontology.hpp"

namespace ontoforge {

// Class match, density, semantic similarity and betweenness measures of one
// ontology against one query, each in [0, 1].
struct MeasureVector {
  double cmm = 0.0;
  double dem = 0.0;
  double ssm = 0.0;
  double bem = 0.0;

  friend bool operator==(const MeasureVector&, const MeasureVector&) = default;
};

struct RankWeights {
  double cmm = 0.3;
  double dem = 0.2;
  double ssm = 0.4;
  double bem = 0.1;
};

inline constexpr double kExactMatchScore = 0.6;
inline constexpr double kPartialMatchScore = 0.4;

// Coverage: 0.6 per term equal to a concept or term label, 0.4 per term
// that only overlaps one as a substring, normalized by 0.6 * |terms|.
double cmm(const OntologyGraph& g, const std::vector<std::string>& query_terms);

// Concept nodes labelled with a query term or owning a term labelled with it.
std::vector<NodeId> match_concepts(const OntologyGraph& g, const std::vector<std::string>& query_terms);

// Mean over matched concepts of (attached terms + sibling concepts), scaled by
// the largest such value in the graph.
double dem(const OntologyGraph& g, const std::vector<NodeId>& matched);

// Mean of 1 / (1 + hops) over unordered pairs of distinct matched nodes; 1.0
// for a single node, 0.0 for none. Disconnected pairs contribute 0.
double ssm(const OntologyGraph& g, const std::vector<NodeId>& matched);

// Mean betweenness of the matched nodes, normalized by (n-1)(n-2)/2.
double bem(const OntologyGraph& g, const std::vector<NodeId>& matched);

MeasureVector measure_ontology(const OntologyGraph& g, const std::vector<std::string>& query_terms);

struct RankedOntology {
  std::string name;
  MeasureVector measures;
  double score = 0.0;
  std::size_t rank = 0;
};

// Entries are returned in input order with their ranks filled in.
struct RankResult {
  std::vector<RankedOntology> entries;
};

// Weighted sum of the measures. With `normalize` each measure is first
// divided by its maximum across the ontologies.
RankResult rank_ontologies(const std::vector<std::pair<std::string, MeasureVector>>& measures,
                           const RankWeights& weights = {}, bool normalize = false);

// CSV rows `name,cmm,dem,ssm,bem`; an optional header starting with "name"
// and '#' comment lines are skipped.
std::vector<std::pair<std::string, MeasureVector>> parse_measures_csv(std::string_view text);
std::vector<std::pair<std::string, MeasureVector>> load_measures_csv(const std::filesystem::path& path);

}  // namespace ontoforge
