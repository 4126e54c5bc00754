#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoforge/corpus.hpp"
#include "ontoforge/ontology.hpp"

namespace ontoforge {

inline constexpr int kMaxSynonymRank = 9;

// Fuzzy membership of the synonym at `rank` (1..9): 0.5 + 0.01 * rank.
double synonym_membership(int rank);

struct Synonym {
  std::string term;
  int rank = 1;

  friend bool operator==(const Synonym&, const Synonym&) = default;
};

// term -> up to nine synonyms ranked 1..n without gaps.
class SynonymLexicon {
 public:
  // Lines: term<TAB>synonym<TAB>rank; '#' comments and blank lines skipped.
  static SynonymLexicon parse(std::string_view text);
  static SynonymLexicon load(const std::filesystem::path& path);

  // Throws ParseError when the rank is outside 1..9 or already taken.
  void add(std::string term, std::string synonym, int rank);
  // Throws ParseError unless every term's ranks run 1..n without gaps.
  void check_contiguous() const;

  // Rank-ordered synonyms, empty for unknown terms.
  std::vector<Synonym> synonyms(std::string_view term) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::string, std::map<int, std::string>, std::less<>> entries_;
};

struct Expansion {
  std::string candidate;
  double membership = 1.0;
};

// (term, 1.0) followed by the lexicon synonyms in rank order.
std::vector<Expansion> expand_synonyms(std::string_view term, const SynonymLexicon& lexicon);

struct TopicHit {
  NodeId node = 0;
  std::size_t concept_id = 0;
  std::string label;
  double weight = 0.0;
};

struct TermMatch {
  std::string query_term;
  std::optional<std::string> matched;  // Term node label, when found
  NodeId term_node = 0;
  double membership = 0.0;  // 1.0 direct, 0.51..0.59 via synonym, 0 when missed
  std::vector<TopicHit> topics;
};

struct QueryResult {
  std::vector<TermMatch> terms;  // retained query tokens, first occurrence order
  std::vector<std::string> misses;
  double score = 0.0;

  std::size_t matched_count() const;
};

// Tokenizes and prunes the query, matches each distinct token (directly or
// through the lexicon) against Term nodes and reports the owning concepts.
// The aggregate score is fuzzy_score(A, A^N, 2) with A the fraction of
// tokens matched and A^N the mean membership of the matched tokens.
QueryResult detect_topics(std::string_view query, const OntologyGraph& g, const SynonymLexicon& lexicon,
                          const StopWords& stopwords = {});

inline constexpr double kDefaultDepthFactor = 0.2;
inline constexpr double kDefaultPathFactor = 0.6;

// (e^{x d} - 1) / (e^{x d} + e^{y s} - 2); 1.0 when s == 0.
double edge_count_similarity(double depth, double path_length, double x = kDefaultDepthFactor,
                             double y = kDefaultPathFactor);

// Edge-count similarity with d the depth of the tree below the root and s
// the undirected hop count between the two nodes. Throws NoPath when the
// nodes are disconnected.
double path_similarity(NodeId t1, NodeId t2, const OntologyGraph& g, double x = kDefaultDepthFactor,
                       double y = kDefaultPathFactor);

// (A + A^N) / N.
double fuzzy_score(double doc_membership, double synonym_membership, int n);

}  // namespace ontoforge
