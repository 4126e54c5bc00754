#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ontoforge/corpus.hpp"
#include "ontoforge/svd.hpp"

namespace ontoforge {

struct ConceptMember {
  std::string term;
  double loading = 0.0;  // U(i, j) * S(j)

  friend bool operator==(const ConceptMember&, const ConceptMember&) = default;
};

struct Concept {
  std::size_t id = 0;
  std::string name;
  // Sorted by |loading| descending, ties by term.
  std::vector<ConceptMember> members;
  double singular_value = 0.0;
  // Set when no term reached the membership threshold.
  bool empty_warning = false;
};

inline constexpr double kDefaultMembershipThreshold = 0.05;
inline constexpr std::size_t kConceptNameTerms = 5;

// Concept j collects every vocabulary term whose loading U(i,j)*S(j) has
// magnitude >= tau.
std::vector<Concept> extract_concepts(const SvdFactors& f, const Vocabulary& vocabulary,
                                      std::size_t k, double tau = kDefaultMembershipThreshold);

// "-t1-t2-...-t5" over the strongest members; "-unnamed" when empty.
std::string name_concept(const Concept& c);

}  // namespace ontoforge
