#include "ontoforge/lsi_concepts.hpp"

#include <algorithm>
#include <cmath>

#include "ontoforge/error.hpp"

namespace ontoforge {

namespace {

bool stronger(const ConceptMember& a, const ConceptMember& b) {
  const double ma = std::abs(a.loading);
  const double mb = std::abs(b.loading);
  if (ma != mb) return ma > mb;
  return a.term < b.term;
}

}  // namespace

std::string name_concept(const Concept& c) {
  if (c.members.empty()) return "-unnamed";
  std::vector<ConceptMember> ranked = c.members;
  std::stable_sort(ranked.begin(), ranked.end(), stronger);
  std::string name;
  for (std::size_t i = 0; i < std::min(kConceptNameTerms, ranked.size()); ++i) {
    name += '-';
    name += ranked[i].term;
  }
  return name;
}

std::vector<Concept> extract_concepts(const SvdFactors& f, const Vocabulary& vocabulary,
                                      std::size_t k, double tau) {
  if (k < 1 || k > f.rank())
    fail(ErrorKind::BadRank, "concept count " + std::to_string(k) + " outside [1, " +
                                 std::to_string(f.rank()) + "]");
  if (!(tau > 0.0)) fail(ErrorKind::BadHyperparam, "membership threshold must be positive");
  if (f.u.rows() != vocabulary.size())
    fail(ErrorKind::ShapeError, "term factor rows do not match vocabulary size");

  std::vector<Concept> concepts(k);
  for (std::size_t j = 0; j < k; ++j) {
    Concept& c = concepts[j];
    c.id = j;
    c.singular_value = f.singular_values[j];
    for (std::size_t i = 0; i < f.u.rows(); ++i) {
      const double loading = f.u(i, j) * f.singular_values[j];
      if (std::abs(loading) >= tau) c.members.push_back({vocabulary.term(i), loading});
    }
    std::sort(c.members.begin(), c.members.end(), stronger);
    c.empty_warning = c.members.empty();
    c.name = name_concept(c);
  }
  return concepts;
}

}  // namespace ontoforge
