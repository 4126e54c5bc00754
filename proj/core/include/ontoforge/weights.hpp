#pragma once

#include "ontoforge/corpus.hpp"
#include "ontoforge/matrix.hpp"

namespace ontoforge {

// W(i,k) = count(i,k) / n_k, with n_k the token total of document k.
struct WeightMatrix {
  Matrix values;  // terms x documents
};

// Column-wise L2 normalization of a WeightMatrix.
struct NormalizedWeightMatrix {
  Matrix values;  // terms x documents
};

WeightMatrix term_weight_matrix(const TermDocMatrix& counts);
NormalizedWeightMatrix normalize_weights(const WeightMatrix& w);

}  // namespace ontoforge
