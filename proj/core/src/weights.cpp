#include "ontoforge/weights.hpp"

#include <cmath>
#include <string>

#include "ontoforge/error.hpp"

namespace ontoforge {

WeightMatrix term_weight_matrix(const TermDocMatrix& counts) {
  if (counts.rows() == 0 || counts.cols() == 0)
    fail(ErrorKind::DegenerateDocument, "empty term-document matrix");
  WeightMatrix w{Matrix(counts.rows(), counts.cols())};
  for (std::size_t k = 0; k < counts.cols(); ++k) {
    const auto n_k = static_cast<double>(counts.column_sum(k));
    if (n_k == 0.0) fail(ErrorKind::DegenerateDocument, "document " + std::to_string(k) + " has no terms");
    for (const auto& e : counts.column(k)) w.values(e.term, k) = static_cast<double>(e.count) / n_k;
  }
  return w;
}

NormalizedWeightMatrix normalize_weights(const WeightMatrix& w) {
  const Matrix& m = w.values;
  NormalizedWeightMatrix nw{m};
  for (std::size_t k = 0; k < m.cols(); ++k) {
    double sq = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) sq += m(i, k) * m(i, k);
    if (sq == 0.0) fail(ErrorKind::DegenerateDocument, "document " + std::to_string(k) + " has no terms");
    const double norm = std::sqrt(sq);
    for (std::size_t i = 0; i < m.rows(); ++i) nw.values(i, k) = m(i, k) / norm;
  }
  return nw;
}

}  // namespace ontoforge
