#pragma once

#include <cstddef>
#include <vector>

#include "ontoforge/matrix.hpp"
#include "ontoforge/weights.hpp"

namespace ontoforge {

// A = U * diag(S) * V^T with orthonormal columns in U (m x r) and V (n x r),
// S descending and non-negative, r = min(m, n). Each U column has its
// largest-magnitude component positive.
struct SvdFactors {
  Matrix u;
  std::vector<double> singular_values;
  Matrix v;

  std::size_t rank() const noexcept { return singular_values.size(); }
};

struct SvdOptions {
  int max_sweeps = 100;
  // Convergence gate on off-diagonal Gram entries, relative to ||A||_F^2.
  double off_diagonal_tolerance = 1e-12;
};

// One-sided (Hestenes) Jacobi SVD.
SvdFactors decompose(const Matrix& a, const SvdOptions& options = {});
SvdFactors decompose(const NormalizedWeightMatrix& nw, const SvdOptions& options = {});

SvdFactors truncate(const SvdFactors& f, std::size_t k);

Matrix reconstruct(const SvdFactors& f);

}  // namespace ontoforge
