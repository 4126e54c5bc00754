#include "ontoforge/svd.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <string>

#include "ontoforge/error.hpp"

namespace ontoforge {

namespace {

using Column = std::vector<double>;

double dot(const Column& a, const Column& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void rotate(Column& p, Column& q, double c, double s) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double xp = p[i];
    const double xq = q[i];
    p[i] = c * xp - s * xq;
    q[i] = s * xp + c * xq;
  }
}

// Orthonormal vector orthogonal to every column in `basis`, chosen from the
// standard basis by largest residual after two Gram-Schmidt passes.
Column complete_basis(const std::vector<Column>& basis, std::size_t m) {
  Column best;
  double best_norm = -1.0;
  for (std::size_t e = 0; e < m; ++e) {
    Column x(m, 0.0);
    x[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double proj = dot(x, b);
        for (std::size_t i = 0; i < m; ++i) x[i] -= proj * b[i];
      }
    }
    const double norm = std::sqrt(dot(x, x));
    if (norm > best_norm) {
      best_norm = norm;
      best = std::move(x);
    }
    if (best_norm > 0.5) break;
  }
  for (double& v : best) v /= best_norm;
  return best;
}

// Requires a.rows() >= a.cols().
SvdFactors decompose_tall(const Matrix& a, const SvdOptions& options) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const double norm_a = a.frobenius_norm();
  const double norm_sq = norm_a * norm_a;

  std::vector<Column> w(n, Column(m));
  std::vector<Column> v(n, Column(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) w[j][i] = a(i, j);
    v[j][j] = 1.0;
  }

  // Rotations are applied while the columns are not orthogonal to working
  // precision; columns at round-off level are left alone.
  const double rotation_tol = static_cast<double>(std::max<std::size_t>(m, 8)) * DBL_EPSILON;
  const double negligible = DBL_EPSILON * norm_a;
  const double negligible_sq = negligible * negligible;

  bool converged = (n < 2 || norm_sq == 0.0);
  double residual = 0.0;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    residual = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = dot(w[p], w[p]);
        const double beta = dot(w[q], w[q]);
        const double gamma = dot(w[p], w[q]);
        residual = std::max(residual, std::abs(gamma));
        if (alpha <= negligible_sq || beta <= negligible_sq) continue;
        if (std::abs(gamma) <= rotation_tol * std::sqrt(alpha * beta)) continue;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(w[p], w[q], c, s);
        rotate(v[p], v[q], c, s);
        rotated = true;
      }
    }
    if (!rotated) converged = true;
  }
  if (!converged && residual >= options.off_diagonal_tolerance * norm_sq) {
    fail(ErrorKind::ConvergenceError,
         "Jacobi SVD did not converge in " + std::to_string(options.max_sweeps) +
             " sweeps; off-diagonal residual " + std::to_string(residual / norm_sq) +
             " relative to ||A||_F^2");
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(dot(w[j], w[j]));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  // Left vectors for significant singular values; the remainder are filled in
  // afterwards so that U stays orthonormal on rank-deficient input.
  const double cutoff = std::max(negligible, DBL_MIN) * static_cast<double>(std::max<std::size_t>(m, n));
  std::vector<Column> u_cols(n);
  std::vector<Column> accepted;
  for (std::size_t j : order) {
    if (sigma[j] > cutoff) {
      u_cols[j] = w[j];
      for (double& x : u_cols[j]) x /= sigma[j];
      accepted.push_back(u_cols[j]);
    }
  }
  for (std::size_t j : order) {
    if (sigma[j] <= cutoff) {
      u_cols[j] = complete_basis(accepted, m);
      accepted.push_back(u_cols[j]);
    }
  }

  SvdFactors f{Matrix(m, n), std::vector<double>(n), Matrix(n, n)};
  for (std::size_t out = 0; out < n; ++out) {
    const std::size_t j = order[out];
    f.singular_values[out] = sigma[j];
    for (std::size_t i = 0; i < m; ++i) f.u(i, out) = u_cols[j][i];
    for (std::size_t i = 0; i < n; ++i) f.v(i, out) = v[j][i];
  }
  return f;
}

void apply_sign_convention(SvdFactors& f) {
  for (std::size_t j = 0; j < f.rank(); ++j) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < f.u.rows(); ++i) {
      const double mag = std::abs(f.u(i, j));
      // Ties within round-off resolve to the lowest row index.
      if (mag > best * (1.0 + 1e-12) + 1e-300) {
        best = mag;
        arg = i;
      }
    }
    if (f.u(arg, j) < 0.0) {
      for (std::size_t i = 0; i < f.u.rows(); ++i) f.u(i, j) = -f.u(i, j);
      for (std::size_t i = 0; i < f.v.rows(); ++i) f.v(i, j) = -f.v(i, j);
    }
  }
}

}  // namespace

SvdFactors decompose(const Matrix& a, const SvdOptions& options) {
  if (a.rows() == 0 || a.cols() == 0) fail(ErrorKind::ShapeError, "cannot decompose an empty matrix");
  for (double x : a.data())
    if (!std::isfinite(x)) fail(ErrorKind::NumericError, "matrix contains non-finite entries");

  SvdFactors f;
  if (a.rows() >= a.cols()) {
    f = decompose_tall(a, options);
  } else {
    SvdFactors t = decompose_tall(a.transposed(), options);
    f = SvdFactors{std::move(t.v), std::move(t.singular_values), std::move(t.u)};
  }
  apply_sign_convention(f);
  return f;
}

SvdFactors decompose(const NormalizedWeightMatrix& nw, const SvdOptions& options) {
  return decompose(nw.values, options);
}

SvdFactors truncate(const SvdFactors& f, std::size_t k) {
  if (k < 1 || k > f.rank())
    fail(ErrorKind::BadRank, "rank " + std::to_string(k) + " outside [1, " + std::to_string(f.rank()) + "]");
  SvdFactors out{Matrix(f.u.rows(), k),
                 std::vector<double>(f.singular_values.begin(), f.singular_values.begin() + static_cast<std::ptrdiff_t>(k)),
                 Matrix(f.v.rows(), k)};
  for (std::size_t i = 0; i < f.u.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) out.u(i, j) = f.u(i, j);
  for (std::size_t i = 0; i < f.v.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) out.v(i, j) = f.v(i, j);
  return out;
}

Matrix reconstruct(const SvdFactors& f) {
  Matrix out(f.u.rows(), f.v.rows());
  for (std::size_t j = 0; j < f.rank(); ++j) {
    const double s = f.singular_values[j];
    for (std::size_t i = 0; i < f.u.rows(); ++i) {
      const double us = f.u(i, j) * s;
      if (us == 0.0) continue;
      for (std::size_t k = 0; k < f.v.rows(); ++k) out(i, k) += us * f.v(k, j);
    }
  }
  return out;
}

}  // namespace ontoforge
