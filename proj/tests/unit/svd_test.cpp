#include "ontoforge/svd.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "test_support.hpp"

namespace ontoforge {
namespace {

using testing::error_kind_of;
using testing::frobenius_distance;
using testing::orthonormality_residual;
using testing::random_matrix;

void expect_valid_factors(const Matrix& a, const SvdFactors& f) {
  EXPECT_LE(orthonormality_residual(f.u), 1e-8);
  EXPECT_LE(orthonormality_residual(f.v), 1e-8);
  for (std::size_t j = 0; j < f.rank(); ++j) {
    EXPECT_GE(f.singular_values[j], 0.0);
    if (j > 0) EXPECT_GE(f.singular_values[j - 1], f.singular_values[j]);
  }
  EXPECT_LE(frobenius_distance(a, reconstruct(f)), 1e-8 * std::max(a.frobenius_norm(), 1e-300));
}

TEST(Svd, Identity) {
  const auto f = decompose(Matrix::identity(3));
  for (double s : f.singular_values) EXPECT_NEAR(s, 1.0, 1e-15);
  const auto uvt = multiply(f.u, f.v.transposed());
  EXPECT_LE(max_abs_difference(uvt, Matrix::identity(3)), 1e-14);
}

TEST(Svd, RankOne) {
  const std::vector<double> u = {0.6, 0.0, 0.8};
  const std::vector<double> v = {1 / std::sqrt(2.0), -1 / std::sqrt(2.0)};
  Matrix a(3, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) a(i, j) = u[i] * v[j];
  const auto f = decompose(a);
  ASSERT_EQ(f.rank(), 2u);
  EXPECT_NEAR(f.singular_values[0], 1.0, 1e-14);
  EXPECT_NEAR(f.singular_values[1], 0.0, 1e-14);
  expect_valid_factors(a, f);
  // Sign convention: the dominant U component is positive.
  EXPECT_NEAR(f.u(2, 0), 0.8, 1e-14);
}

TEST(Svd, Random50x9AgainstGramEigenOracle) {
  std::mt19937_64 rng(50);
  const auto a = random_matrix(50, 9, rng);
  const auto f = decompose(a);
  expect_valid_factors(a, f);
  const auto eig = testing::symmetric_eigenvalues(testing::small_gram(a));
  ASSERT_EQ(eig.size(), f.rank());
  for (std::size_t j = 0; j < eig.size(); ++j)
    EXPECT_NEAR(f.singular_values[j] * f.singular_values[j], eig[j], 1e-7 * eig[j]);
}

TEST(Svd, WideMatrices) {
  std::mt19937_64 rng(9);
  const auto a = random_matrix(4, 11, rng);
  const auto f = decompose(a);
  EXPECT_EQ(f.u.rows(), 4u);
  EXPECT_EQ(f.v.rows(), 11u);
  EXPECT_EQ(f.rank(), 4u);
  expect_valid_factors(a, f);
}

TEST(Svd, RankDeficientKeepsOrthonormalFactors) {
  std::mt19937_64 rng(21);
  const auto left = random_matrix(12, 2, rng);
  const auto right = random_matrix(2, 6, rng);
  const auto a = multiply(left, right);  // rank 2
  const auto f = decompose(a);
  expect_valid_factors(a, f);
  for (std::size_t j = 2; j < f.rank(); ++j) EXPECT_LT(f.singular_values[j], 1e-12 * f.singular_values[0]);

  Matrix zero(5, 3);
  const auto fz = decompose(zero);
  expect_valid_factors(zero, fz);
}

TEST(Svd, SignConventionDeterministic) {
  std::mt19937_64 rng(4);
  const auto a = random_matrix(7, 5, rng);
  const auto f = decompose(a);
  for (std::size_t j = 0; j < f.rank(); ++j) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < f.u.rows(); ++i)
      if (std::abs(f.u(i, j)) > std::abs(f.u(arg, j))) arg = i;
    EXPECT_GT(f.u(arg, j), 0.0);
  }
  const auto g = decompose(a);
  EXPECT_EQ(f.u, g.u);
  EXPECT_EQ(f.v, g.v);
}

TEST(Svd, ColumnPermutationEquivariance) {
  std::mt19937_64 rng(17);
  const auto a = random_matrix(10, 6, rng);
  std::vector<std::size_t> perm = {3, 0, 5, 1, 4, 2};
  Matrix p(10, 6);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 6; ++j) p(i, j) = a(i, perm[j]);
  const auto f = decompose(a);
  const auto g = decompose(p);
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_NEAR(f.singular_values[j], g.singular_values[j], 1e-12);
    for (std::size_t r = 0; r < 6; ++r) EXPECT_NEAR(g.v(r, j), f.v(perm[r], j), 1e-9);
    for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(g.u(i, j), f.u(i, j), 1e-9);
  }
}

TEST(Svd, ErrorsOnBadInput) {
  Matrix a(2, 2, 1.0);
  a(0, 1) = std::nan("");
  EXPECT_EQ(error_kind_of([&] { decompose(a); }), ErrorKind::NumericError);
  a(0, 1) = INFINITY;
  EXPECT_EQ(error_kind_of([&] { decompose(a); }), ErrorKind::NumericError);
  EXPECT_EQ(error_kind_of([] { decompose(Matrix()); }), ErrorKind::ShapeError);
}

TEST(Svd, ConvergenceErrorWhenSweepCapTooSmall) {
  std::mt19937_64 rng(8);
  const auto a = random_matrix(30, 10, rng);
  SvdOptions opts;
  opts.max_sweeps = 1;
  EXPECT_EQ(error_kind_of([&] { decompose(a, opts); }), ErrorKind::ConvergenceError);
}

TEST(Truncate, KeepsLeadingTriplets) {
  std::mt19937_64 rng(20);
  const auto a = random_matrix(20, 5, rng);
  const auto f = decompose(a);
  const auto full = truncate(f, 5);
  EXPECT_EQ(full.u, f.u);
  EXPECT_EQ(full.singular_values, f.singular_values);

  // Eckart-Young: the rank-3 residual is the norm of the dropped values.
  const auto t = truncate(f, 3);
  ASSERT_EQ(t.rank(), 3u);
  const double expected = std::hypot(f.singular_values[3], f.singular_values[4]);
  EXPECT_NEAR(frobenius_distance(a, reconstruct(t)), expected, 1e-10);

  EXPECT_EQ(error_kind_of([&] { truncate(f, 0); }), ErrorKind::BadRank);
  EXPECT_EQ(error_kind_of([&] { truncate(f, 6); }), ErrorKind::BadRank);
}

TEST(Truncate, RankOneExact) {
  Matrix a(3, 3);
  const double u[3] = {1, 2, 2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = u[i] * u[j] / 9.0;
  const auto t = truncate(decompose(a), 1);
  EXPECT_LE(frobenius_distance(a, reconstruct(t)), 1e-14);
}

}  // namespace
}  // namespace ontoforge
