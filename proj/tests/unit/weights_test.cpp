#include "ontoforge/weights.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

namespace ontoforge {
namespace {

using testing::error_kind_of;

TermDocMatrix single_column(std::vector<std::uint32_t> counts) {
  std::vector<TermCount> col;
  for (std::uint32_t i = 0; i < counts.size(); ++i)
    if (counts[i] > 0) col.push_back({i, counts[i]});
  return TermDocMatrix(counts.size(), {col});
}

double column_norm(const Matrix& m, std::size_t k) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, k) * m(i, k);
  return std::sqrt(s);
}

TEST(TermWeight, FrequencyOverDocumentLength) {
  const auto w = term_weight_matrix(single_column({2, 8}));
  EXPECT_DOUBLE_EQ(w.values(0, 0), 0.2);
  EXPECT_DOUBLE_EQ(w.values(1, 0), 0.8);
  EXPECT_DOUBLE_EQ(term_weight_matrix(single_column({1})).values(0, 0), 1.0);
}

TEST(TermWeight, FiveToOneRatioInHundredTokenDocument) {
  // One term five times, 95 other terms once: the frequent term weighs 0.05
  // and every singleton 0.01.
  std::vector<std::uint32_t> counts(96, 1);
  counts[0] = 5;
  const auto w = term_weight_matrix(single_column(counts));
  EXPECT_NEAR(w.values(0, 0), 0.05, 1e-15);
  EXPECT_NEAR(w.values(1, 0), 0.01, 1e-15);
  EXPECT_NEAR(w.values(0, 0) / w.values(1, 0), 5.0, 1e-12);
}

TEST(TermWeight, RejectsDegenerateInput) {
  EXPECT_EQ(error_kind_of([] { term_weight_matrix(TermDocMatrix(3, {{}})); }), ErrorKind::DegenerateDocument);
  EXPECT_EQ(error_kind_of([] { term_weight_matrix(TermDocMatrix()); }), ErrorKind::DegenerateDocument);
}

TEST(NormalizeWeights, HandEvaluatedColumns) {
  WeightMatrix w{Matrix(2, 2)};
  w.values(0, 0) = 0.3;
  w.values(1, 0) = 0.4;
  w.values(0, 1) = 0.6;
  w.values(1, 1) = 0.8;
  const auto nw = normalize_weights(w);
  EXPECT_NEAR(nw.values(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(nw.values(1, 0), 0.8, 1e-15);
  EXPECT_NEAR(nw.values(0, 1), 0.6, 1e-15);
  EXPECT_NEAR(nw.values(1, 1), 0.8, 1e-15);
}

TEST(NormalizeWeights, FiveTwoOnePattern) {
  const auto nw = normalize_weights(term_weight_matrix(single_column({5, 2, 1, 1, 1, 1, 1})));
  EXPECT_NEAR(nw.values(0, 0) / nw.values(2, 0), 5.0, 1e-12);
  EXPECT_NEAR(nw.values(1, 0) / nw.values(2, 0), 2.0, 1e-12);
  EXPECT_NEAR(column_norm(nw.values, 0), 1.0, 1e-12);
}

TEST(NormalizeWeights, PropertiesOnRandomCounts) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint32_t> count(0, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t terms = 2 + rng() % 30;
    const std::size_t docs = 1 + rng() % 10;
    std::vector<std::vector<TermCount>> cols(docs);
    std::vector<std::vector<TermCount>> tripled(docs);
    for (std::size_t k = 0; k < docs; ++k) {
      for (std::uint32_t i = 0; i < terms; ++i) {
        const auto c = count(rng);
        if (c) {
          cols[k].push_back({i, c});
          tripled[k].push_back({i, 3 * c});
        }
      }
      if (cols[k].empty()) {
        cols[k].push_back({0, 1});
        tripled[k].push_back({0, 3});
      }
    }
    const TermDocMatrix counts(terms, cols);
    const auto nw = normalize_weights(term_weight_matrix(counts));
    const auto nw3 = normalize_weights(term_weight_matrix(TermDocMatrix(terms, tripled)));
    for (std::size_t k = 0; k < docs; ++k) {
      EXPECT_NEAR(column_norm(nw.values, k), 1.0, 1e-9);
      for (std::size_t i = 0; i < terms; ++i) {
        EXPECT_EQ(nw.values(i, k) == 0.0, counts.at(i, k) == 0);
        EXPECT_GE(nw.values(i, k), 0.0);
        EXPECT_LE(nw.values(i, k), 1.0);
        EXPECT_NEAR(nw.values(i, k), nw3.values(i, k), 1e-15);
        for (std::size_t j = 0; j < terms; ++j) {
          const auto ci = counts.at(i, k);
          const auto cj = counts.at(j, k);
          if (ci == 0 || cj == 0) continue;
          EXPECT_NEAR(nw.values(i, k) / nw.values(j, k), static_cast<double>(ci) / cj, 1e-12);
          if (ci > cj) EXPECT_GT(nw.values(i, k), nw.values(j, k));
        }
      }
    }
  }
}

TEST(NormalizeWeights, UnitColumnUnchanged) {
  WeightMatrix w{Matrix(2, 1)};
  w.values(0, 0) = 0.6;
  w.values(1, 0) = 0.8;
  const auto nw = normalize_weights(w);
  EXPECT_NEAR(nw.values(0, 0), 0.6, 1e-16);
  EXPECT_NEAR(nw.values(1, 0), 0.8, 1e-16);
}

}  // namespace
}  // namespace ontoforge
