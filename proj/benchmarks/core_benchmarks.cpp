#include <benchmark/benchmark.h>

#include <random>

#include "ontoforge/graph_algorithms.hpp"
#include "ontoforge/lda.hpp"
#include "ontoforge/svd.hpp"

using namespace ontoforge;

static Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (double& x : m.data()) x = normal(rng);
  return m;
}

static void BM_SvdDecompose(benchmark::State& state) {
  const auto a = random_matrix(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(a));
}
BENCHMARK(BM_SvdDecompose)->Args({200, 20})->Args({1000, 50})->Args({2000, 100})->Unit(benchmark::kMillisecond);

static TermDocMatrix random_corpus(std::size_t docs, std::size_t vocab, std::size_t tokens) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint32_t> word(0, static_cast<std::uint32_t>(vocab - 1));
  std::vector<std::vector<TermCount>> cols(docs);
  for (auto& col : cols) {
    std::vector<std::uint32_t> counts(vocab, 0);
    for (std::size_t i = 0; i < tokens; ++i) ++counts[word(rng)];
    for (std::uint32_t w = 0; w < vocab; ++w)
      if (counts[w]) col.push_back({w, counts[w]});
  }
  return TermDocMatrix(vocab, std::move(cols));
}

// One EM iteration per benchmark iteration; range(0) is the shard count.
static void BM_LdaIteration(benchmark::State& state) {
  const auto corpus = random_corpus(500, 2000, 150);
  LdaTrainOptions opt;
  opt.topics = 20;
  opt.max_iterations = 1;
  opt.shards = static_cast<std::size_t>(state.range(0));
  opt.threads = opt.shards;
  for (auto _ : state) benchmark::DoNotOptimize(train(corpus, opt));
}
BENCHMARK(BM_LdaIteration)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

// Root, concepts and terms laid out like a learned ontology.
static void BM_Betweenness(benchmark::State& state) {
  const std::size_t concepts = static_cast<std::size_t>(state.range(0));
  const std::size_t terms = concepts * 15;
  AdjacencyList adj(1 + concepts + terms);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, terms - 1);
  auto link = [&](std::size_t a, std::size_t b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (std::size_t c = 0; c < concepts; ++c) {
    link(0, 1 + c);
    for (int w = 0; w < 20; ++w) link(1 + c, 1 + concepts + pick(rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(betweenness_centrality(adj));
}
BENCHMARK(BM_Betweenness)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
