#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ontoforge/corpus.hpp"
#include "ontoforge/matrix.hpp"

namespace ontoforge {

// Variational LDA with a symmetric Dirichlet prior on document proportions.
//
// Training follows a map/reduce split: documents are dealt round-robin into
// shards, each shard runs per-document E-steps against the frozen model and
// accumulates expected topic-word counts, the shard statistics are merged in
// ascending shard order, and one M-step updates the topics.

inline constexpr double kDefaultSmoothing = 0.01;
inline constexpr double kDefaultTolerance = 1e-4;
inline constexpr std::size_t kDefaultMaxIterations = 100;

inline double default_alpha(std::size_t topics) { return 50.0 / static_cast<double>(topics); }

struct LdaModel {
  std::size_t topics = 0;
  double alpha = 0.0;
  // Pseudo-count added to every topic-word entry by the M-step.
  double smoothing = kDefaultSmoothing;
  Matrix beta;  // topics x vocabulary, row-stochastic
  std::uint64_t seed = 0;
  std::size_t iterations_run = 0;
  std::vector<double> elbo_trace;

  std::size_t vocab_size() const noexcept { return beta.cols(); }
};

struct DocPosterior {
  std::size_t doc_id = 0;
  std::vector<double> gamma;
};

// Expected counts sum_w count_w * phi(w, k) for the distinct terms of one
// document; row t of `expected` belongs to terms[t].
struct DocContribution {
  std::vector<std::uint32_t> terms;
  Matrix expected;  // terms.size() x topics
};

struct SufficientStats {
  Matrix lambda_acc;  // topics x vocabulary
  std::size_t doc_count = 0;

  static SufficientStats zeros(std::size_t topics, std::size_t vocab_size);
  void accumulate(const DocContribution& contribution);
};

struct EStepOptions {
  double gamma_tolerance = 1e-5;
  int max_iterations = 100;
};

struct EStepResult {
  DocPosterior posterior;
  DocContribution contribution;
};

LdaModel init_model(std::size_t topics, double alpha, std::size_t vocab_size, std::uint64_t seed);

// Coordinate ascent on (phi, gamma) for one document. `initial_gamma`, when
// given, warm-starts the iteration.
EStepResult e_step_doc(const LdaModel& model, std::span<const TermCount> doc, std::size_t doc_id = 0,
                       std::span<const double> initial_gamma = {}, const EStepOptions& options = {});

SufficientStats merge_stats(const SufficientStats& a, const SufficientStats& b);

LdaModel m_step(const LdaModel& model, const SufficientStats& stats, double smoothing);

// Evidence lower bound of the corpus under the model with document
// posteriors `posteriors` (indexed by doc_id). Word assignments are the
// optimal phi for each gamma. Includes the log density of the smoothing
// prior Dirichlet(1 + smoothing) on each topic row, the objective the
// M-step maximizes.
double elbo(const LdaModel& model, std::span<const DocPosterior> posteriors, const TermDocMatrix& corpus);

struct LdaTrainOptions {
  std::size_t topics = 10;
  std::optional<double> alpha;  // defaults to 50 / topics
  std::uint64_t seed = 0;
  std::size_t shards = 1;
  std::size_t max_iterations = kDefaultMaxIterations;
  double tolerance = kDefaultTolerance;
  double smoothing = kDefaultSmoothing;
  // Worker threads for shard E-steps; 0 reads ONTOFORGE_THREADS, falling
  // back to the hardware concurrency.
  std::size_t threads = 0;
  EStepOptions e_step;
  // Invoked after every M-step and ELBO evaluation.
  std::function<void(const LdaModel&)> on_iteration;
};

struct LdaFit {
  LdaModel model;
  std::vector<DocPosterior> posteriors;
};

LdaFit train(const TermDocMatrix& corpus, const LdaTrainOptions& options);

// Documents assigned to each shard, round-robin by document index.
std::vector<std::vector<std::size_t>> partition_round_robin(std::size_t documents, std::size_t shards);

std::vector<std::pair<std::string, double>> top_words(const LdaModel& model, const Vocabulary& vocabulary,
                                                      std::size_t topic, std::size_t n);

}  // namespace ontoforge
