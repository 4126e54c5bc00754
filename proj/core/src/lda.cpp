#include "ontoforge/lda.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <random>
#include <string>
#include <thread>

#include "ontoforge/error.hpp"
#include "ontoforge/special.hpp"

namespace ontoforge {

namespace {

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ONTOFORGE_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0) return static_cast<std::size_t>(parsed);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs task(i) for i in [0, count) on up to `threads` workers. The first
// failure by task index is rethrown after all workers finish.
template <typename Task>
void parallel_for(std::size_t count, std::size_t threads, Task&& task) {
  std::vector<std::exception_ptr> errors(count);
  const std::size_t workers = std::min(count, threads);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            task(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void check_model(const LdaModel& model) {
  if (model.topics == 0 || model.beta.rows() != model.topics || model.beta.cols() == 0)
    fail(ErrorKind::ShapeError, "malformed LDA model");
}

}  // namespace

SufficientStats SufficientStats::zeros(std::size_t topics, std::size_t vocab_size) {
  return SufficientStats{Matrix(topics, vocab_size), 0};
}

void SufficientStats::accumulate(const DocContribution& contribution) {
  if (contribution.expected.cols() != lambda_acc.rows())
    fail(ErrorKind::ShapeError, "contribution topic count does not match statistics");
  for (std::size_t t = 0; t < contribution.terms.size(); ++t) {
    const std::size_t w = contribution.terms[t];
    if (w >= lambda_acc.cols()) fail(ErrorKind::ShapeError, "contribution term outside vocabulary");
    for (std::size_t k = 0; k < lambda_acc.rows(); ++k) lambda_acc(k, w) += contribution.expected(t, k);
  }
  ++doc_count;
}

LdaModel init_model(std::size_t topics, double alpha, std::size_t vocab_size, std::uint64_t seed) {
  if (topics < 1) fail(ErrorKind::BadHyperparam, "topic count must be at least 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(ErrorKind::BadHyperparam, "alpha must be positive");
  if (vocab_size < 1) fail(ErrorKind::BadHyperparam, "vocabulary must be non-empty");

  LdaModel model;
  model.topics = topics;
  model.alpha = alpha;
  model.seed = seed;
  model.beta = Matrix(topics, vocab_size);

  // Rows drawn from a symmetric Dirichlet(1) via normalized Gamma(1) draws.
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> draw(1.0, 1.0);
  for (std::size_t k = 0; k < topics; ++k) {
    auto row = model.beta.row(k);
    double sum = 0.0;
    for (double& x : row) {
      x = std::max(draw(rng), 1e-100);
      sum += x;
    }
    for (double& x : row) x /= sum;
  }
  return model;
}

EStepResult e_step_doc(const LdaModel& model, std::span<const TermCount> doc, std::size_t doc_id,
                       std::span<const double> initial_gamma, const EStepOptions& options) {
  check_model(model);
  const std::size_t K = model.topics;
  double total = 0.0;
  for (const auto& e : doc) {
    if (e.term >= model.vocab_size()) fail(ErrorKind::ShapeError, "document term outside vocabulary");
    total += e.count;
  }
  if (total == 0.0) fail(ErrorKind::DocumentEmpty, "document " + std::to_string(doc_id) + " has no tokens");

  std::vector<double> gamma(K, model.alpha + total / static_cast<double>(K));
  if (!initial_gamma.empty()) {
    if (initial_gamma.size() != K) fail(ErrorKind::ShapeError, "warm-start gamma has wrong length");
    gamma.assign(initial_gamma.begin(), initial_gamma.end());
  }

  Matrix phi(doc.size(), K);
  std::vector<double> exp_psi(K);
  std::vector<double> next(K);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    for (std::size_t k = 0; k < K; ++k) exp_psi[k] = std::exp(digamma(gamma[k]));
    std::fill(next.begin(), next.end(), model.alpha);
    for (std::size_t t = 0; t < doc.size(); ++t) {
      auto row = phi.row(t);
      double norm = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        row[k] = model.beta(k, doc[t].term) * exp_psi[k];
        norm += row[k];
      }
      if (!(norm > 0.0) || !std::isfinite(norm))
        fail(ErrorKind::NumericError, "word responsibilities degenerate in document " + std::to_string(doc_id));
      for (std::size_t k = 0; k < K; ++k) {
        row[k] /= norm;
        next[k] += doc[t].count * row[k];
      }
    }
    double delta = 0.0;
    for (std::size_t k = 0; k < K; ++k) delta = std::max(delta, std::abs(next[k] - gamma[k]));
    gamma.swap(next);
    if (delta < options.gamma_tolerance) break;
  }

  EStepResult result;
  result.posterior = DocPosterior{doc_id, std::move(gamma)};
  result.contribution.terms.reserve(doc.size());
  result.contribution.expected = Matrix(doc.size(), K);
  for (std::size_t t = 0; t < doc.size(); ++t) {
    result.contribution.terms.push_back(doc[t].term);
    for (std::size_t k = 0; k < K; ++k) result.contribution.expected(t, k) = doc[t].count * phi(t, k);
  }
  return result;
}

SufficientStats merge_stats(const SufficientStats& a, const SufficientStats& b) {
  if (a.lambda_acc.rows() != b.lambda_acc.rows() || a.lambda_acc.cols() != b.lambda_acc.cols())
    fail(ErrorKind::ShapeError, "cannot merge statistics of different shapes");
  SufficientStats out = a;
  auto dst = out.lambda_acc.data();
  auto src = b.lambda_acc.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  out.doc_count += b.doc_count;
  return out;
}

LdaModel m_step(const LdaModel& model, const SufficientStats& stats, double smoothing) {
  check_model(model);
  if (stats.lambda_acc.rows() != model.topics || stats.lambda_acc.cols() != model.vocab_size())
    fail(ErrorKind::ShapeError, "statistics shape does not match model");
  if (!(smoothing >= 0.0) || !std::isfinite(smoothing))
    fail(ErrorKind::BadHyperparam, "smoothing must be non-negative");

  LdaModel next = model;
  next.smoothing = smoothing;
  for (std::size_t k = 0; k < model.topics; ++k) {
    auto src = stats.lambda_acc.row(k);
    auto dst = next.beta.row(k);
    double sum = 0.0;
    for (std::size_t w = 0; w < dst.size(); ++w) {
      dst[w] = src[w] + smoothing;
      sum += dst[w];
    }
    if (!(sum > 0.0) || !std::isfinite(sum))
      fail(ErrorKind::NumericError, "topic " + std::to_string(k) + " has no mass to normalize");
    for (double& x : dst) x /= sum;
  }
  return next;
}

double elbo(const LdaModel& model, std::span<const DocPosterior> posteriors, const TermDocMatrix& corpus) {
  check_model(model);
  if (corpus.rows() != model.vocab_size()) fail(ErrorKind::ShapeError, "corpus vocabulary does not match model");
  if (posteriors.size() != corpus.cols()) fail(ErrorKind::ShapeError, "one posterior per document required");

  const std::size_t K = model.topics;
  const double alpha = model.alpha;
  const double Kd = static_cast<double>(K);
  const double doc_prior_norm = std::lgamma(Kd * alpha) - Kd * std::lgamma(alpha);

  double total = 0.0;
  std::vector<double> e_log_theta(K);
  std::vector<double> scores(K);
  for (const auto& post : posteriors) {
    if (post.doc_id >= corpus.cols() || post.gamma.size() != K)
      fail(ErrorKind::ShapeError, "posterior does not match corpus");
    double gamma_sum = 0.0;
    for (double g : post.gamma) gamma_sum += g;
    const double psi_sum = digamma(gamma_sum);
    double doc = doc_prior_norm - std::lgamma(gamma_sum);
    for (std::size_t k = 0; k < K; ++k) {
      e_log_theta[k] = digamma(post.gamma[k]) - psi_sum;
      doc += (alpha - 1.0) * e_log_theta[k] + std::lgamma(post.gamma[k]) - (post.gamma[k] - 1.0) * e_log_theta[k];
    }
    // With phi optimal for gamma, sum_k phi (E[log theta] + log beta - log phi)
    // collapses to a log-sum-exp.
    for (const auto& e : corpus.column(post.doc_id)) {
      double peak = -INFINITY;
      for (std::size_t k = 0; k < K; ++k) {
        scores[k] = e_log_theta[k] + std::log(model.beta(k, e.term));
        peak = std::max(peak, scores[k]);
      }
      double acc = 0.0;
      for (std::size_t k = 0; k < K; ++k) acc += std::exp(scores[k] - peak);
      doc += e.count * (peak + std::log(acc));
    }
    total += doc;
  }

  if (model.smoothing > 0.0) {
    const double V = static_cast<double>(model.vocab_size());
    const double eta = model.smoothing;
    const double row_norm = std::lgamma(V * (1.0 + eta)) - V * std::lgamma(1.0 + eta);
    for (std::size_t k = 0; k < K; ++k) {
      double log_sum = 0.0;
      for (double b : model.beta.row(k)) log_sum += std::log(b);
      total += row_norm + eta * log_sum;
    }
  }
  if (!std::isfinite(total)) fail(ErrorKind::NumericError, "ELBO is not finite");
  return total;
}

std::vector<std::vector<std::size_t>> partition_round_robin(std::size_t documents, std::size_t shards) {
  if (shards < 1) fail(ErrorKind::BadHyperparam, "shard count must be at least 1");
  std::vector<std::vector<std::size_t>> parts(shards);
  for (std::size_t d = 0; d < documents; ++d) parts[d % shards].push_back(d);
  return parts;
}

LdaFit train(const TermDocMatrix& corpus, const LdaTrainOptions& options) {
  if (corpus.cols() == 0 || corpus.rows() == 0) fail(ErrorKind::CorpusEmpty, "cannot train on an empty corpus");
  if (options.shards < 1) fail(ErrorKind::BadHyperparam, "shard count must be at least 1");
  if (!(options.tolerance >= 0.0)) fail(ErrorKind::BadHyperparam, "tolerance must be non-negative");
  const double alpha = options.alpha.value_or(options.topics > 0 ? default_alpha(options.topics) : 0.0);

  LdaFit fit;
  fit.model = init_model(options.topics, alpha, corpus.rows(), options.seed);
  fit.model.smoothing = options.smoothing;
  if (options.max_iterations == 0) return fit;

  const std::size_t D = corpus.cols();
  const std::size_t K = fit.model.topics;
  const std::size_t V = fit.model.vocab_size();
  const auto shards = partition_round_robin(D, options.shards);
  const std::size_t threads = resolve_threads(options.threads);

  std::vector<DocPosterior> posteriors(D);
  std::vector<SufficientStats> shard_stats(shards.size());

  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    const LdaModel& frozen = fit.model;
    parallel_for(shards.size(), threads, [&](std::size_t s) {
      SufficientStats stats = SufficientStats::zeros(K, V);
      for (std::size_t d : shards[s]) {
        auto result = e_step_doc(frozen, corpus.column(d), d, posteriors[d].gamma, options.e_step);
        stats.accumulate(result.contribution);
        posteriors[d] = std::move(result.posterior);
      }
      shard_stats[s] = std::move(stats);
    });

    SufficientStats merged = SufficientStats::zeros(K, V);
    for (const auto& s : shard_stats) merged = merge_stats(merged, s);

    LdaModel next = m_step(fit.model, merged, options.smoothing);
    next.iterations_run = iter + 1;
    const double bound = elbo(next, posteriors, corpus);
    next.elbo_trace.push_back(bound);
    fit.model = std::move(next);
    if (options.on_iteration) options.on_iteration(fit.model);

    const auto& trace = fit.model.elbo_trace;
    if (trace.size() >= 2) {
      const double prev = trace[trace.size() - 2];
      if (std::abs(bound - prev) < options.tolerance * std::abs(prev)) break;
    }
  }
  fit.posteriors = std::move(posteriors);
  return fit;
}

std::vector<std::pair<std::string, double>> top_words(const LdaModel& model, const Vocabulary& vocabulary,
                                                      std::size_t topic, std::size_t n) {
  if (topic >= model.topics)
    fail(ErrorKind::BadTopic, "topic " + std::to_string(topic) + " outside [0, " + std::to_string(model.topics) + ")");
  if (vocabulary.size() != model.vocab_size()) fail(ErrorKind::ShapeError, "vocabulary does not match model");
  std::vector<std::pair<std::string, double>> words;
  words.reserve(model.vocab_size());
  for (std::size_t w = 0; w < model.vocab_size(); ++w) words.emplace_back(vocabulary.term(w), model.beta(topic, w));
  const std::size_t keep = std::min(n, words.size());
  std::partial_sort(words.begin(), words.begin() + static_cast<std::ptrdiff_t>(keep), words.end(),
                    [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second > b.second;
                      return a.first < b.first;
                    });
  words.resize(keep);
  return words;
}

}  // namespace ontoforge
