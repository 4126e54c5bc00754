#include "ontoforge/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>

#include "ontoforge/error.hpp"
#include "ontoforge/svd.hpp"
#include "ontoforge/weights.hpp"

namespace ontoforge {

namespace {

using ojson = nlohmann::ordered_json;

// UTC timestamp; SOURCE_DATE_EPOCH pins it for reproducible builds.
std::string timestamp_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long parsed = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0') t = static_cast<std::time_t>(parsed);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ojson hyperparameters(const BuildConfig& c) {
  if (c.backend == Backend::Lsi) return ojson{{"concepts", c.concepts}, {"tau", c.tau}};
  ojson h{{"topics", c.topics}};
  h["alpha"] = c.alpha ? ojson(*c.alpha) : ojson(nullptr);
  h["seed"] = c.seed;
  h["shards"] = c.shards;
  h["max_iterations"] = c.max_iterations;
  h["tolerance"] = c.tolerance;
  h["smoothing"] = c.smoothing;
  h["words_per_topic"] = c.words_per_topic;
  h["min_prob"] = c.min_prob;
  return h;
}

template <typename T>
void read_if_present(const ojson& h, const char* key, T& out) {
  if (!h.contains(key)) return;
  try {
    out = h.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::ParseError, std::string("provenance hyperparameter '") + key + "' has the wrong type");
  }
}

}  // namespace

void validate(const BuildConfig& c) {
  auto bad = [](const std::string& what) { fail(ErrorKind::BadHyperparam, what); };
  if (c.backend == Backend::Lsi) {
    if (!(c.tau > 0.0) || !std::isfinite(c.tau)) bad("--tau must be positive");
  } else {
    if (c.topics < 1) bad("--topics must be at least 1");
    if (c.alpha && (!(*c.alpha > 0.0) || !std::isfinite(*c.alpha))) bad("--alpha must be positive");
    if (c.shards < 1) bad("--shards must be at least 1");
    if (!(c.tolerance >= 0.0) || !std::isfinite(c.tolerance)) bad("--tol must be non-negative");
    if (!(c.smoothing > 0.0) || !std::isfinite(c.smoothing)) bad("--smoothing must be positive");
    if (c.words_per_topic < 1) bad("--words must be at least 1");
    if (!(c.min_prob >= 0.0) || c.min_prob > 1.0) bad("--min-prob must lie in [0, 1]");
    if (c.max_iterations < 1) bad("--max-iters must be at least 1");
  }
}

BuildResult build_ontology(const Corpus& corpus, const BuildConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();

  BuildResult result{OntologyGraph(config.backend), {}};
  if (config.backend == Backend::Lsi) {
    const auto factors = decompose(normalize_weights(term_weight_matrix(corpus.counts)));
    std::size_t k = config.concepts == 0 ? std::min(corpus.documents.size(), factors.rank()) : config.concepts;
    const auto concepts = extract_concepts(factors, corpus.vocabulary, k, config.tau);
    result.graph = build_from_concepts(concepts);
    result.summary.concepts = concepts.size();
  } else {
    LdaTrainOptions options;
    options.topics = config.topics;
    options.alpha = config.alpha;
    options.seed = config.seed;
    options.shards = config.shards;
    options.max_iterations = config.max_iterations;
    options.tolerance = config.tolerance;
    options.smoothing = config.smoothing;
    options.threads = config.threads;
    const auto fit = train(corpus.counts, options);
    result.graph = build_from_lda(fit.model, corpus.vocabulary, config.words_per_topic, config.min_prob);
    result.summary.concepts = fit.model.topics;
  }

  Provenance& p = result.graph.provenance();
  p.corpus_digest = corpus.digest;
  p.documents = corpus.documents.size();
  p.vocabulary = corpus.vocabulary.size();
  p.hyperparameters = hyperparameters(config);
  p.created_at = timestamp_now();

  result.summary.documents = corpus.documents.size();
  result.summary.vocabulary = corpus.vocabulary.size();
  result.summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

BuildResult build_ontology(const BuildConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const Corpus corpus =
      config.stopwords.empty() ? load_corpus(config.input, StopWords{}) : load_corpus(config.input, config.stopwords);
  BuildResult result = build_ontology(corpus, config);
  result.summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

BuildConfig config_from_provenance(const OntologyGraph& g) {
  BuildConfig c;
  c.backend = g.backend();
  const ojson& h = g.provenance().hyperparameters;
  if (!h.is_object()) fail(ErrorKind::ParseError, "provenance hyperparameters must be an object");
  if (c.backend == Backend::Lsi) {
    read_if_present(h, "concepts", c.concepts);
    read_if_present(h, "tau", c.tau);
  } else {
    read_if_present(h, "topics", c.topics);
    if (h.contains("alpha") && !h.at("alpha").is_null()) {
      double a = 0.0;
      read_if_present(h, "alpha", a);
      c.alpha = a;
    }
    read_if_present(h, "seed", c.seed);
    read_if_present(h, "shards", c.shards);
    read_if_present(h, "max_iterations", c.max_iterations);
    read_if_present(h, "tolerance", c.tolerance);
    read_if_present(h, "smoothing", c.smoothing);
    read_if_present(h, "words_per_topic", c.words_per_topic);
    read_if_present(h, "min_prob", c.min_prob);
  }
  return c;
}

OntologyGraph rebuild(const std::filesystem::path& dir, const OntologyGraph& previous,
                      const std::filesystem::path& stopwords) {
  BuildConfig config = config_from_provenance(previous);
  config.input = dir;
  config.stopwords = stopwords;
  return build_ontology(config).graph;
}

}  // namespace ontoforge
