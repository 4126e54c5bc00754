#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>

#include "ontoforge/corpus.hpp"
#include "ontoforge/lda.hpp"
#include "ontoforge/lsi_concepts.hpp"
#include "ontoforge/ontology.hpp"

namespace ontoforge {

// Everything needed to turn a corpus directory into an ontology. The
// hyperparameters are recorded in the graph provenance so a later rebuild
// can replay them.
struct BuildConfig {
  Backend backend = Backend::Lsi;
  std::filesystem::path input;
  std::filesystem::path stopwords;

  // lsi
  std::size_t concepts = 0;  // 0: one concept per document, capped at the SVD rank
  double tau = kDefaultMembershipThreshold;

  // lda
  std::size_t topics = 10;
  std::optional<double> alpha;  // 50 / topics when unset
  std::uint64_t seed = 0;
  std::size_t shards = 1;
  std::size_t max_iterations = kDefaultMaxIterations;
  double tolerance = kDefaultTolerance;
  double smoothing = kDefaultSmoothing;
  std::size_t words_per_topic = kDefaultWordsPerTopic;
  double min_prob = kDefaultMinProbability;
  std::size_t threads = 0;
};

// Throws BadHyperparam on the first invalid setting.
void validate(const BuildConfig& config);

struct BuildSummary {
  std::size_t documents = 0;
  std::size_t vocabulary = 0;
  std::size_t concepts = 0;
  double seconds = 0.0;
};

struct BuildResult {
  OntologyGraph graph;
  BuildSummary summary;
};

BuildResult build_ontology(const Corpus& corpus, const BuildConfig& config);
BuildResult build_ontology(const BuildConfig& config);

// Re-runs the whole pipeline on `dir` with the hyperparameters recorded in
// `previous`. `previous` is not modified.
OntologyGraph rebuild(const std::filesystem::path& dir, const OntologyGraph& previous,
                      const std::filesystem::path& stopwords);

// Hyperparameters recorded in a graph's provenance, as a config.
BuildConfig config_from_provenance(const OntologyGraph& g);

}  // namespace ontoforge
