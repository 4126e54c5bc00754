#include "ontoforge/pipeline.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "test_support.hpp"

namespace ontoforge {
namespace {

using testing::error_kind_of;
using testing::TempDir;

std::set<std::string> term_labels(const OntologyGraph& g) {
  std::set<std::string> out;
  for (auto t : g.term_nodes()) out.insert(g.node(t).label);
  return out;
}

std::map<std::pair<std::string, std::string>, double> word_weights(const OntologyGraph& g) {
  std::map<std::pair<std::string, std::string>, double> out;
  for (const auto& e : g.edges())
    if (e.kind == EdgeKind::HasWord) out[{g.node(e.from).label, g.node(e.to).label}] = e.weight;
  return out;
}

void write_news(const TempDir& dir) {
  dir.write("stop.txt", "the\nof\nand\nto\n");
  dir.write("docs/a.txt", "The federal law and the laws of people oppose crimes");
  dir.write("docs/b.txt", "Rutgers and McGill mail address, Kaldis to Merrimack hill");
  dir.write("docs/c.txt", "Energy population of Toronto and Radford, energy technet");
}

BuildConfig lda_config(const TempDir& dir) {
  BuildConfig c;
  c.backend = Backend::Lda;
  c.input = dir / "docs";
  c.stopwords = dir / "stop.txt";
  c.topics = 2;
  c.seed = 3;
  c.max_iterations = 30;
  c.words_per_topic = 100;
  c.min_prob = 0.0;
  return c;
}

TEST(Validate, RejectsBadHyperparameters) {
  BuildConfig c;
  c.tau = 0.0;
  EXPECT_EQ(error_kind_of([&] { validate(c); }), ErrorKind::BadHyperparam);
  c = BuildConfig{};
  c.backend = Backend::Lda;
  EXPECT_NO_THROW(validate(c));
  for (auto mutate : std::vector<std::function<void(BuildConfig&)>>{
           [](BuildConfig& b) { b.topics = 0; }, [](BuildConfig& b) { b.alpha = -1.0; },
           [](BuildConfig& b) { b.shards = 0; }, [](BuildConfig& b) { b.tolerance = -1.0; },
           [](BuildConfig& b) { b.smoothing = 0.0; }, [](BuildConfig& b) { b.words_per_topic = 0; },
           [](BuildConfig& b) { b.min_prob = 1.5; }, [](BuildConfig& b) { b.max_iterations = 0; }}) {
    BuildConfig b = c;
    mutate(b);
    EXPECT_EQ(error_kind_of([&] { validate(b); }), ErrorKind::BadHyperparam);
  }
}

TEST(BuildOntology, LsiSummaryAndProvenance) {
  TempDir dir;
  write_news(dir);
  BuildConfig c;
  c.input = dir / "docs";
  c.stopwords = dir / "stop.txt";
  const auto r = build_ontology(c);
  EXPECT_EQ(r.summary.documents, 3u);
  EXPECT_EQ(r.summary.concepts, 3u);
  EXPECT_EQ(r.graph.concept_nodes().size(), 3u);
  EXPECT_NO_THROW(r.graph.validate());
  const auto& p = r.graph.provenance();
  EXPECT_EQ(p.documents, 3u);
  EXPECT_EQ(p.vocabulary, r.summary.vocabulary);
  EXPECT_FALSE(p.corpus_digest.empty());
  EXPECT_FALSE(p.created_at.empty());
  EXPECT_FALSE(r.graph.find_term("the"));
  const auto back = config_from_provenance(r.graph);
  EXPECT_EQ(back.backend, Backend::Lsi);
  EXPECT_EQ(back.tau, c.tau);
}

TEST(BuildOntology, LdaConfigRoundTripsThroughProvenance) {
  TempDir dir;
  write_news(dir);
  auto c = lda_config(dir);
  c.alpha = 0.7;
  const auto r = build_ontology(c);
  EXPECT_EQ(r.graph.backend(), Backend::Lda);
  EXPECT_EQ(r.graph.concept_nodes().size(), 2u);
  const auto back = config_from_provenance(r.graph);
  EXPECT_EQ(back.topics, 2u);
  EXPECT_EQ(back.alpha, std::optional<double>(0.7));
  EXPECT_EQ(back.seed, 3u);
  EXPECT_EQ(back.max_iterations, 30u);
  EXPECT_EQ(back.min_prob, 0.0);
}

TEST(Rebuild, UnchangedDirectoryReproducesGraph) {
  TempDir dir;
  write_news(dir);
  for (auto backend : {Backend::Lsi, Backend::Lda}) {
    auto c = lda_config(dir);
    c.backend = backend;
    const auto first = build_ontology(c).graph;
    const auto again = rebuild(dir / "docs", first, dir / "stop.txt");
    EXPECT_TRUE(same_content(first, again)) << to_string(backend);
  }
}

TEST(Rebuild, ExistingVocabularyKeepsTermSet) {
  TempDir dir;
  write_news(dir);
  const auto first = build_ontology(lda_config(dir)).graph;
  dir.write("docs/d.txt", "energy law federal energy toronto");
  const auto second = rebuild(dir / "docs", first, dir / "stop.txt");
  EXPECT_EQ(term_labels(second), term_labels(first));
  EXPECT_NE(word_weights(second), word_weights(first));
  EXPECT_NE(second.provenance().corpus_digest, first.provenance().corpus_digest);
  EXPECT_EQ(second.provenance().documents, 4u);
  EXPECT_NO_THROW(second.validate());
}

TEST(Rebuild, NewTermsGrowTermSet) {
  TempDir dir;
  write_news(dir);
  const auto first = build_ontology(lda_config(dir)).graph;
  const auto before = term_labels(first);
  dir.write("docs/e.txt", "quantum chromodynamics lattice energy");
  const auto after = term_labels(rebuild(dir / "docs", first, dir / "stop.txt"));
  EXPECT_TRUE(std::includes(after.begin(), after.end(), before.begin(), before.end()));
  EXPECT_GT(after.size(), before.size());
  EXPECT_TRUE(after.contains("quantum"));
}

TEST(Rebuild, MissingDirectory) {
  TempDir dir;
  write_news(dir);
  const auto first = build_ontology(lda_config(dir)).graph;
  EXPECT_EQ(error_kind_of([&] { rebuild(dir / "nowhere", first, dir / "stop.txt"); }), ErrorKind::IngestError);
}

}  // namespace
}  // namespace ontoforge
