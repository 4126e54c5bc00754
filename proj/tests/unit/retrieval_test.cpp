#include "ontoforge/retrieval.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "test_support.hpp"

namespace ontoforge {
namespace {

using testing::error_kind_of;

const char* kClaimLexicon =
    "# claim, first synonym set\n"
    "claim\taver\t1\n"
    "claim\tavow\t2\n"
    "claim\taffirm\t3\n"
    "claim\thold\t4\n"
    "claim\tstate\t5\n"
    "claim\tmaintain\t6\n"
    "claim\tprofess\t7\n"
    "claim\tdeclare\t8\n"
    "claim\tassert\t9\n";

// Topics 2, 9 and 19 of a twenty-topic model; "allow" sits under 2 and 9.
OntologyGraph allow_graph() {
  OntologyGraph g(Backend::Lda);
  const auto t2 = g.add_concept(2, "topic-2");
  const auto t9 = g.add_concept(9, "topic-9");
  const auto t19 = g.add_concept(19, "topic-19");
  g.add_word(t2, g.add_term("allow"), 0.031);
  g.add_word(t9, g.add_term("allow"), 0.012);
  g.add_word(t19, g.add_term("according"), 0.02);
  g.add_word(t2, g.add_term("program"), 0.05);
  return g;
}

TEST(SynonymMembership, RankScale) {
  EXPECT_DOUBLE_EQ(synonym_membership(1), 0.51);
  EXPECT_DOUBLE_EQ(synonym_membership(9), 0.59);
}

TEST(ExpandSynonyms, ClaimSynonymSet) {
  const auto lex = SynonymLexicon::parse(kClaimLexicon);
  const auto e = expand_synonyms("claim", lex);
  const std::vector<std::string> words = {"claim",   "aver",     "avow",    "affirm",  "hold",
                                          "state",   "maintain", "profess", "declare", "assert"};
  ASSERT_EQ(e.size(), words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    EXPECT_EQ(e[i].candidate, words[i]);
    EXPECT_NEAR(e[i].membership, i == 0 ? 1.0 : 0.5 + 0.01 * static_cast<double>(i), 1e-15);
  }
}

TEST(ExpandSynonyms, UnknownTermAndEmptyLexicon) {
  const auto lex = SynonymLexicon::parse(kClaimLexicon);
  const auto e = expand_synonyms("energy", lex);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].candidate, "energy");
  EXPECT_EQ(e[0].membership, 1.0);
  EXPECT_EQ(expand_synonyms("claim", SynonymLexicon{}).size(), 1u);
}

TEST(SynonymLexicon, RejectsMalformedRows) {
  EXPECT_EQ(error_kind_of([] { SynonymLexicon::parse("claim\taver\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(error_kind_of([] { SynonymLexicon::parse("claim\taver\tten\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(error_kind_of([] { SynonymLexicon::parse("claim\taver\t10\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(error_kind_of([] { SynonymLexicon::parse("claim\taver\t1\nclaim\tavow\t1\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(error_kind_of([] { SynonymLexicon::parse("claim\tavow\t2\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(SynonymLexicon::parse("\n# only comments\n\n").size(), 0u);
  EXPECT_EQ(error_kind_of([] { SynonymLexicon::load("/nonexistent/lexicon.tsv"); }), ErrorKind::IoError);
}

TEST(DetectTopics, AllowUnderTwoTopics) {
  const auto g = allow_graph();
  const auto r = detect_topics("Is this allowed? We allow it", g, {}, parse_stopwords("is\nthis\nwe\nit\n"));
  ASSERT_EQ(r.terms.size(), 2u);
  EXPECT_EQ(r.terms[0].query_term, "allowed");
  EXPECT_FALSE(r.terms[0].matched);
  EXPECT_EQ(r.misses, (std::vector<std::string>{"allowed"}));
  const auto& allow = r.terms[1];
  ASSERT_TRUE(allow.matched);
  EXPECT_EQ(*allow.matched, "allow");
  EXPECT_EQ(allow.membership, 1.0);
  std::set<std::string> labels;
  std::set<std::size_t> ids;
  for (const auto& t : allow.topics) {
    labels.insert(t.label);
    ids.insert(t.concept_id);
  }
  EXPECT_EQ(labels, (std::set<std::string>{"topic-2", "topic-9"}));
  EXPECT_EQ(ids, (std::set<std::size_t>{2, 9}));
  // Half the terms matched, directly: (0.5 + 1.0) / 2.
  EXPECT_DOUBLE_EQ(r.score, 0.75);
}

TEST(DetectTopics, ReportsOnlyAdjacentConcepts) {
  const auto g = allow_graph();
  const auto r = detect_topics("allow according program", g, {});
  for (const auto& m : r.terms) {
    ASSERT_TRUE(m.matched);
    std::set<NodeId> adjacent;
    for (const auto* e : g.owners_of(m.term_node)) adjacent.insert(e->from);
    std::set<NodeId> reported;
    for (const auto& t : m.topics) {
      reported.insert(t.node);
      EXPECT_TRUE(g.find_concept(t.concept_id).has_value());
    }
    EXPECT_EQ(reported, adjacent);
  }
  EXPECT_DOUBLE_EQ(r.score, 1.0);
}

TEST(DetectTopics, SynonymMatchRecordsMembership) {
  OntologyGraph g;
  const auto c = g.add_concept(0, "-assert-truth");
  g.add_word(c, g.add_term("assert"), 0.8);
  g.add_word(c, g.add_term("truth"), 0.4);
  const auto r = detect_topics("claim", g, SynonymLexicon::parse(kClaimLexicon));
  ASSERT_EQ(r.terms.size(), 1u);
  EXPECT_EQ(r.terms[0].matched, std::optional<std::string>("assert"));
  EXPECT_DOUBLE_EQ(r.terms[0].membership, 0.59);
  EXPECT_DOUBLE_EQ(r.score, fuzzy_score(1.0, 0.59, 2));
}

TEST(DetectTopics, EmptyQueries) {
  const auto g = allow_graph();
  const auto sw = parse_stopwords("the\nand\n");
  EXPECT_EQ(error_kind_of([&] { detect_topics("the and THE", g, {}, sw); }), ErrorKind::QueryEmpty);
  EXPECT_EQ(error_kind_of([&] { detect_topics("  ?! ", g, {}, sw); }), ErrorKind::QueryEmpty);
  const auto miss = detect_topics("zebra", g, {});
  EXPECT_EQ(miss.matched_count(), 0u);
  EXPECT_EQ(miss.score, 0.0);
}

TEST(EdgeCountSimilarity, HandEvaluation) {
  // (e^0.6 - 1) / (e^0.6 + e^1.2 - 2)
  const double want = (std::exp(0.6) - 1.0) / (std::exp(0.6) + std::exp(1.2) - 2.0);
  EXPECT_NEAR(edge_count_similarity(3, 2, 0.2, 0.6), want, 1e-15);
  EXPECT_NEAR(edge_count_similarity(3, 2, 0.2, 0.6), 0.2616, 1e-4);
  EXPECT_EQ(edge_count_similarity(3, 0), 1.0);
  EXPECT_EQ(edge_count_similarity(0, 0), 1.0);
  double prev = 1.0;
  for (int s = 1; s <= 60; ++s) {
    const double v = edge_count_similarity(3, s);
    EXPECT_LT(v, prev);
    EXPECT_GT(v, 0.0);
    prev = v;
  }
  EXPECT_LT(prev, 1e-14);
  EXPECT_EQ(error_kind_of([] { edge_count_similarity(3, 2, 0.0, 0.6); }), ErrorKind::BadHyperparam);
}

TEST(PathSimilarity, OnGraph) {
  auto g = allow_graph();
  const auto allow = *g.find_term("allow");
  const auto according = *g.find_term("according");
  const auto program = *g.find_term("program");
  EXPECT_EQ(path_similarity(allow, allow, g), 1.0);
  // Tree depth 2; allow-topic2-program is 2 hops, allow..according is 4.
  EXPECT_DOUBLE_EQ(path_similarity(allow, program, g), edge_count_similarity(2, 2));
  EXPECT_DOUBLE_EQ(path_similarity(allow, according, g), edge_count_similarity(2, 4));
  EXPECT_DOUBLE_EQ(path_similarity(according, allow, g), path_similarity(allow, according, g));
  const auto orphan = g.add_term("orphan");
  EXPECT_EQ(error_kind_of([&] { path_similarity(allow, orphan, g); }), ErrorKind::NoPath);
}

bool within_one_ulp(double got, double want) {
  return got == want || std::nextafter(got, want) == want;
}

TEST(FuzzyScore, Cases) {
  // Decimal 0.795 and 0.545; binary rounding of 1.59 / 2 may land one ulp off.
  EXPECT_TRUE(within_one_ulp(fuzzy_score(1.0, 0.59, 2), 0.795));
  EXPECT_TRUE(within_one_ulp(fuzzy_score(0.5, 0.59, 2), 0.545));
  EXPECT_FALSE(within_one_ulp(fuzzy_score(0.5, 0.59, 2), 0.795));
  EXPECT_EQ(fuzzy_score(1.0, 1.0, 2), 1.0);
  EXPECT_EQ(fuzzy_score(0.0, 0.0, 5), 0.0);
  EXPECT_LE(fuzzy_score(0.4, 0.5, 3), fuzzy_score(0.4, 0.5, 2));
  EXPECT_LE(fuzzy_score(0.4, 0.5, 2), fuzzy_score(0.5, 0.5, 2));
  EXPECT_EQ(error_kind_of([] { fuzzy_score(1.1, 0.5, 2); }), ErrorKind::BadMembership);
  EXPECT_EQ(error_kind_of([] { fuzzy_score(0.5, -0.1, 2); }), ErrorKind::BadMembership);
  EXPECT_EQ(error_kind_of([] { fuzzy_score(0.5, 0.5, 0); }), ErrorKind::BadMembership);
}

}  // namespace
}  // namespace ontoforge
