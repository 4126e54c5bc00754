#include "ontoforge/retrieval.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ontoforge/error.hpp"
#include "ontoforge/graph_algorithms.hpp"

namespace ontoforge {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lowercase_token(std::string_view s) {
  auto tokens = tokenize(s);
  if (tokens.size() == 1) return tokens.front();
  // Multi-token or short entries are kept verbatim (ASCII-lowered) so that
  // the lexicon round-trips; they simply never match a single query token.
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

}  // namespace

double synonym_membership(int rank) { return 0.5 + 0.01 * rank; }

void SynonymLexicon::add(std::string term, std::string synonym, int rank) {
  if (rank < 1 || rank > kMaxSynonymRank)
    fail(ErrorKind::ParseError, "synonym rank " + std::to_string(rank) + " for '" + term + "' outside 1..9");
  auto& ranks = entries_[term];
  if (!ranks.emplace(rank, std::move(synonym)).second)
    fail(ErrorKind::ParseError, "duplicate rank " + std::to_string(rank) + " for '" + term + "'");
}

void SynonymLexicon::check_contiguous() const {
  for (const auto& [term, ranks] : entries_) {
    int expected = 1;
    for (const auto& [rank, syn] : ranks) {
      if (rank != expected) fail(ErrorKind::ParseError, "synonym ranks for '" + term + "' are not contiguous from 1");
      ++expected;
    }
  }
}

SynonymLexicon SynonymLexicon::parse(std::string_view text) {
  SynonymLexicon lex;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const auto line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const auto tab = line.find('\t', pos);
      fields.push_back(trim(line.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos)));
      if (tab == std::string_view::npos) break;
      pos = tab + 1;
    }
    const std::string where = "lexicon line " + std::to_string(line_no);
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty())
      fail(ErrorKind::ParseError, where + ": expected term<TAB>synonym<TAB>rank");
    int rank = 0;
    std::size_t used = 0;
    try {
      rank = std::stoi(std::string(fields[2]), &used);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, where + ": rank is not an integer");
    }
    if (used != fields[2].size()) fail(ErrorKind::ParseError, where + ": rank is not an integer");
    try {
      lex.add(lowercase_token(fields[0]), lowercase_token(fields[1]), rank);
    } catch (const Error& e) {
      fail(ErrorKind::ParseError, where + ": " + e.what());
    }
  }
  lex.check_contiguous();
  return lex;
}

SynonymLexicon SynonymLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::vector<Synonym> SynonymLexicon::synonyms(std::string_view term) const {
  std::vector<Synonym> out;
  auto it = entries_.find(term);
  if (it == entries_.end()) return out;
  for (const auto& [rank, syn] : it->second) out.push_back({syn, rank});
  return out;
}

std::vector<Expansion> expand_synonyms(std::string_view term, const SynonymLexicon& lexicon) {
  std::vector<Expansion> out{{std::string(term), 1.0}};
  for (const auto& s : lexicon.synonyms(term)) out.push_back({s.term, synonym_membership(s.rank)});
  return out;
}

std::size_t QueryResult::matched_count() const {
  std::size_t n = 0;
  for (const auto& t : terms)
    if (t.matched) ++n;
  return n;
}

QueryResult detect_topics(std::string_view query, const OntologyGraph& g, const SynonymLexicon& lexicon,
                          const StopWords& stopwords) {
  const auto tokens = prune(tokenize(query), stopwords);
  if (tokens.empty()) fail(ErrorKind::QueryEmpty, "query has no terms after stop-word pruning");

  QueryResult result;
  std::set<std::string> seen;
  double membership_sum = 0.0;
  for (const auto& token : tokens) {
    if (!seen.insert(token).second) continue;
    TermMatch match;
    match.query_term = token;
    for (const auto& candidate : expand_synonyms(token, lexicon)) {
      if (auto node = g.find_term(candidate.candidate)) {
        match.matched = candidate.candidate;
        match.term_node = *node;
        match.membership = candidate.membership;
        for (const Edge* e : g.owners_of(*node)) {
          const Node& c = g.node(e->from);
          match.topics.push_back({e->from, c.concept_id, c.label, e->weight});
        }
        break;
      }
    }
    if (match.matched) {
      membership_sum += match.membership;
    } else {
      result.misses.push_back(token);
    }
    result.terms.push_back(std::move(match));
  }
  const std::size_t matched = result.matched_count();
  const double doc_membership = static_cast<double>(matched) / static_cast<double>(result.terms.size());
  const double word_membership = matched > 0 ? membership_sum / static_cast<double>(matched) : 0.0;
  result.score = fuzzy_score(doc_membership, word_membership, 2);
  return result;
}

double edge_count_similarity(double depth, double path_length, double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) fail(ErrorKind::BadHyperparam, "similarity factors must be positive");
  if (path_length == 0.0) return 1.0;
  const double num = std::expm1(x * depth);
  return num / (num + std::expm1(y * path_length));
}

double path_similarity(NodeId t1, NodeId t2, const OntologyGraph& g, double x, double y) {
  if (t1 >= g.nodes().size() || t2 >= g.nodes().size()) fail(ErrorKind::ShapeError, "node id outside graph");
  if (t1 == t2) {
    if (!(x > 0.0) || !(y > 0.0)) fail(ErrorKind::BadHyperparam, "similarity factors must be positive");
    return 1.0;
  }
  const auto adj = g.adjacency();
  const std::size_t s = bfs_distances(adj, t1)[t2];
  if (s == kUnreachable)
    fail(ErrorKind::NoPath, "no path between '" + g.node(t1).label + "' and '" + g.node(t2).label + "'");
  const std::size_t d = eccentricity(adj, g.root());
  return edge_count_similarity(static_cast<double>(d), static_cast<double>(s), x, y);
}

double fuzzy_score(double doc_membership, double synonym_membership, int n) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(doc_membership) || !in_unit(synonym_membership))
    fail(ErrorKind::BadMembership, "memberships must lie in [0, 1]");
  if (n < 1) fail(ErrorKind::BadMembership, "document count must be at least 1");
  return (doc_membership + synonym_membership) / n;
}

}  // namespace ontoforge
