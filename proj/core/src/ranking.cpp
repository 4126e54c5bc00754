#include "ontoforge/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "ontoforge/error.hpp"
#include "ontoforge/graph_algorithms.hpp"

namespace ontoforge {

namespace {

bool overlaps(std::string_view label, std::string_view term) {
  if (label.empty() || term.empty()) return false;
  return label.find(term) != std::string_view::npos || term.find(label) != std::string_view::npos;
}

std::vector<NodeId> dedup(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_measure(std::string_view field, const std::string& where) {
  const std::string s(trim(field));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, where + ": '" + s + "' is not a number");
  }
  if (used != s.size() || !std::isfinite(v)) fail(ErrorKind::ParseError, where + ": '" + s + "' is not a number");
  if (v < 0.0 || v > 1.0) fail(ErrorKind::ParseError, where + ": measure " + s + " outside [0, 1]");
  return v;
}

}  // namespace

double cmm(const OntologyGraph& g, const std::vector<std::string>& query_terms) {
  if (query_terms.empty()) return 0.0;
  double total = 0.0;
  for (const auto& term : query_terms) {
    bool exact = false;
    bool partial = false;
    for (const Node& n : g.nodes()) {
      if (n.kind == NodeKind::Root) continue;
      if (n.label == term) {
        exact = true;
        break;
      }
      if (overlaps(n.label, term)) partial = true;
    }
    total += exact ? kExactMatchScore : (partial ? kPartialMatchScore : 0.0);
  }
  return std::clamp(total / (kExactMatchScore * static_cast<double>(query_terms.size())), 0.0, 1.0);
}

std::vector<NodeId> match_concepts(const OntologyGraph& g, const std::vector<std::string>& query_terms) {
  std::vector<NodeId> out;
  for (const auto& term : query_terms) {
    for (NodeId cn : g.concept_nodes())
      if (g.node(cn).label == term) out.push_back(cn);
    if (auto tn = g.find_term(term))
      for (const Edge* e : g.owners_of(*tn)) out.push_back(e->from);
  }
  return dedup(std::move(out));
}

double dem(const OntologyGraph& g, const std::vector<NodeId>& matched) {
  const auto concepts = g.concept_nodes();
  if (concepts.empty()) return 0.0;
  const double siblings = static_cast<double>(concepts.size() - 1);
  auto density = [&](NodeId cn) { return static_cast<double>(g.words_of(cn).size()) + siblings; };
  double best = 0.0;
  for (NodeId cn : concepts) best = std::max(best, density(cn));

  double sum = 0.0;
  std::size_t count = 0;
  for (NodeId n : dedup(matched)) {
    if (n >= g.nodes().size() || g.node(n).kind != NodeKind::Concept) continue;
    sum += best > 0.0 ? density(n) / best : 0.0;
    ++count;
  }
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

double ssm(const OntologyGraph& g, const std::vector<NodeId>& matched) {
  const auto nodes = dedup(matched);
  if (nodes.empty()) return 0.0;
  if (nodes.size() == 1) return 1.0;
  const auto adj = g.adjacency();
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto dist = bfs_distances(adj, nodes[i]);
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const std::size_t d = dist.at(nodes[j]);
      if (d != kUnreachable) sum += 1.0 / (1.0 + static_cast<double>(d));
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

double bem(const OntologyGraph& g, const std::vector<NodeId>& matched) {
  const std::size_t n = g.nodes().size();
  const auto nodes = dedup(matched);
  if (n < 3 || nodes.empty()) return 0.0;
  const auto centrality = betweenness_centrality(g.adjacency());
  const double scale = static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
  double sum = 0.0;
  for (NodeId v : nodes) sum += centrality.at(v) / scale;
  return sum / static_cast<double>(nodes.size());
}

MeasureVector measure_ontology(const OntologyGraph& g, const std::vector<std::string>& query_terms) {
  const auto matched = match_concepts(g, query_terms);
  return MeasureVector{cmm(g, query_terms), dem(g, matched), ssm(g, matched), bem(g, matched)};
}

RankResult rank_ontologies(const std::vector<std::pair<std::string, MeasureVector>>& measures,
                           const RankWeights& weights, bool normalize) {
  for (double w : {weights.cmm, weights.dem, weights.ssm, weights.bem})
    if (!(w >= 0.0) || !std::isfinite(w)) fail(ErrorKind::BadWeights, "weights must be finite and non-negative");

  MeasureVector maxima{};
  for (const auto& [name, m] : measures) {
    maxima.cmm = std::max(maxima.cmm, m.cmm);
    maxima.dem = std::max(maxima.dem, m.dem);
    maxima.ssm = std::max(maxima.ssm, m.ssm);
    maxima.bem = std::max(maxima.bem, m.bem);
  }
  auto scaled = [&](double v, double max) {
    if (!normalize) return v;
    return max > 0.0 ? v / max : 0.0;
  };

  RankResult result;
  for (const auto& [name, m] : measures) {
    const double score = weights.cmm * scaled(m.cmm, maxima.cmm) + weights.dem * scaled(m.dem, maxima.dem) +
                         weights.ssm * scaled(m.ssm, maxima.ssm) + weights.bem * scaled(m.bem, maxima.bem);
    result.entries.push_back({name, m, score, 0});
  }
  std::vector<std::size_t> order(result.entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = result.entries[a];
    const auto& eb = result.entries[b];
    if (ea.score != eb.score) return ea.score > eb.score;
    return ea.name < eb.name;
  });
  for (std::size_t r = 0; r < order.size(); ++r) result.entries[order[r]].rank = r + 1;
  return result;
}

std::vector<std::pair<std::string, MeasureVector>> parse_measures_csv(std::string_view text) {
  std::vector<std::pair<std::string, MeasureVector>> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const auto line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;

    // Names may contain commas; the four measures are the last four fields.
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (rows.empty() && trim(fields[0]) == "name") continue;
    const std::string where = "measures line " + std::to_string(line_no);
    if (fields.size() < 5) fail(ErrorKind::ParseError, where + ": expected name,cmm,dem,ssm,bem");
    const std::size_t n = fields.size();
    std::string name;
    for (std::size_t i = 0; i + 4 < n; ++i) {
      if (i > 0) name += ',';
      name += std::string(fields[i]);
    }
    name = std::string(trim(name));
    if (name.empty()) fail(ErrorKind::ParseError, where + ": empty ontology name");
    rows.emplace_back(std::move(name), MeasureVector{parse_measure(fields[n - 4], where), parse_measure(fields[n - 3], where),
                                                     parse_measure(fields[n - 2], where), parse_measure(fields[n - 1], where)});
  }
  if (rows.empty()) fail(ErrorKind::ParseError, "measures file has no rows");
  return rows;
}

std::vector<std::pair<std::string, MeasureVector>> load_measures_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_measures_csv(buffer.str());
}

}  // namespace ontoforge
