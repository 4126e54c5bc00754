#include "ontoforge/ontology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>

#include "ontoforge/error.hpp"

namespace ontoforge {

namespace {

using ojson = nlohmann::ordered_json;

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Root: return "root";
    case NodeKind::Concept: return "concept";
    case NodeKind::Term: return "term";
  }
  return "term";
}

std::string_view edge_kind_name(EdgeKind kind) {
  return kind == EdgeKind::HasTopic ? "hasTopic" : "hasWord";
}

std::string turtle_literal(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_file(const std::filesystem::path& out, const std::string& content) {
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) fail(ErrorKind::IoError, "cannot open " + out.string() + " for writing");
  file << content;
  file.flush();
  if (!file) fail(ErrorKind::IoError, "failed writing " + out.string());
}

[[noreturn]] void parse_fail(std::string_view text, std::size_t byte, const std::string& what) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  fail(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

template <typename T>
T field(const ojson& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key))
    fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::ParseError, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string_view to_string(Backend backend) noexcept { return backend == Backend::Lsi ? "lsi" : "lda"; }

std::optional<Backend> parse_backend(std::string_view name) noexcept {
  if (name == "lsi") return Backend::Lsi;
  if (name == "lda") return Backend::Lda;
  return std::nullopt;
}

OntologyGraph::OntologyGraph(Backend backend) : backend_(backend) {
  nodes_.push_back(Node{NodeKind::Root, "root", 0});
}

NodeId OntologyGraph::add_concept(std::size_t concept_id, std::string label) {
  if (find_concept(concept_id)) fail(ErrorKind::InvalidGraph, "duplicate concept id " + std::to_string(concept_id));
  const NodeId id = nodes_.size();
  nodes_.push_back(Node{NodeKind::Concept, std::move(label), concept_id});
  edges_.push_back(Edge{root(), id, EdgeKind::HasTopic, 1.0});
  return id;
}

NodeId OntologyGraph::add_term(std::string_view label) {
  if (auto it = term_index_.find(std::string(label)); it != term_index_.end()) return it->second;
  const NodeId id = nodes_.size();
  nodes_.push_back(Node{NodeKind::Term, std::string(label), 0});
  term_index_.emplace(std::string(label), id);
  return id;
}

void OntologyGraph::add_word(NodeId concept_node, NodeId term_node, double weight) {
  if (concept_node >= nodes_.size() || nodes_[concept_node].kind != NodeKind::Concept)
    fail(ErrorKind::InvalidGraph, "hasWord edge must start at a concept node");
  if (term_node >= nodes_.size() || nodes_[term_node].kind != NodeKind::Term)
    fail(ErrorKind::InvalidGraph, "hasWord edge must end at a term node");
  if (!std::isfinite(weight)) fail(ErrorKind::InvalidGraph, "edge weight must be finite");
  edges_.push_back(Edge{concept_node, term_node, EdgeKind::HasWord, weight});
}

std::optional<NodeId> OntologyGraph::find_term(std::string_view label) const {
  auto it = term_index_.find(std::string(label));
  if (it == term_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> OntologyGraph::find_concept(std::size_t concept_id) const {
  for (NodeId i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].kind == NodeKind::Concept && nodes_[i].concept_id == concept_id) return i;
  return std::nullopt;
}

std::vector<NodeId> OntologyGraph::concept_nodes() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].kind == NodeKind::Concept) out.push_back(i);
  return out;
}

std::vector<NodeId> OntologyGraph::term_nodes() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].kind == NodeKind::Term) out.push_back(i);
  return out;
}

std::vector<const Edge*> OntologyGraph::words_of(NodeId concept_node) const {
  std::vector<const Edge*> out;
  for (const auto& e : edges_)
    if (e.kind == EdgeKind::HasWord && e.from == concept_node) out.push_back(&e);
  return out;
}

std::vector<const Edge*> OntologyGraph::owners_of(NodeId term_node) const {
  std::vector<const Edge*> out;
  for (const auto& e : edges_)
    if (e.kind == EdgeKind::HasWord && e.to == term_node) out.push_back(&e);
  return out;
}

std::vector<std::vector<NodeId>> OntologyGraph::adjacency() const {
  std::vector<std::vector<NodeId>> adj(nodes_.size());
  for (const auto& e : edges_) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  return adj;
}

void OntologyGraph::validate() const {
  if (nodes_.empty() || nodes_[0].kind != NodeKind::Root) fail(ErrorKind::InvalidGraph, "node 0 must be the root");
  for (NodeId i = 1; i < nodes_.size(); ++i)
    if (nodes_[i].kind == NodeKind::Root) fail(ErrorKind::InvalidGraph, "more than one root node");
  for (const auto& e : edges_) {
    if (e.from >= nodes_.size() || e.to >= nodes_.size()) fail(ErrorKind::InvalidGraph, "edge endpoint out of range");
    const NodeKind from = nodes_[e.from].kind;
    const NodeKind to = nodes_[e.to].kind;
    const bool ok = (e.kind == EdgeKind::HasTopic && from == NodeKind::Root && to == NodeKind::Concept) ||
                    (e.kind == EdgeKind::HasWord && from == NodeKind::Concept && to == NodeKind::Term);
    if (!ok) {
      fail(ErrorKind::InvalidGraph, std::string("illegal ") + std::string(edge_kind_name(e.kind)) + " edge " +
                                        nodes_[e.from].label + " -> " + nodes_[e.to].label);
    }
    if (!std::isfinite(e.weight)) fail(ErrorKind::InvalidGraph, "non-finite edge weight");
  }
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<std::vector<NodeId>> out(nodes_.size());
  for (const auto& e : edges_) out[e.from].push_back(e.to);
  std::deque<NodeId> queue{root()};
  seen[root()] = true;
  while (!queue.empty()) {
    const NodeId n = queue.front();
    queue.pop_front();
    for (NodeId m : out[n])
      if (!seen[m]) {
        seen[m] = true;
        queue.push_back(m);
      }
  }
  for (NodeId i = 0; i < nodes_.size(); ++i)
    if (!seen[i]) fail(ErrorKind::InvalidGraph, "node '" + nodes_[i].label + "' is not reachable from the root");
}

bool same_content(const OntologyGraph& a, const OntologyGraph& b) {
  OntologyGraph x = a;
  OntologyGraph y = b;
  x.provenance().created_at.clear();
  y.provenance().created_at.clear();
  return x == y;
}

OntologyGraph build_from_concepts(const std::vector<Concept>& concepts) {
  if (std::all_of(concepts.begin(), concepts.end(), [](const Concept& c) { return c.members.empty(); }))
    fail(ErrorKind::EmptyOntology, "no concept has any member term");
  OntologyGraph g(Backend::Lsi);
  for (const auto& c : concepts) {
    const NodeId cn = g.add_concept(c.id, c.name);
    for (const auto& m : c.members) g.add_word(cn, g.add_term(m.term), std::abs(m.loading));
  }
  g.validate();
  return g;
}

std::string topic_label(std::size_t topic) { return "topic-" + std::to_string(topic); }

OntologyGraph build_from_lda(const LdaModel& model, const Vocabulary& vocabulary, std::size_t n_words,
                             double min_prob) {
  if (model.iterations_run == 0) fail(ErrorKind::ModelUntrained, "LDA model has not been trained");
  if (n_words < 1) fail(ErrorKind::BadHyperparam, "words per topic must be at least 1");
  OntologyGraph g(Backend::Lda);
  bool any = false;
  for (std::size_t k = 0; k < model.topics; ++k) {
    const NodeId cn = g.add_concept(k, topic_label(k));
    for (const auto& [term, p] : top_words(model, vocabulary, k, n_words)) {
      if (p < min_prob) continue;
      g.add_word(cn, g.add_term(term), p);
      any = true;
    }
  }
  if (!any) fail(ErrorKind::EmptyOntology, "no topic word reaches the minimum probability");
  g.validate();
  return g;
}

std::string sanitize_term(std::string_view term) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(term.size());
  for (char ch : term) {
    const auto c = static_cast<unsigned char>(ch);
    if (c >= 'a' && c <= 'z') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('_');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::string to_turtle(const OntologyGraph& g) {
  std::string out = "@prefix of: <http://ontoforge.local/schema#> .\n";
  auto concepts = g.concept_nodes();
  std::sort(concepts.begin(), concepts.end(),
            [&](NodeId a, NodeId b) { return g.node(a).concept_id < g.node(b).concept_id; });
  std::vector<bool> labelled(g.nodes().size(), false);
  for (NodeId cn : concepts) {
    const std::string subject = "of:c" + std::to_string(g.node(cn).concept_id);
    out += '\n';
    out += subject + " a of:Topic .\n";
    out += subject + " of:label " + turtle_literal(g.node(cn).label) + " .\n";
    out += "of:root of:hasTopic " + subject + " .\n";
    auto words = g.words_of(cn);
    std::stable_sort(words.begin(), words.end(), [&](const Edge* a, const Edge* b) {
      if (a->weight != b->weight) return a->weight > b->weight;
      return g.node(a->to).label < g.node(b->to).label;
    });
    for (const Edge* e : words) {
      const std::string term_id = "t_" + sanitize_term(g.node(e->to).label);
      out += subject + " of:hasWord of:" + term_id + " .\n";
      if (!labelled[e->to]) {
        out += "of:" + term_id + " of:label " + turtle_literal(g.node(e->to).label) + " .\n";
        labelled[e->to] = true;
      }
      out += subject + "_" + term_id + " of:weight \"" + fixed6(e->weight) + "\" .\n";
    }
  }
  return out;
}

void export_turtle(const OntologyGraph& g, const std::filesystem::path& out) { write_file(out, to_turtle(g)); }

std::string to_json(const OntologyGraph& g) {
  ojson doc;
  doc["version"] = kModelFileVersion;
  doc["backend"] = std::string(to_string(g.backend()));
  const Provenance& p = g.provenance();
  doc["provenance"] = ojson{{"corpus_digest", p.corpus_digest},
                            {"documents", p.documents},
                            {"vocabulary", p.vocabulary},
                            {"hyperparameters", p.hyperparameters},
                            {"created_at", p.created_at}};
  ojson nodes = ojson::array();
  for (NodeId i = 0; i < g.nodes().size(); ++i) {
    const Node& n = g.node(i);
    ojson node{{"id", i}, {"kind", std::string(to_string(n.kind))}, {"label", n.label}};
    if (n.kind == NodeKind::Concept) node["concept_id"] = n.concept_id;
    nodes.push_back(std::move(node));
  }
  ojson edges = ojson::array();
  for (const auto& e : g.edges())
    edges.push_back(ojson{{"from", e.from}, {"to", e.to}, {"kind", std::string(edge_kind_name(e.kind))}, {"weight", e.weight}});
  doc["nodes"] = std::move(nodes);
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

OntologyGraph from_json(std::string_view text) {
  ojson doc;
  try {
    doc = ojson::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(text, e.byte > 0 ? e.byte - 1 : 0, e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::ParseError, "model file must be a JSON object");
  const int version = field<int>(doc, "version");
  if (version != kModelFileVersion)
    fail(ErrorKind::VersionError, "model file version " + std::to_string(version) + ", expected " +
                                      std::to_string(kModelFileVersion));
  const auto backend = parse_backend(field<std::string>(doc, "backend"));
  if (!backend) fail(ErrorKind::ParseError, "unknown backend");

  OntologyGraph g(*backend);
  const ojson prov = field<ojson>(doc, "provenance");
  g.provenance_.corpus_digest = field<std::string>(prov, "corpus_digest");
  g.provenance_.documents = field<std::size_t>(prov, "documents");
  g.provenance_.vocabulary = field<std::size_t>(prov, "vocabulary");
  g.provenance_.hyperparameters = field<ojson>(prov, "hyperparameters");
  g.provenance_.created_at = field<std::string>(prov, "created_at");

  const ojson nodes = field<ojson>(doc, "nodes");
  if (!nodes.is_array() || nodes.empty()) fail(ErrorKind::ParseError, "'nodes' must be a non-empty array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ojson& n = nodes[i];
    if (field<std::size_t>(n, "id") != i) fail(ErrorKind::ParseError, "node ids must be dense and ordered");
    const auto kind = field<std::string>(n, "kind");
    auto label = field<std::string>(n, "label");
    if (kind == "root") {
      if (i != 0) fail(ErrorKind::InvalidGraph, "more than one root node");
      g.nodes_[0].label = std::move(label);
    } else if (i == 0) {
      fail(ErrorKind::InvalidGraph, "node 0 must be the root");
    } else if (kind == "concept") {
      const auto cid = field<std::size_t>(n, "concept_id");
      if (g.find_concept(cid)) fail(ErrorKind::InvalidGraph, "duplicate concept id " + std::to_string(cid));
      g.nodes_.push_back(Node{NodeKind::Concept, std::move(label), cid});
    } else if (kind == "term") {
      if (g.find_term(label)) fail(ErrorKind::InvalidGraph, "duplicate term '" + label + "'");
      g.term_index_.emplace(label, g.nodes_.size());
      g.nodes_.push_back(Node{NodeKind::Term, std::move(label), 0});
    } else {
      fail(ErrorKind::ParseError, "unknown node kind '" + kind + "'");
    }
  }

  const ojson edges = field<ojson>(doc, "edges");
  if (!edges.is_array()) fail(ErrorKind::ParseError, "'edges' must be an array");
  for (const ojson& e : edges) {
    const auto kind = field<std::string>(e, "kind");
    EdgeKind ek;
    if (kind == "hasTopic") {
      ek = EdgeKind::HasTopic;
    } else if (kind == "hasWord") {
      ek = EdgeKind::HasWord;
    } else {
      fail(ErrorKind::ParseError, "unknown edge kind '" + kind + "'");
    }
    g.edges_.push_back(Edge{field<std::size_t>(e, "from"), field<std::size_t>(e, "to"), ek, field<double>(e, "weight")});
  }
  g.validate();
  return g;
}

void save_json(const OntologyGraph& g, const std::filesystem::path& out) { write_file(out, to_json(g)); }

OntologyGraph load_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

}  // namespace ontoforge
