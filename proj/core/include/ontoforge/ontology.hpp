#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontoforge/lda.hpp"
#include "ontoforge/lsi_concepts.hpp"

namespace ontoforge {

using NodeId = std::size_t;

enum class NodeKind { Root, Concept, Term };
enum class EdgeKind { HasTopic, HasWord };
enum class Backend { Lsi, Lda };

std::string_view to_string(Backend backend) noexcept;
std::optional<Backend> parse_backend(std::string_view name) noexcept;

struct Node {
  NodeKind kind = NodeKind::Term;
  std::string label;
  std::size_t concept_id = 0;  // meaningful for Concept nodes only

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  EdgeKind kind = EdgeKind::HasWord;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Provenance {
  std::string corpus_digest;
  std::size_t documents = 0;
  std::size_t vocabulary = 0;
  nlohmann::ordered_json hyperparameters = nlohmann::ordered_json::object();
  std::string created_at;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Terminology ontology: a Root, a layer of Concept (topic) nodes hanging off
// the root via hasTopic, and a layer of Term nodes attached to concepts via
// weighted hasWord edges. Terms are shared between concepts; there are no
// concept-concept or term-term edges.
class OntologyGraph {
 public:
  explicit OntologyGraph(Backend backend = Backend::Lsi);

  NodeId root() const noexcept { return 0; }

  // Adds a concept node and its hasTopic edge from the root.
  NodeId add_concept(std::size_t concept_id, std::string label);
  // Returns the existing node when the label is already present.
  NodeId add_term(std::string_view label);
  void add_word(NodeId concept_node, NodeId term_node, double weight);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }

  std::optional<NodeId> find_term(std::string_view label) const;
  std::optional<NodeId> find_concept(std::size_t concept_id) const;
  std::vector<NodeId> concept_nodes() const;
  std::vector<NodeId> term_nodes() const;

  // hasWord edges leaving `concept_node`, in insertion order.
  std::vector<const Edge*> words_of(NodeId concept_node) const;
  // hasWord edges entering `term_node`, in insertion order.
  std::vector<const Edge*> owners_of(NodeId term_node) const;

  // Undirected adjacency lists indexed by NodeId.
  std::vector<std::vector<NodeId>> adjacency() const;

  // Throws InvalidGraph unless the graph is bipartite between the concept and
  // term layers, every node is reachable from the root and every weight is
  // finite.
  void validate() const;

  Backend backend() const noexcept { return backend_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  Provenance& provenance() noexcept { return provenance_; }

  friend bool operator==(const OntologyGraph&, const OntologyGraph&) = default;

 private:
  friend OntologyGraph from_json(std::string_view text);

  Backend backend_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, NodeId> term_index_;
  Provenance provenance_;
};

// Equality ignoring the provenance timestamp.
bool same_content(const OntologyGraph& a, const OntologyGraph& b);

inline constexpr std::size_t kDefaultWordsPerTopic = 20;
inline constexpr double kDefaultMinProbability = 0.001;

OntologyGraph build_from_concepts(const std::vector<Concept>& concepts);
OntologyGraph build_from_lda(const LdaModel& model, const Vocabulary& vocabulary,
                             std::size_t n_words = kDefaultWordsPerTopic,
                             double min_prob = kDefaultMinProbability);

std::string topic_label(std::size_t topic);

// Turtle identifier fragment for a term: [a-z] kept, every other byte
// written as "_" plus two hex digits.
std::string sanitize_term(std::string_view term);

std::string to_turtle(const OntologyGraph& g);
void export_turtle(const OntologyGraph& g, const std::filesystem::path& out);

inline constexpr int kModelFileVersion = 1;

std::string to_json(const OntologyGraph& g);
OntologyGraph from_json(std::string_view text);
void save_json(const OntologyGraph& g, const std::filesystem::path& out);
OntologyGraph load_json(const std::filesystem::path& path);

}  // namespace ontoforge
