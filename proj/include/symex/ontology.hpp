#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace symex {

struct SymptomNode {
  std::string id;
  std::string name;
  std::string description;               // layman query text
  std::optional<std::string> parent_id;  // absent only for the root
};

// Rooted tree of symptoms. A node semantically implies all of its ancestors,
// so labeling, sampling and evaluation work on ancestor closures.
// Immutable after load; unrestricted concurrent reads are safe.
class SymptomOntology {
 public:
  static SymptomOntology from_nodes(std::vector<SymptomNode> nodes);

  const SymptomNode& node(const std::string& id) const;
  bool contains(const std::string& id) const { return nodes_.count(id) != 0; }
  const std::string& root_id() const { return root_id_; }
  std::size_t size() const { return nodes_.size(); }
  std::vector<std::string> ids() const;       // sorted
  std::vector<std::string> leaf_ids() const;  // sorted, nodes without children

  std::size_t depth(const std::string& id) const;  // root is 0
  // Nearest parent first, root last. Excludes id itself; length == depth(id).
  std::vector<std::string> ancestors(const std::string& id) const;
  // Input ids plus all of their ancestors.
  std::set<std::string> label_closure(const std::set<std::string>& symptom_ids) const;
  // Edges on the unique tree path between a and b.
  std::size_t hierarchy_distance(const std::string& a, const std::string& b) const;

  // Stable content hash; independent of file formatting and node order.
  std::string content_hash() const;

 private:
  std::map<std::string, SymptomNode> nodes_;
  std::map<std::string, std::vector<std::string>> children_;
  std::string root_id_;
};

SymptomOntology parse_ontology(const std::string& yaml_text);
SymptomOntology load_ontology(const std::string& path);

}  // namespace symex
