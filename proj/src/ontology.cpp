#include "symex/ontology.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>

#include "symex/common.hpp"

namespace symex {

SymptomOntology SymptomOntology::from_nodes(std::vector<SymptomNode> nodes) {
  SymptomOntology o;
  for (auto& n : nodes) {
    if (n.id.empty()) throw ValidationError("ontology: node with empty id");
    if (n.description.empty()) {
      throw ValidationError("ontology: node '" + n.id + "' has an empty description");
    }
    if (n.parent_id && *n.parent_id == n.id) {
      throw ValidationError("ontology: node '" + n.id + "' lists itself as parent (cycle)");
    }
    if (!o.nodes_.emplace(n.id, n).second) {
      throw ValidationError("ontology: duplicate node id '" + n.id + "'");
    }
  }
  if (o.nodes_.empty()) throw ValidationError("ontology: no nodes");

  for (const auto& [id, n] : o.nodes_) {
    if (!n.parent_id) {
      if (!o.root_id_.empty()) {
        throw ValidationError("ontology: multiple roots ('" + o.root_id_ + "' and '" + id + "')");
      }
      o.root_id_ = id;
    } else {
      if (!o.nodes_.count(*n.parent_id)) {
        throw ValidationError("ontology: node '" + id + "' has dangling parent '" +
                              *n.parent_id + "'");
      }
      o.children_[*n.parent_id].push_back(id);
    }
  }
  if (o.root_id_.empty()) throw ValidationError("ontology: no root node (cycle among all nodes)");

  // every parent chain must terminate at the root
  for (const auto& [id, n] : o.nodes_) {
    std::set<std::string> seen{id};
    const SymptomNode* cur = &n;
    while (cur->parent_id) {
      const std::string& p = *cur->parent_id;
      if (!seen.insert(p).second) {
        throw ValidationError("ontology: cycle through node '" + id + "'");
      }
      cur = &o.nodes_.at(p);
    }
    if (cur->id != o.root_id_) {
      throw ValidationError("ontology: node '" + id + "' does not reach the root");
    }
  }
  return o;
}

const SymptomNode& SymptomOntology::node(const std::string& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw ValidationError("ontology: unknown symptom id '" + id + "'");
  return it->second;
}

std::vector<std::string> SymptomOntology::ids() const {
  std::vector<std::string> out;
  out.reserve(nodes_.size());
  for (const auto& [id, _] : nodes_) out.push_back(id);
  return out;
}

std::vector<std::string> SymptomOntology::leaf_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : nodes_) {
    if (!children_.count(id)) out.push_back(id);
  }
  return out;
}

std::size_t SymptomOntology::depth(const std::string& id) const {
  std::size_t d = 0;
  const SymptomNode* cur = &node(id);
  while (cur->parent_id) {
    cur = &nodes_.at(*cur->parent_id);
    ++d;
  }
  return d;
}

std::vector<std::string> SymptomOntology::ancestors(const std::string& id) const {
  std::vector<std::string> out;
  const SymptomNode* cur = &node(id);
  while (cur->parent_id) {
    out.push_back(*cur->parent_id);
    cur = &nodes_.at(*cur->parent_id);
  }
  return out;
}

std::set<std::string> SymptomOntology::label_closure(const std::set<std::string>& symptom_ids) const {
  std::set<std::string> out;
  for (const auto& id : symptom_ids) {
    out.insert(node(id).id);
    for (const auto& a : ancestors(id)) out.insert(a);
  }
  return out;
}

std::size_t SymptomOntology::hierarchy_distance(const std::string& a, const std::string& b) const {
  std::size_t da = depth(a), db = depth(b);
  const SymptomNode* na = &node(a);
  const SymptomNode* nb = &node(b);
  std::size_t dist = 0;
  while (da > db) {
    na = &nodes_.at(*na->parent_id);
    --da;
    ++dist;
  }
  while (db > da) {
    nb = &nodes_.at(*nb->parent_id);
    --db;
    ++dist;
  }
  while (na->id != nb->id) {
    na = &nodes_.at(*na->parent_id);
    nb = &nodes_.at(*nb->parent_id);
    dist += 2;
  }
  return dist;
}

std::string SymptomOntology::content_hash() const {
  std::string blob;
  for (const auto& [id, n] : nodes_) {
    blob += id;
    blob += '\x1f';
    blob += n.name;
    blob += '\x1f';
    blob += n.description;
    blob += '\x1f';
    blob += n.parent_id.value_or("");
    blob += '\n';
  }
  return "fnv1a64:" + fnv1a64_hex(blob);
}

SymptomOntology parse_ontology(const std::string& yaml_text) {
  YAML::Node doc;
  try {
    doc = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ValidationError(std::string("ontology: YAML parse error: ") + e.what());
  }
  const YAML::Node nodes = doc["nodes"];
  if (!nodes || !nodes.IsSequence()) {
    throw ValidationError("ontology: document must contain a 'nodes' sequence");
  }
  std::vector<SymptomNode> parsed;
  for (const auto& entry : nodes) {
    SymptomNode n;
    if (!entry["id"]) throw ValidationError("ontology: node without id");
    n.id = entry["id"].as<std::string>();
    n.name = entry["name"] ? entry["name"].as<std::string>() : n.id;
    n.description = entry["description"] ? entry["description"].as<std::string>() : "";
    if (entry["parent"]) n.parent_id = entry["parent"].as<std::string>();
    parsed.push_back(std::move(n));
  }
  return SymptomOntology::from_nodes(std::move(parsed));
}

SymptomOntology load_ontology(const std::string& path) {
  return parse_ontology(read_text_file(path));
}

}  // namespace symex
