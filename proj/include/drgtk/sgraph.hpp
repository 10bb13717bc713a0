#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "drgtk/drg.hpp"

namespace drgtk {

using SourceName = std::string;

class AmError : public DrgError {
 public:
  using DrgError::DrgError;
};

class MissingSourceError : public AmError {
 public:
  explicit MissingSourceError(const SourceName& s) : AmError("no node carries source " + s) {}
};

class SourceClashError : public AmError {
 public:
  using AmError::AmError;
};

// Source names the decomposition search draws from.
const std::vector<SourceName>& source_inventory();

// A graph with a distinguished root and named source nodes. Nodes may be
// unlabeled placeholders that only gain a label when another graph's node is
// merged onto them.
struct SNode {
  NodeId id;
  bool labeled = false;
  DrgNode label;  // meaningful when labeled

  static SNode placeholder(NodeId id) { return {id, false, {}}; }
  static SNode from(DrgNode n) {
    NodeId id = n.id;
    return {id, true, std::move(n)};
  }
};

struct SGraph {
  std::map<NodeId, SNode> nodes;
  std::vector<DrgEdge> edges;
  NodeId root;
  std::map<SourceName, NodeId> sources;  // at most one node per name

  bool has_node(const NodeId& id) const { return nodes.count(id) != 0; }
  void add(SNode n) { nodes[n.id] = std::move(n); }
  void add(DrgEdge e) { edges.push_back(std::move(e)); }

  // Source names carried by one node; a node may hold several.
  std::set<SourceName> names_of(const NodeId& id) const;

  static SGraph from_drg(const Drg& g);

  // Throws AmError when a placeholder or a non-root source remains.
  Drg to_drg() const;
};

// Plugs arg's root into head's src node; src is consumed; nodes sharing any
// other source name are merged. Result keeps head's root.
SGraph apply(const SGraph& head, const SGraph& arg, const SourceName& src);

// Unifies mod's src node with head's root; src is consumed; shared source
// names merged. Result keeps head's root.
SGraph modify(const SGraph& head, const SGraph& mod, const SourceName& src);

}  // namespace drgtk
