#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "drgtk/ids.hpp"

namespace drgtk {

class DrgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownNodeError : public DrgError {
 public:
  explicit UnknownNodeError(const NodeId& id) : DrgError("unknown node: " + id.str()) {}
};

enum class NodeKind { Box, Synset, Constant };

// Word-sense parts of a synset node, e.g. misbehave.v.01.
struct Synset {
  std::string lemma;
  char pos = 'n';  // one of n v a r p
  std::string sense = "01";

  std::string str() const { return lemma + "." + std::string(1, pos) + "." + sense; }
  friend bool operator==(const Synset&, const Synset&) = default;
};

struct DrgNode {
  NodeId id;
  NodeKind kind = NodeKind::Box;
  Synset synset;      // kind == Synset
  std::string value;  // kind == Constant

  static DrgNode box(NodeId id) { return {id, NodeKind::Box, {}, {}}; }
  static DrgNode make_synset(NodeId id, Synset s) { return {id, NodeKind::Synset, std::move(s), {}}; }
  static DrgNode constant(NodeId id, std::string v) {
    return {id, NodeKind::Constant, {}, std::move(v)};
  }
};

enum class EdgeKind { Role, Scope, Ana };

struct DrgEdge {
  NodeId source;
  NodeId target;
  EdgeKind kind = EdgeKind::Role;
  std::string role;  // kind == Role only

  // Label as it appears in Penman notation.
  std::string label() const {
    switch (kind) {
      case EdgeKind::Scope: return "member";
      case EdgeKind::Ana: return "ANA";
      default: return role;
    }
  }
  friend bool operator==(const DrgEdge&, const DrgEdge&) = default;
  friend auto operator<=>(const DrgEdge&, const DrgEdge&) = default;

  static DrgEdge scope(NodeId s, NodeId t) { return {s, t, EdgeKind::Scope, {}}; }
  static DrgEdge ana(NodeId s, NodeId t) { return {s, t, EdgeKind::Ana, {}}; }
  static DrgEdge make_role(NodeId s, NodeId t, std::string name) {
    return {s, t, EdgeKind::Role, std::move(name)};
  }
};

// A Discourse Representation Graph: boxes, synsets and constants with role,
// scope (member) and ANA edges. Values are immutable by convention once built;
// every transformation in this library returns a new graph.
struct Drg {
  std::map<NodeId, DrgNode> nodes;
  std::vector<DrgEdge> edges;
  NodeId root;  // the top box

  bool has_node(const NodeId& id) const { return nodes.count(id) != 0; }
  const DrgNode& node(const NodeId& id) const {
    auto it = nodes.find(id);
    if (it == nodes.end()) throw UnknownNodeError(id);
    return it->second;
  }
  bool is_box(const NodeId& id) const { return has_node(id) && node(id).kind == NodeKind::Box; }

  void add(DrgNode n) { nodes[n.id] = std::move(n); }
  void add(DrgEdge e) { edges.push_back(std::move(e)); }

  std::vector<DrgEdge> in_edges(const NodeId& id) const;
  std::vector<DrgEdge> out_edges(const NodeId& id) const;

  // Boxes with a scope edge into n.
  std::set<NodeId> scope_parents(const NodeId& n) const;
  // Sources of incoming role edges (ANA does not count).
  std::vector<NodeId> role_parents(const NodeId& n) const;
  // Parent box in the scope tree, if any.
  std::optional<NodeId> box_parent(const NodeId& box) const;
};

// ---------------------------------------------------------------------------
// Validation

enum class Severity { Error, Warning };

enum class ViolationCode {
  UnknownEndpoint,
  NoRootBox,
  MultipleRootBoxes,
  RootMismatch,
  ScopeFromNonBox,
  BoxScopeCycle,
  BoxMultipleScopeParents,
  Disconnected,
  ConstantWithOutEdges,
  AnaMismatch,
  UnscopedNode,
  MultipleScopes,
  UnknownRole,
  PronounTag,
  NonHierarchicalBoxes,
  DuplicateEdge,
};

struct Violation {
  ViolationCode code;
  Severity severity;
  std::string message;
};

enum class ValidateMode { Full, Simplified };

const char* violation_name(ViolationCode code);

std::vector<Violation> validate(const Drg& g, ValidateMode mode);

// True when validate() reports no Error-severity violations.
bool is_valid(const Drg& g, ValidateMode mode);

// Role names the validator recognizes; anything else is flagged as a warning.
const std::set<std::string>& known_role_names();

// ---------------------------------------------------------------------------
// Scope queries

// All boxes holding n in their scope. Throws UnknownNodeError; n must not be a box.
std::set<NodeId> scope_of(const Drg& g, const NodeId& n);

// ---------------------------------------------------------------------------
// Canonical box numbering

struct Renumbering {
  Drg graph;
  std::map<NodeId, NodeId> old_to_new;
};

// Renumbers boxes so the root box is b1 and every parent box has a smaller
// index than its children. Traversal is depth-first; sibling boxes are ordered
// by their aligned token when token_of is given, else by node id.
Renumbering canonical_box_numbering(const Drg& g,
                                    const std::map<NodeId, int>* token_of = nullptr);

// True when box ids are exactly b1..bK, the root box is b1 and every scope
// child has a larger index than its parent.
bool canonically_numbered(const Drg& g);

// Depth of each box in the scope tree (root box = 1). Requires a box tree.
std::map<NodeId, int> box_depths(const Drg& g);

}  // namespace drgtk
