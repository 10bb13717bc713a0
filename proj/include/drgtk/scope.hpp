#pragma once

#include <string>
#include <vector>

#include "drgtk/alignment.hpp"
#include "drgtk/drg.hpp"

namespace drgtk {

class NonCanonicalNumberingError : public DrgError {
 public:
  NonCanonicalNumberingError() : DrgError("graph is not canonically numbered") {}
};

class UnresolvableError : public DrgError {
 public:
  explicit UnresolvableError(const NodeId& id)
      : DrgError("no scope can be inferred for " + id.str()) {}
};

// Label of a scope dependency edge: root (START only), no_scope, or a list of
// canonical box numbers, one per synset of the dependent token's fragment in
// top-down order. Rendered root / no_scope / scope_b2 / scope_b3_b2 ...
struct ScopeLabel {
  enum class Kind { Root, NoScope, Scope };
  Kind kind = Kind::NoScope;
  std::vector<int> boxes;

  std::string str() const;
  static ScopeLabel parse(const std::string& text);
  static ScopeLabel root() { return {Kind::Root, {}}; }
  static ScopeLabel no_scope() { return {Kind::NoScope, {}}; }
  static ScopeLabel scope(std::vector<int> b) { return {Kind::Scope, std::move(b)}; }

  friend bool operator==(const ScopeLabel&, const ScopeLabel&) = default;
};

struct ScopeDep {
  int head = 0;
  int dep = 0;
  ScopeLabel label;
  friend bool operator==(const ScopeDep&, const ScopeDep&) = default;
};

// Token-level scope graph. Not necessarily a tree: tokens may have several
// incoming edges or none. START (token 0) carries the root mark.
struct ScopeDepGraph {
  std::vector<std::string> tokens;  // tokens[0] == "START"
  std::vector<ScopeDep> edges;
};

// The synsets aligned to one token, ordered top-down: role sources before
// their targets, ties by node id. This is the positional key both the
// projector and the resolver use to line up label slots with nodes.
std::vector<NodeId> fragment_positions(const Drg& g, const std::vector<NodeId>& aligned);

// Projects the scope edges of a fully scoped, canonically numbered DRG onto
// token-level dependencies. Tokens with no aligned box or synset get a
// no_scope edge from START; tokens aligned only to boxes get nothing.
ScopeDepGraph project(const Drg& g, const Alignment& a,
                      std::vector<std::string>* log = nullptr);

// Gives every unscoped non-box node the scope of a role parent, smallest
// canonical box first; falls back to children and weak neighbors so any
// connected simplified graph resolves. Returns a fully scoped graph.
Drg resolve_rule_based(const Drg& g);

// Applies dependency-predicted scope first (never overriding scope edges the
// input graph already has), then rule-based inheritance for the rest.
Drg resolve_with_dependencies(const Drg& g, const ScopeDepGraph& d, const Alignment& a,
                              std::vector<std::string>* log = nullptr);

// Tabular file: one `index token head label` line per edge, blank line
// between sentences, `_ _` in the head/label columns for edgeless tokens,
// repeated index lines for multiple heads. START is line `0 START 0 root`.
std::vector<ScopeDepGraph> read_scope_dep_file(const std::string& path);
void write_scope_dep_file(const std::string& path, const std::vector<ScopeDepGraph>& list);
std::string scope_dep_to_text(const ScopeDepGraph& d);

}  // namespace drgtk
