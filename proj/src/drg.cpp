#include "drgtk/drg.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <functional>
#include <sstream>

namespace drgtk {

std::vector<DrgEdge> Drg::in_edges(const NodeId& id) const {
  std::vector<DrgEdge> out;
  for (const auto& e : edges)
    if (e.target == id) out.push_back(e);
  return out;
}

std::vector<DrgEdge> Drg::out_edges(const NodeId& id) const {
  std::vector<DrgEdge> out;
  for (const auto& e : edges)
    if (e.source == id) out.push_back(e);
  return out;
}

std::set<NodeId> Drg::scope_parents(const NodeId& n) const {
  std::set<NodeId> out;
  for (const auto& e : edges)
    if (e.kind == EdgeKind::Scope && e.target == n) out.insert(e.source);
  return out;
}

std::vector<NodeId> Drg::role_parents(const NodeId& n) const {
  std::vector<NodeId> out;
  for (const auto& e : edges)
    if (e.kind == EdgeKind::Role && e.target == n) out.push_back(e.source);
  return out;
}

std::optional<NodeId> Drg::box_parent(const NodeId& box) const {
  for (const auto& e : edges)
    if (e.kind == EdgeKind::Scope && e.target == box && is_box(e.source)) return e.source;
  return std::nullopt;
}

const char* violation_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::UnknownEndpoint: return "unknown-endpoint";
    case ViolationCode::NoRootBox: return "no-root-box";
    case ViolationCode::MultipleRootBoxes: return "multiple-root-boxes";
    case ViolationCode::RootMismatch: return "root-mismatch";
    case ViolationCode::ScopeFromNonBox: return "scope-from-non-box";
    case ViolationCode::BoxScopeCycle: return "box-scope-cycle";
    case ViolationCode::BoxMultipleScopeParents: return "box-multiple-scope-parents";
    case ViolationCode::Disconnected: return "disconnected";
    case ViolationCode::ConstantWithOutEdges: return "constant-with-out-edges";
    case ViolationCode::AnaMismatch: return "ana-mismatch";
    case ViolationCode::UnscopedNode: return "unscoped-node";
    case ViolationCode::MultipleScopes: return "multiple-scopes";
    case ViolationCode::UnknownRole: return "unknown-role";
    case ViolationCode::PronounTag: return "pronoun-tag";
    case ViolationCode::NonHierarchicalBoxes: return "non-hierarchical-boxes";
    case ViolationCode::DuplicateEdge: return "duplicate-edge";
  }
  return "unknown";
}

const std::set<std::string>& known_role_names() {
  static const std::set<std::string> names = {
      // Thematic and discourse roles.
      "Agent", "Asset", "Attribute", "Bearer", "Beneficiary", "Causer", "Co-Agent",
      "Co-Patient", "Co-Theme", "Colour", "Consumer", "Creator", "Degree", "Destination",
      "Duration", "Experiencer", "Extent", "Finish", "Goal", "Instrument", "Location",
      "Manner", "Material", "Name", "Of", "Owner", "Part", "Participant", "Path",
      "Patient", "Pivot", "Product", "Proposition", "Quantity", "Recipient", "Result",
      "Role", "Source", "Start", "Stimulus", "Sub", "Theme", "Time", "Topic", "Unit",
      "User", "Value",
      // Discourse relations between boxes.
      "ALTERNATION", "ATTRIBUTION", "CONDITION", "CONSEQUENCE", "CONTINUATION",
      "CONTRAST", "EXPLANATION", "NECESSITY", "NEGATION", "POSSIBILITY", "PRECONDITION",
      "RESULT", "SOURCE",
      // Comparison operators.
      "APX", "EQU", "LEQ", "LES", "MOR", "NEQ", "TAB", "TPR", "TSU",
  };
  return names;
}

namespace {

void report(std::vector<Violation>& out, ViolationCode code, Severity sev, std::string msg) {
  out.push_back({code, sev, std::move(msg)});
}

bool weakly_connected(const Drg& g) {
  if (g.nodes.empty()) return true;
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const auto& e : g.edges) {
    if (!g.has_node(e.source) || !g.has_node(e.target)) continue;
    adj[e.source].push_back(e.target);
    adj[e.target].push_back(e.source);
  }
  std::set<NodeId> seen;
  std::deque<NodeId> work{g.nodes.begin()->first};
  seen.insert(g.nodes.begin()->first);
  while (!work.empty()) {
    NodeId cur = work.front();
    work.pop_front();
    for (const auto& next : adj[cur])
      if (seen.insert(next).second) work.push_back(next);
  }
  return seen.size() == g.nodes.size();
}

}  // namespace

std::vector<Violation> validate(const Drg& g, ValidateMode mode) {
  std::vector<Violation> out;

  bool endpoints_ok = true;
  for (const auto& e : g.edges) {
    for (const auto& end : {e.source, e.target}) {
      if (!g.has_node(end)) {
        endpoints_ok = false;
        report(out, ViolationCode::UnknownEndpoint, Severity::Error,
               "edge " + e.source.str() + " -" + e.label() + "-> " + e.target.str() +
                   " references missing node " + end.str());
      }
    }
  }

  if (!g.has_node(g.root) || g.node(g.root).kind != NodeKind::Box) {
    report(out, ViolationCode::RootMismatch, Severity::Error,
           "root " + g.root.str() + " is not a box of the graph");
  }

  // Box tree shape: every non-root box has exactly one box scope parent.
  std::vector<NodeId> boxes;
  for (const auto& [id, n] : g.nodes)
    if (n.kind == NodeKind::Box) boxes.push_back(id);
  if (boxes.empty()) {
    report(out, ViolationCode::NoRootBox, Severity::Error, "graph has no box");
  }
  for (const auto& b : boxes) {
    std::vector<NodeId> parents;
    for (const auto& e : g.edges)
      if (e.kind == EdgeKind::Scope && e.target == b && g.has_node(e.source)) parents.push_back(e.source);
    if (b == g.root) {
      if (!parents.empty())
        report(out, ViolationCode::BoxScopeCycle, Severity::Error,
               "root box " + b.str() + " has a scope parent");
      continue;
    }
    if (parents.empty())
      report(out, ViolationCode::MultipleRootBoxes, Severity::Error,
             "box " + b.str() + " has no scope parent and is not the root");
    else if (parents.size() > 1)
      report(out, ViolationCode::BoxMultipleScopeParents, Severity::Error,
             "box " + b.str() + " has several scope parents");
  }
  // Cycle check over box-to-box scope edges.
  if (endpoints_ok && g.has_node(g.root)) {
    std::set<NodeId> reached{g.root};
    std::deque<NodeId> work{g.root};
    while (!work.empty()) {
      NodeId cur = work.front();
      work.pop_front();
      for (const auto& e : g.edges)
        if (e.kind == EdgeKind::Scope && e.source == cur && g.is_box(e.target))
          if (reached.insert(e.target).second) work.push_back(e.target);
    }
    for (const auto& b : boxes)
      if (!reached.count(b))
        report(out, ViolationCode::BoxScopeCycle, Severity::Error,
               "box " + b.str() + " is not reachable from the root over scope edges");
  }

  for (const auto& e : g.edges) {
    if (!g.has_node(e.source) || !g.has_node(e.target)) continue;
    const auto& src = g.node(e.source);
    const auto& tgt = g.node(e.target);
    if (e.kind == EdgeKind::Scope && src.kind != NodeKind::Box)
      report(out, ViolationCode::ScopeFromNonBox, Severity::Error,
             "scope edge out of non-box " + e.source.str());
    if (src.kind == NodeKind::Constant)
      report(out, ViolationCode::ConstantWithOutEdges, Severity::Error,
             "constant " + e.source.str() + " has an outgoing edge");
    if (e.kind == EdgeKind::Ana && (src.kind != NodeKind::Synset || tgt.kind != NodeKind::Synset))
      report(out, ViolationCode::AnaMismatch, Severity::Error,
             "ANA edge " + e.source.str() + " -> " + e.target.str() + " must join two synsets");
    if (e.kind == EdgeKind::Role && !known_role_names().count(e.role))
      report(out, ViolationCode::UnknownRole, Severity::Warning,
             "unknown role name " + e.role);
  }

  if (!weakly_connected(g))
    report(out, ViolationCode::Disconnected, Severity::Error, "graph is not weakly connected");

  for (const auto& [id, n] : g.nodes) {
    if (n.kind != NodeKind::Synset) continue;
    if (n.synset.pos == 'p')
      report(out, ViolationCode::PronounTag, Severity::Warning,
             "node " + id.str() + " carries the coreference tag " + n.synset.str());
    auto parents = g.scope_parents(id);
    if (mode == ValidateMode::Full && parents.empty())
      report(out, ViolationCode::UnscopedNode, Severity::Error,
             "synset " + id.str() + " is in no box");
    if (mode == ValidateMode::Full && parents.size() > 1)
      report(out, ViolationCode::MultipleScopes, Severity::Warning,
             "synset " + id.str() + " is in " + std::to_string(parents.size()) + " boxes");
  }

  for (const auto& e : g.edges) {
    if (e.kind != EdgeKind::Scope) continue;
    if (e.source.ns == Ns::Box && e.target.ns == Ns::Box && g.is_box(e.source) && g.is_box(e.target) &&
        e.source.index > e.target.index)
      report(out, ViolationCode::NonHierarchicalBoxes, Severity::Warning,
             "box indices run against the scope tree: " + e.source.str() + " above " + e.target.str());
  }

  std::set<DrgEdge> seen_edges;
  for (const auto& e : g.edges)
    if (!seen_edges.insert(e).second)
      report(out, ViolationCode::DuplicateEdge, Severity::Warning,
             "edge " + e.source.str() + " -" + e.label() + "-> " + e.target.str() + " repeats");

  return out;
}

bool is_valid(const Drg& g, ValidateMode mode) {
  for (const auto& v : validate(g, mode))
    if (v.severity == Severity::Error) return false;
  return true;
}

std::set<NodeId> scope_of(const Drg& g, const NodeId& n) {
  const auto& node = g.node(n);
  if (node.kind == NodeKind::Box) throw DrgError("scope_of: " + n.str() + " is a box");
  return g.scope_parents(n);
}

Renumbering canonical_box_numbering(const Drg& g,
                                    const std::map<NodeId, int>* token_of) {
  auto sort_key = [&](const NodeId& b) {
    int tok = INT_MAX;
    if (token_of) {
      auto it = token_of->find(b);
      if (it != token_of->end()) tok = it->second;
    }
    return std::pair<int, NodeId>(tok, b);
  };

  std::map<NodeId, NodeId> mapping;
  int next = 1;
  std::function<void(const NodeId&)> visit = [&](const NodeId& b) {
    mapping[b] = NodeId::box(next++);
    std::vector<NodeId> children;
    for (const auto& e : g.edges)
      if (e.kind == EdgeKind::Scope && e.source == b && g.is_box(e.target) && !mapping.count(e.target))
        children.push_back(e.target);
    std::sort(children.begin(), children.end(),
              [&](const NodeId& a, const NodeId& c) { return sort_key(a) < sort_key(c); });
    for (const auto& c : children) visit(c);
  };
  if (g.has_node(g.root) && g.is_box(g.root)) visit(g.root);

  // Any box outside the root's tree still gets a number, after the tree.
  std::vector<NodeId> leftovers;
  for (const auto& [id, n] : g.nodes)
    if (n.kind == NodeKind::Box && !mapping.count(id)) leftovers.push_back(id);
  std::sort(leftovers.begin(), leftovers.end(),
            [&](const NodeId& a, const NodeId& c) { return sort_key(a) < sort_key(c); });
  for (const auto& b : leftovers) visit(b);

  auto rename = [&](const NodeId& id) {
    auto it = mapping.find(id);
    return it == mapping.end() ? id : it->second;
  };

  Renumbering out;
  out.old_to_new = mapping;
  out.graph.root = rename(g.root);
  for (const auto& [id, n] : g.nodes) {
    DrgNode copy = n;
    copy.id = rename(id);
    out.graph.add(std::move(copy));
  }
  for (const auto& e : g.edges) {
    DrgEdge copy = e;
    copy.source = rename(e.source);
    copy.target = rename(e.target);
    out.graph.add(std::move(copy));
  }
  return out;
}

bool canonically_numbered(const Drg& g) {
  std::set<int> indices;
  for (const auto& [id, n] : g.nodes)
    if (n.kind == NodeKind::Box) indices.insert(id.index);
  if (indices.empty()) return false;
  if (*indices.begin() != 1 || *indices.rbegin() != static_cast<int>(indices.size())) return false;
  if (!(g.root == NodeId::box(1))) return false;
  for (const auto& e : g.edges)
    if (e.kind == EdgeKind::Scope && g.is_box(e.source) && g.is_box(e.target) &&
        e.source.index >= e.target.index)
      return false;
  return true;
}

std::map<NodeId, int> box_depths(const Drg& g) {
  std::map<NodeId, int> depth;
  if (!g.has_node(g.root)) return depth;
  depth[g.root] = 1;
  std::deque<NodeId> work{g.root};
  while (!work.empty()) {
    NodeId cur = work.front();
    work.pop_front();
    for (const auto& e : g.edges)
      if (e.kind == EdgeKind::Scope && e.source == cur && g.is_box(e.target) && !depth.count(e.target)) {
        depth[e.target] = depth[cur] + 1;
        work.push_back(e.target);
      }
  }
  return depth;
}

}  // namespace drgtk
