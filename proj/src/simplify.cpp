#include "drgtk/simplify.hpp"

#include <algorithm>
#include <deque>
#include <utility>

namespace drgtk {

namespace {

bool connected_without(const Drg& g, const std::vector<bool>& removed, size_t candidate) {
  if (g.nodes.empty()) return true;
  std::map<NodeId, std::vector<NodeId>> adj;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if (removed[i] || i == candidate) continue;
    const auto& e = g.edges[i];
    adj[e.source].push_back(e.target);
    adj[e.target].push_back(e.source);
  }
  std::set<NodeId> seen{g.nodes.begin()->first};
  std::deque<NodeId> work{g.nodes.begin()->first};
  while (!work.empty()) {
    NodeId cur = work.front();
    work.pop_front();
    for (const auto& next : adj[cur])
      if (seen.insert(next).second) work.push_back(next);
  }
  return seen.size() == g.nodes.size();
}

Drg drop_edges(const Drg& g, const std::vector<bool>& removed) {
  Drg out;
  out.root = g.root;
  out.nodes = g.nodes;
  for (size_t i = 0; i < g.edges.size(); ++i)
    if (!removed[i]) out.edges.push_back(g.edges[i]);
  return out;
}

}  // namespace

Drg to_compact(const Drg& g) {
  std::vector<bool> removed(g.edges.size(), false);
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.kind != EdgeKind::Scope) continue;
    if (!g.has_node(e.target) || g.is_box(e.target)) continue;

    auto parents = g.role_parents(e.target);
    if (parents.empty()) continue;

    // Drop only when the node and all its role parents share a box. A parent
    // already stripped of scope (simplified input) never counts as same-box;
    // a box parent counts when the node sits directly inside it.
    std::set<NodeId> node_boxes = g.scope_parents(e.target);
    bool all_same = true;
    for (const auto& p : parents) {
      bool shares = false;
      if (g.is_box(p)) {
        shares = node_boxes.count(p) != 0;
      } else {
        for (const auto& b : g.scope_parents(p))
          if (node_boxes.count(b)) shares = true;
      }
      if (!shares) {
        all_same = false;
        break;
      }
    }
    if (all_same) removed[i] = true;
  }
  return drop_edges(g, removed);
}

Drg to_scopeless(const Drg& g) {
  std::vector<size_t> order;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.kind != EdgeKind::Scope) continue;
    if (g.has_node(e.target) && g.is_box(e.target)) continue;  // box tree survives
    order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto& ea = g.edges[a];
    const auto& eb = g.edges[b];
    return std::make_pair(ea.source, ea.target) < std::make_pair(eb.source, eb.target);
  });

  std::vector<bool> removed(g.edges.size(), false);
  for (size_t i : order)
    if (connected_without(g, removed, i)) removed[i] = true;
  return drop_edges(g, removed);
}

}  // namespace drgtk
