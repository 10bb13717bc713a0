#include "drgtk/iso.hpp"

#include <algorithm>
#include <vector>

namespace drgtk {

namespace {

bool same_label(const DrgNode& a, const DrgNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Box: return true;
    case NodeKind::Synset: return a.synset == b.synset;
    case NodeKind::Constant: return a.value == b.value;
  }
  return false;
}

// Multiset of (direction, edge label, neighbor kind) pairs; a cheap invariant
// that prunes most candidate pairings.
std::vector<std::string> signature(const Drg& g, const NodeId& n) {
  std::vector<std::string> sig;
  for (const auto& e : g.edges) {
    if (e.source == n && g.has_node(e.target))
      sig.push_back(">" + e.label() + std::string(1, static_cast<char>(g.node(e.target).kind)));
    if (e.target == n && g.has_node(e.source))
      sig.push_back("<" + e.label() + std::string(1, static_cast<char>(g.node(e.source).kind)));
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

struct Matcher {
  const Drg& a;
  const Drg& b;
  std::map<NodeId, NodeId> fwd;
  std::map<NodeId, NodeId> rev;
  std::vector<NodeId> order;  // a-nodes in assignment order

  bool edges_consistent(const NodeId& an, const NodeId& bn) {
    // Every a-edge touching an whose other endpoint is already mapped must
    // exist in b with the mapped endpoints, with equal multiplicity, and
    // vice versa.
    auto count_a = [&](const NodeId& s, const NodeId& t, const DrgEdge& like) {
      int c = 0;
      for (const auto& e : a.edges)
        if (e.source == s && e.target == t && e.kind == like.kind && e.role == like.role) c++;
      return c;
    };
    auto count_b = [&](const NodeId& s, const NodeId& t, const DrgEdge& like) {
      int c = 0;
      for (const auto& e : b.edges)
        if (e.source == s && e.target == t && e.kind == like.kind && e.role == like.role) c++;
      return c;
    };
    for (const auto& e : a.edges) {
      if (e.source == an && (e.target == an || fwd.count(e.target))) {
        NodeId bt = e.target == an ? bn : fwd[e.target];
        if (count_a(e.source, e.target, e) != count_b(bn, bt, e)) return false;
      } else if (e.target == an && fwd.count(e.source)) {
        if (count_a(e.source, e.target, e) != count_b(fwd[e.source], bn, e)) return false;
      }
    }
    for (const auto& e : b.edges) {
      if (e.source == bn && (e.target == bn || rev.count(e.target))) {
        NodeId at = e.target == bn ? an : rev[e.target];
        if (count_b(e.source, e.target, e) != count_a(an, at, e)) return false;
      } else if (e.target == bn && rev.count(e.source)) {
        if (count_b(e.source, e.target, e) != count_a(rev[e.source], an, e)) return false;
      }
    }
    return true;
  }

  bool assign(size_t i, const std::map<NodeId, std::vector<NodeId>>& candidates) {
    if (i == order.size()) return true;
    const NodeId& an = order[i];
    for (const auto& bn : candidates.at(an)) {
      if (rev.count(bn)) continue;
      if (!edges_consistent(an, bn)) continue;
      fwd[an] = bn;
      rev[bn] = an;
      if (assign(i + 1, candidates)) return true;
      fwd.erase(an);
      rev.erase(bn);
    }
    return false;
  }
};

}  // namespace

bool graph_equal(const Drg& a, const Drg& b) {
  if (!(a.root == b.root)) return false;
  if (a.nodes.size() != b.nodes.size()) return false;
  for (const auto& [id, n] : a.nodes) {
    auto it = b.nodes.find(id);
    if (it == b.nodes.end() || !same_label(n, it->second)) return false;
  }
  auto ea = a.edges;
  auto eb = b.edges;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

std::optional<std::map<NodeId, NodeId>> find_isomorphism(const Drg& a, const Drg& b) {
  if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) return std::nullopt;

  std::map<NodeId, std::vector<std::string>> sig_b;
  for (const auto& [id, n] : b.nodes) sig_b[id] = signature(b, id);

  std::map<NodeId, std::vector<NodeId>> candidates;
  for (const auto& [ida, na] : a.nodes) {
    auto sig = signature(a, ida);
    auto& cs = candidates[ida];
    for (const auto& [idb, nb] : b.nodes) {
      if (!same_label(na, nb)) continue;
      if (sig != sig_b[idb]) continue;
      if ((ida == a.root) != (idb == b.root)) continue;
      cs.push_back(idb);
    }
    if (cs.empty()) return std::nullopt;
  }

  Matcher m{a, b, {}, {}, {}};
  for (const auto& [id, n] : a.nodes) m.order.push_back(id);
  std::sort(m.order.begin(), m.order.end(), [&](const NodeId& x, const NodeId& y) {
    return candidates[x].size() < candidates[y].size();
  });
  if (!m.assign(0, candidates)) return std::nullopt;
  return m.fwd;
}

bool isomorphic(const Drg& a, const Drg& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace drgtk
