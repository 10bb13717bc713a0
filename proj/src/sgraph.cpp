#include "drgtk/sgraph.hpp"

#include <algorithm>

namespace drgtk {

const std::vector<SourceName>& source_inventory() {
  static const std::vector<SourceName> inv = {"s", "o", "o2", "m", "m1", "m2", "m3"};
  return inv;
}

std::set<SourceName> SGraph::names_of(const NodeId& id) const {
  std::set<SourceName> out;
  for (const auto& [name, n] : sources)
    if (n == id) out.insert(name);
  return out;
}

SGraph SGraph::from_drg(const Drg& g) {
  SGraph out;
  out.root = g.root;
  for (const auto& [id, n] : g.nodes) out.add(SNode::from(n));
  out.edges = g.edges;
  return out;
}

Drg SGraph::to_drg() const {
  Drg out;
  out.root = root;
  for (const auto& [id, n] : nodes) {
    if (!n.labeled) throw AmError("unlabeled node " + id.str() + " left in result");
    out.add(n.label);
  }
  for (const auto& [name, id] : sources)
    throw AmError("source " + name + " left unconsumed on " + id.str());
  out.edges = edges;
  return out;
}

namespace {

// Merges two node payloads; a label beats a placeholder, two labels must agree.
SNode merge_nodes(const SNode& keep, const SNode& other) {
  if (!other.labeled) return keep;
  if (!keep.labeled) {
    SNode out = other;
    out.id = keep.id;
    out.label.id = keep.id;
    return out;
  }
  DrgNode a = keep.label;
  DrgNode b = other.label;
  b.id = a.id;
  bool same = a.kind == b.kind &&
              (a.kind == NodeKind::Box ||
               (a.kind == NodeKind::Synset && a.synset == b.synset) ||
               (a.kind == NodeKind::Constant && a.value == b.value));
  if (!same)
    throw SourceClashError("cannot merge differently labeled nodes " + keep.id.str() + " and " +
                           other.id.str());
  return keep;
}

// Disjoint union of head and other where `pin` sends selected other-nodes onto
// head nodes; every other node gets a fresh id when it would collide.
SGraph combine(const SGraph& head, const SGraph& other, const std::map<NodeId, NodeId>& pin) {
  SGraph out = head;

  std::map<char, int> next_index;
  for (const auto& [id, n] : head.nodes) {
    char ns = static_cast<char>(id.ns);
    next_index[ns] = std::max(next_index[ns], id.index + 1);
  }

  std::map<NodeId, NodeId> rename;
  for (const auto& [oid, target] : pin) rename[oid] = target;
  for (const auto& [oid, n] : other.nodes) {
    if (rename.count(oid)) continue;
    if (!out.has_node(oid)) {
      rename[oid] = oid;
      continue;
    }
    char ns = static_cast<char>(oid.ns);
    NodeId fresh{oid.ns, next_index[ns]++};
    while (out.has_node(fresh) || other.nodes.count(fresh)) fresh = {oid.ns, next_index[ns]++};
    rename[oid] = fresh;
  }

  for (const auto& [oid, n] : other.nodes) {
    NodeId nid = rename[oid];
    if (out.has_node(nid)) {
      out.nodes[nid] = merge_nodes(out.nodes[nid], n);
    } else {
      SNode copy = n;
      copy.id = nid;
      if (copy.labeled) copy.label.id = nid;
      out.add(std::move(copy));
    }
  }
  for (const auto& e : other.edges) {
    DrgEdge copy = e;
    copy.source = rename[e.source];
    copy.target = rename[e.target];
    out.add(std::move(copy));
  }
  for (const auto& [name, oid] : other.sources) {
    NodeId nid = rename[oid];
    auto it = out.sources.find(name);
    if (it != out.sources.end() && !(it->second == nid))
      throw SourceClashError("source " + name + " would mark two nodes");
    out.sources[name] = nid;
  }
  return out;
}

// Shared source names force their nodes together; contradictory pins fail.
std::map<NodeId, NodeId> shared_source_pins(const SGraph& head, const SGraph& other) {
  std::map<NodeId, NodeId> pin;
  for (const auto& [name, oid] : other.sources) {
    auto it = head.sources.find(name);
    if (it == head.sources.end()) continue;
    auto existing = pin.find(oid);
    if (existing != pin.end() && !(existing->second == it->second))
      throw SourceClashError("node " + oid.str() + " is pinned to two head nodes");
    pin[oid] = it->second;
  }
  return pin;
}

}  // namespace

SGraph apply(const SGraph& head, const SGraph& arg, const SourceName& src) {
  auto slot = head.sources.find(src);
  if (slot == head.sources.end()) throw MissingSourceError(src);

  auto pin = shared_source_pins(head, arg);
  auto existing = pin.find(arg.root);
  if (existing != pin.end() && !(existing->second == slot->second))
    throw SourceClashError("argument root is pinned to two head nodes");
  pin[arg.root] = slot->second;

  SGraph out = combine(head, arg, pin);
  out.sources.erase(src);
  out.root = head.root;
  return out;
}

SGraph modify(const SGraph& head, const SGraph& mod, const SourceName& src) {
  auto slot = mod.sources.find(src);
  if (slot == mod.sources.end()) throw MissingSourceError(src);

  auto pin = shared_source_pins(head, mod);
  auto existing = pin.find(slot->second);
  if (existing != pin.end() && !(existing->second == head.root))
    throw SourceClashError("modifier source is pinned to two head nodes");
  pin[slot->second] = head.root;

  SGraph out = combine(head, mod, pin);
  out.sources.erase(src);
  out.root = head.root;
  return out;
}

}  // namespace drgtk
