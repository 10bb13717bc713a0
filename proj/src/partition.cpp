#include "drgtk/partition.hpp"

#include <algorithm>
#include <set>

namespace drgtk {

namespace {

// Token whose fragment an edge belongs to, given who owns each endpoint.
int edge_owner(const DrgEdge& e, const EdgeAttachmentPolicy& p, int src_tok, int tgt_tok) {
  bool head_side;
  if (e.kind == EdgeKind::Scope)
    head_side = p.member_mode == MemberMode::App;
  else
    head_side = p.is_app(e.label());
  int owner = head_side ? src_tok : tgt_tok;
  if (owner < 0) owner = head_side ? tgt_tok : src_tok;  // constant endpoint
  return owner;
}

}  // namespace

std::map<int, SGraph> partition(const Drg& g, const Alignment& a,
                                const EdgeAttachmentPolicy& p, std::vector<std::string>* log) {
  check_alignment(g, a);

  std::map<NodeId, int> owner;
  for (const auto& [id, n] : g.nodes) {
    if (n.kind == NodeKind::Constant) continue;
    owner[id] = a.token_of(id);
  }

  std::map<int, SGraph> frags;
  for (const auto& [id, tok] : owner) frags[tok].add(SNode::from(g.node(id)));

  // Deterministic edge order so constants land in a stable fragment.
  std::vector<DrgEdge> edges = g.edges;
  std::sort(edges.begin(), edges.end());

  std::set<std::string> warned;
  for (const auto& e : edges) {
    if (e.kind == EdgeKind::Role && !p.known(e.label()) && log && warned.insert(e.label()).second)
      log->push_back("label " + e.label() + " is in neither attachment list; treating as app");

    int src_tok = owner.count(e.source) ? owner[e.source] : -1;
    int tgt_tok = owner.count(e.target) ? owner[e.target] : -1;
    int tok = edge_owner(e, p, src_tok, tgt_tok);
    if (tok < 0) continue;  // both endpoints constants: invalid upstream
    SGraph& f = frags[tok];

    for (const auto& [id, end_tok] : {std::pair{e.source, src_tok}, {e.target, tgt_tok}}) {
      if (f.has_node(id)) continue;
      if (end_tok < 0 && g.has_node(id) && g.node(id).kind == NodeKind::Constant) {
        // First edge to reach a constant adopts it.
        bool adopted = false;
        for (const auto& [t2, f2] : frags)
          if (f2.has_node(id) && f2.nodes.at(id).labeled) adopted = true;
        if (!adopted) {
          f.add(SNode::from(g.node(id)));
          continue;
        }
      }
      f.add(SNode::placeholder(id));
    }
    f.add(e);
  }

  // Default root: a labeled non-constant node, preferring ones other
  // fragments point at via placeholders.
  std::map<NodeId, int> refs;
  for (const auto& [tok, f] : frags)
    for (const auto& [id, n] : f.nodes)
      if (!n.labeled) refs[id]++;
  for (auto& [tok, f] : frags) {
    NodeId best{};
    bool found = false, best_ref = false;
    for (const auto& [id, n] : f.nodes) {
      if (!n.labeled || n.label.kind == NodeKind::Constant) continue;
      bool r = refs.count(id) != 0;
      if (!found || (r && !best_ref) || (r == best_ref && id < best)) {
        best = id;
        found = true;
        best_ref = r;
      }
    }
    if (found) f.root = best;
  }
  return frags;
}

Drg glue(const std::map<int, SGraph>& fragments, const NodeId& root) {
  Drg g;
  g.root = root;
  for (const auto& [tok, f] : fragments) {
    for (const auto& [id, n] : f.nodes)
      if (n.labeled && !g.has_node(id)) g.add(n.label);
    for (const auto& e : f.edges) g.add(e);
  }
  return g;
}

}  // namespace drgtk
