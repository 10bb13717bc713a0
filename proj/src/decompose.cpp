#include "drgtk/decompose.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "drgtk/coref.hpp"
#include "drgtk/iso.hpp"
#include "drgtk/pipeline.hpp"
#include "drgtk/simplify.hpp"

namespace drgtk {

namespace {

struct Searcher {
  const Drg& g;
  const Alignment& a;
  DecomposeResult out;
  long budget;

  std::map<int, SGraph> frags;
  std::vector<int> toks;            // fragment tokens, ascending
  int root_tok = -1;                // fragment owning g.root
  std::map<int, NodeId> root_of;    // chosen root per fragment
  std::map<NodeId, std::set<int>> refs;  // boundary node -> referencing fragments
  std::map<NodeId, SourceName> name_of;  // boundary node -> source name

  std::map<int, int> parent;
  std::map<int, AmOp> op;

  Searcher(const Drg& graph, const Alignment& align, long steps)
      : g(graph), a(align), budget(steps) {}

  bool fail(const std::string& why) {
    out.status = DecomposeResult::Status::NotDecomposable;
    out.reason = why;
    return false;
  }

  bool prepare(const EdgeAttachmentPolicy& p) {
    frags = partition(g, a, p, &out.log);
    for (const auto& [tok, f] : frags) toks.push_back(tok);

    for (const auto& [tok, f] : frags)
      for (const auto& [id, n] : f.nodes)
        if (!n.labeled) refs[id].insert(tok);

    if (!g.has_node(g.root)) return fail("graph has no root node");
    root_tok = a.token_of(g.root);

    // Per fragment, nodes other fragments reference. At most one such node
    // can ever be resolved: the fragment's root.
    for (int tok : toks) {
      const SGraph& f = frags.at(tok);
      std::vector<NodeId> exported;
      for (const auto& [id, n] : f.nodes)
        if (n.labeled && refs.count(id)) exported.push_back(id);
      if (exported.size() > 1)
        return fail("a fragment exports " + std::to_string(exported.size()) +
                    " nodes; only its root can be plugged in elsewhere");
      if (tok == root_tok) {
        if (!exported.empty() && !(exported.front() == g.root))
          return fail("the root fragment exports a non-root node");
        root_of[tok] = g.root;
      } else if (!exported.empty()) {
        root_of[tok] = exported.front();
      } else {
        root_of[tok] = frags.at(tok).root;  // partition default
      }
    }

    // Source names: one per referenced node, distinct whenever two names
    // meet in the same fragment.
    std::map<NodeId, std::set<NodeId>> conflict;
    for (int tok : toks) {
      std::vector<NodeId> carried;
      for (const auto& [id, n] : frags.at(tok).nodes)
        if (!n.labeled) carried.push_back(id);
      for (const auto& x : carried)
        for (const auto& y : carried)
          if (!(x == y)) conflict[x].insert(y);
    }
    const auto& inventory = source_inventory();
    for (const auto& [id, group] : refs) {
      std::set<SourceName> taken;
      for (const auto& other : conflict[id])
        if (name_of.count(other)) taken.insert(name_of.at(other));
      bool assigned = false;
      for (const auto& s : inventory)
        if (!taken.count(s)) {
          name_of[id] = s;
          assigned = true;
          break;
        }
      if (!assigned)
        return fail("boundary nodes need more than " + std::to_string(inventory.size()) +
                    " source names");
    }
    return true;
  }

  SGraph decorated(int tok) const {
    SGraph f = frags.at(tok);
    f.root = root_of.at(tok);
    for (const auto& [id, n] : f.nodes)
      if (!n.labeled) f.sources[name_of.at(id)] = id;
    return f;
  }

  AmDependencyTree build_tree() const {
    AmDependencyTree t;
    t.tokens = a.tokens;
    for (int tok : toks) t.constants[tok] = decorated(tok);
    for (const auto& [d, h] : parent) t.edges.push_back({h, d, op.at(d)});
    std::sort(t.edges.begin(), t.edges.end(), [](const AmEdge& x, const AmEdge& y) {
      return std::pair{x.dep, x.head} < std::pair{y.dep, y.head};
    });
    return t;
  }

  bool creates_cycle(int d, int h) const {
    int cur = h;
    while (true) {
      if (cur == d) return true;
      auto it = parent.find(cur);
      if (it == parent.end()) return false;
      cur = it->second;
    }
  }

  bool verify() {
    out.steps++;
    AmDependencyTree t = build_tree();
    try {
      Drg result = evaluate(t).to_drg();
      if (!isomorphic(result, g)) return false;
    } catch (const AmError&) {
      return false;
    }
    out.tree = std::move(t);
    out.status = DecomposeResult::Status::Ok;
    return true;
  }

  // Candidates for attaching fragment d, most promising first: edges whose
  // merge target is already referenced across the boundary.
  std::vector<std::pair<int, AmOp>> candidates(int d) const {
    const NodeId& rd = root_of.at(d);
    bool app_ok = refs.count(rd) != 0;
    std::vector<std::tuple<int, int, AmOp>> scored;
    for (int h : toks) {
      if (h == d) continue;
      if (app_ok) {
        int score = refs.at(rd).count(h) ? 0 : 2;
        scored.push_back({score, h, AmOp::app(name_of.at(rd))});
      }
      const NodeId& rh = root_of.at(h);
      if (refs.count(rh)) {
        int score = frags.at(d).has_node(rh) && !frags.at(d).nodes.at(rh).labeled ? 1 : 3;
        scored.push_back({score, h, AmOp::mod(name_of.at(rh))});
      }
    }
    std::sort(scored.begin(), scored.end(),
              [](const auto& x, const auto& y) {
                return std::pair{std::get<0>(x), std::get<1>(x)} <
                       std::pair{std::get<0>(y), std::get<1>(y)};
              });
    std::vector<std::pair<int, AmOp>> out2;
    for (auto& [s, h, o] : scored) out2.push_back({h, o});
    return out2;
  }

  bool search(std::size_t idx) {
    if (out.steps > budget) return false;
    while (idx < toks.size() && toks[idx] == root_tok) idx++;
    if (idx == toks.size()) return verify();
    int d = toks[idx];
    for (const auto& [h, o] : candidates(d)) {
      out.steps++;
      if (out.steps > budget) return false;
      if (creates_cycle(d, h)) continue;
      parent[d] = h;
      op[d] = o;
      if (search(idx + 1)) return true;
      parent.erase(d);
      op.erase(d);
    }
    return false;
  }

  DecomposeResult run(const EdgeAttachmentPolicy& p) {
    if (!prepare(p)) return std::move(out);
    if (toks.size() == 1) {
      if (!verify()) fail("the single fragment does not match the graph");
      return std::move(out);
    }
    if (root_tok < 0 || !frags.count(root_tok)) {
      fail("no fragment owns the root");
      return std::move(out);
    }
    if (search(0)) return std::move(out);
    if (out.steps > budget) {
      out.status = DecomposeResult::Status::BudgetExhausted;
      out.reason = "search budget of " + std::to_string(budget) + " steps exhausted";
    } else {
      fail("no dependency tree evaluates to the graph");
    }
    return std::move(out);
  }
};

}  // namespace

DecomposeResult find_am_tree(const Drg& g, const Alignment& a, const EdgeAttachmentPolicy& p,
                             long budget) {
  Searcher s(g, a, budget);
  return s.run(p);
}

RateReport decomposability_rate(const std::vector<std::pair<Drg, Alignment>>& corpus,
                                const EdgeAttachmentPolicy& p, PrepMode mode, long budget,
                                int jobs) {
  RateReport rep;
  rep.total = static_cast<int>(corpus.size());
  rep.items.resize(corpus.size());

  parallel_for(corpus.size(), jobs, [&](std::size_t i) {
    Drg g = preprocess_coref(corpus[i].first);
    if (mode == PrepMode::Cpt)
      g = to_compact(g);
    else if (mode == PrepMode::Scpl)
      g = to_scopeless(g);
    auto r = find_am_tree(g, corpus[i].second, p, budget);
    rep.items[i] = {r.status, r.reason};
  });

  for (const auto& item : rep.items) {
    if (item.status == DecomposeResult::Status::Ok)
      rep.decomposable++;
    else if (item.status == DecomposeResult::Status::BudgetExhausted) {
      rep.budget_exhausted++;
      rep.reasons["budget exhausted"]++;
    } else {
      rep.reasons[item.reason.empty() ? "not decomposable" : item.reason]++;
    }
  }
  rep.rate = rep.total ? static_cast<double>(rep.decomposable) / rep.total : 0.0;
  return rep;
}

}  // namespace drgtk
