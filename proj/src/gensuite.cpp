#include "drgtk/gensuite.hpp"

#include <algorithm>
#include <random>

namespace drgtk {

namespace {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  int between(int lo, int hi) { return lo + static_cast<int>(gen() % (hi - lo + 1)); }
  bool chance(double p) { return static_cast<double>(gen() % 1000000) < p * 1000000.0; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[gen() % v.size()];
  }
};

std::string make_lemma(Rng& rng, int pool) {
  return "w" + std::to_string(1 + static_cast<int>(rng.gen() % pool));
}

}  // namespace

std::pair<Drg, Alignment> generate(std::uint64_t seed, const GenParams& p) {
  if (p.app_roles.empty() || p.mod_roles.empty() || p.box_roles.empty() || p.const_roles.empty())
    throw DrgError("generator role inventories must be nonempty");
  Rng rng(seed);
  Drg g;
  Alignment a;
  a.tokens = {"START"};

  int next_box = 1, next_syn = 1, next_const = 1;
  auto new_box = [&](int tok) {
    NodeId id = NodeId::box(next_box++);
    g.add(DrgNode::box(id));
    a.node_token[id] = tok;
    return id;
  };

  NodeId root = new_box(0);
  g.root = root;
  std::vector<NodeId> boxes = {root};

  int nb = rng.between(p.min_boxes, std::max(p.min_boxes, p.max_boxes));
  while (static_cast<int>(boxes.size()) < nb) {
    NodeId parent = rng.pick(boxes);
    int tok = static_cast<int>(a.tokens.size());
    a.tokens.push_back("q" + std::to_string(tok));
    bool universal = nb - static_cast<int>(boxes.size()) >= 2 && rng.chance(p.universal_prob);
    if (universal) {
      NodeId restr = new_box(tok), body = new_box(tok);
      g.add(DrgEdge::scope(parent, restr));
      g.add(DrgEdge::scope(restr, body));
      g.add(DrgEdge::make_role(parent, restr, "NEGATION"));
      g.add(DrgEdge::make_role(restr, body, "NEGATION"));
      boxes.push_back(restr);
      boxes.push_back(body);
    } else {
      NodeId b = new_box(tok);
      g.add(DrgEdge::scope(parent, b));
      if (rng.chance(p.box_role_prob))
        g.add(DrgEdge::make_role(parent, b, rng.pick(p.box_roles)));
      boxes.push_back(b);
    }
  }

  std::vector<NodeId> syns;
  auto new_syn = [&](int tok, const NodeId& box) {
    NodeId id = NodeId::synset(next_syn++);
    std::string pos(1, "nvar"[rng.gen() % 4]);
    std::string sense = "0" + std::to_string(1 + static_cast<int>(rng.gen() % 3));
    g.add(DrgNode::make_synset(id, Synset{make_lemma(rng, p.lemma_pool), pos, sense}));
    g.add(DrgEdge::scope(box, id));
    a.node_token[id] = tok;
    syns.push_back(id);
    return id;
  };

  int np = rng.between(p.min_predicates, std::max(p.min_predicates, p.max_predicates));
  for (int i = 0; i < np; ++i) {
    int tok = static_cast<int>(a.tokens.size());
    a.tokens.push_back("t" + std::to_string(tok));
    NodeId box = rng.pick(boxes);
    NodeId s = new_syn(tok, box);

    if (static_cast<int>(syns.size()) >= 2 && rng.chance(p.role_prob)) {
      NodeId src = syns[rng.gen() % (syns.size() - 1)];
      g.add(DrgEdge::make_role(src, s, rng.pick(p.app_roles)));
      if (rng.chance(p.extra_role_prob) && syns.size() >= 3) {
        NodeId src2 = syns[rng.gen() % (syns.size() - 1)];
        if (!(src2 == src)) g.add(DrgEdge::make_role(src2, s, rng.pick(p.app_roles)));
      }
    } else if (!syns.empty() && syns.size() >= 2 && rng.chance(p.mod_role_prob)) {
      NodeId src = syns[rng.gen() % (syns.size() - 1)];
      g.add(DrgEdge::make_role(src, s, rng.pick(p.mod_roles)));
    }

    // A second predicate sharing the token, linked to the first so the token
    // fragment exports a single node.
    if (i + 1 < np && rng.chance(p.pair_token_prob)) {
      i++;
      NodeId box2 = rng.chance(p.cross_scope_prob) ? rng.pick(boxes) : box;
      NodeId s2 = new_syn(tok, box2);
      g.add(DrgEdge::make_role(s, s2, rng.pick(p.app_roles)));
    }

    if (rng.chance(p.constant_prob)) {
      NodeId c = NodeId::constant(next_const++);
      DrgNode node = DrgNode::constant(c, "v" + std::to_string(next_const - 1));
      g.add(node);
      g.add(DrgEdge::make_role(s, c, rng.pick(p.const_roles)));
    }
  }

  if (p.hub_fan > 0 && boxes.size() >= 2) {
    // Predicates living in one box while their role parents sit in another:
    // their scope edges survive compacting but not the connectivity sweep.
    NodeId hub = boxes[1 + rng.gen() % (boxes.size() - 1)];
    NodeId parent_box = boxes[0];
    int tok0 = static_cast<int>(a.tokens.size());
    a.tokens.push_back("t" + std::to_string(tok0));
    NodeId anchor = new_syn(tok0, parent_box);
    for (int k = 0; k < p.hub_fan; ++k) {
      int tok = static_cast<int>(a.tokens.size());
      a.tokens.push_back("t" + std::to_string(tok));
      NodeId s = new_syn(tok, hub);
      g.add(DrgEdge::make_role(anchor, s, rng.pick(p.app_roles)));
    }
  }

  if (rng.chance(p.coref_prob) && syns.size() >= 2) {
    size_t i = rng.gen() % (syns.size() - 1);
    size_t j = i + 1 + rng.gen() % (syns.size() - 1 - i);
    auto& ni = g.nodes.at(syns[i]);
    auto& nj = g.nodes.at(syns[j]);
    ni.synset.pos = "n";
    nj.synset = ni.synset;
    g.add(DrgEdge::ana(syns[j], syns[i]));
  }

  auto token_map = a.node_token;
  Renumbering renum = canonical_box_numbering(g, &token_map);
  Alignment a2;
  a2.tokens = a.tokens;
  for (const auto& [id, tok] : a.node_token) {
    auto it = renum.old_to_new.find(id);
    a2.node_token[it != renum.old_to_new.end() ? it->second : id] = tok;
  }

  auto violations = validate(renum.graph, ValidateMode::Full);
  for (const auto& v : violations)
    if (v.severity == Severity::Error)
      throw DrgError("generator produced an invalid graph: " + v.message);
  return {std::move(renum.graph), std::move(a2)};
}

Drg mutate(const Drg& g, std::uint64_t seed) {
  Rng rng(seed);
  Drg out = g;

  std::vector<NodeId> syns, targets;
  for (const auto& [id, n] : out.nodes) {
    if (n.kind == NodeKind::Synset) syns.push_back(id);
    if (n.kind != NodeKind::Constant) targets.push_back(id);
  }
  std::vector<size_t> role_edges;
  for (size_t i = 0; i < out.edges.size(); ++i)
    if (out.edges[i].kind == EdgeKind::Role) role_edges.push_back(i);

  int edits = rng.between(1, 3);
  for (int e = 0; e < edits; ++e) {
    switch (rng.gen() % 3) {
      case 0: {
        if (role_edges.empty()) break;
        auto& edge = out.edges[role_edges[rng.gen() % role_edges.size()]];
        static const std::vector<std::string> labels = {"Agent", "Theme", "Patient", "Manner",
                                                        "Attribute"};
        edge.role = labels[rng.gen() % labels.size()];
        break;
      }
      case 1: {
        if (syns.empty()) break;
        auto& n = out.nodes.at(syns[rng.gen() % syns.size()]);
        n.synset.sense = "0" + std::to_string(1 + static_cast<int>(rng.gen() % 3));
        break;
      }
      default: {
        if (role_edges.empty() || targets.size() < 2) break;
        auto& edge = out.edges[role_edges[rng.gen() % role_edges.size()]];
        if (!out.has_node(edge.target) || out.node(edge.target).kind == NodeKind::Constant) break;
        NodeId t = targets[rng.gen() % targets.size()];
        if (!(t == edge.source)) edge.target = t;
        break;
      }
    }
  }
  return out;
}

}  // namespace drgtk
