#include "drgtk/scope.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

namespace drgtk {

std::string ScopeLabel::str() const {
  switch (kind) {
    case Kind::Root: return "root";
    case Kind::NoScope: return "no_scope";
    case Kind::Scope: {
      std::string out = "scope";
      for (int b : boxes) out += "_b" + std::to_string(b);
      return out;
    }
  }
  return "no_scope";
}

ScopeLabel ScopeLabel::parse(const std::string& text) {
  if (text == "root") return root();
  if (text == "no_scope") return no_scope();
  if (text.rfind("scope_", 0) == 0) {
    std::vector<int> boxes;
    std::string rest = text.substr(6);
    std::istringstream ss(rest);
    std::string part;
    while (std::getline(ss, part, '_')) {
      if (part.size() < 2 || part[0] != 'b') throw DrgError("bad scope label " + text);
      boxes.push_back(std::stoi(part.substr(1)));
    }
    if (boxes.empty()) throw DrgError("bad scope label " + text);
    return scope(std::move(boxes));
  }
  throw DrgError("bad scope label " + text);
}

std::vector<NodeId> fragment_positions(const Drg& g, const std::vector<NodeId>& aligned) {
  std::vector<NodeId> synsets;
  for (const auto& id : aligned)
    if (g.has_node(id) && g.node(id).kind == NodeKind::Synset) synsets.push_back(id);
  std::sort(synsets.begin(), synsets.end());

  std::set<NodeId> in_set(synsets.begin(), synsets.end());
  std::map<NodeId, int> indegree;
  for (const auto& id : synsets) indegree[id] = 0;
  for (const auto& e : g.edges)
    if (e.kind == EdgeKind::Role && in_set.count(e.source) && in_set.count(e.target) &&
        !(e.source == e.target))
      indegree[e.target]++;

  std::vector<NodeId> order;
  std::set<NodeId> done;
  while (order.size() < synsets.size()) {
    NodeId pick{};
    bool found = false;
    for (const auto& id : synsets) {
      if (done.count(id)) continue;
      if (indegree[id] == 0) {
        pick = id;
        found = true;
        break;
      }
    }
    if (!found) {
      for (const auto& id : synsets)
        if (!done.count(id)) {
          pick = id;
          break;
        }
    }
    done.insert(pick);
    order.push_back(pick);
    for (const auto& e : g.edges)
      if (e.kind == EdgeKind::Role && e.source == pick && in_set.count(e.target) &&
          !done.count(e.target))
        indegree[e.target]--;
  }
  return order;
}

ScopeDepGraph project(const Drg& g, const Alignment& a, std::vector<std::string>* log) {
  if (!canonically_numbered(g)) throw NonCanonicalNumberingError();
  check_alignment(g, a);

  ScopeDepGraph out;
  out.tokens = a.tokens;
  out.edges.push_back({0, 0, ScopeLabel::root()});

  auto by_token = a.nodes_by_token();
  for (int t = 1; t < static_cast<int>(a.tokens.size()); ++t) {
    std::vector<NodeId> aligned;
    auto it = by_token.find(t);
    if (it != by_token.end()) aligned = it->second;

    bool has_box = false, has_synset = false;
    for (const auto& id : aligned) {
      if (!g.has_node(id)) continue;
      if (g.node(id).kind == NodeKind::Box) has_box = true;
      if (g.node(id).kind == NodeKind::Synset) has_synset = true;
    }

    if (!has_synset) {
      if (!has_box) out.edges.push_back({0, t, ScopeLabel::no_scope()});
      continue;
    }

    auto positions = fragment_positions(g, aligned);
    // One scope box per slot; heads group consecutive slots they scope.
    std::map<int, std::vector<int>> per_head;
    for (const auto& id : positions) {
      auto boxes = g.scope_parents(id);
      if (boxes.empty()) throw DrgError("node " + id.str() + " has no scope; project needs a fully scoped graph");
      NodeId box = *boxes.begin();
      if (boxes.size() > 1 && log)
        log->push_back("node " + id.str() + " sits in several boxes; using " + box.str());
      int head = a.token_of(box);
      if (head < 0) throw MissingAlignmentError(box);
      per_head[head].push_back(box.index);
    }
    for (const auto& [head, nums] : per_head)
      out.edges.push_back({head, t, ScopeLabel::scope(nums)});
    if (per_head.size() > 1 && log)
      log->push_back("token " + std::to_string(t) + " receives scope from several heads");
  }
  return out;
}

namespace {

// Smallest scope box of a node, if any.
std::optional<NodeId> min_scope(const Drg& g, const NodeId& n) {
  auto boxes = g.scope_parents(n);
  if (boxes.empty()) return std::nullopt;
  return *boxes.begin();
}

std::vector<NodeId> unscoped_synsets(const Drg& g) {
  std::vector<NodeId> out;
  for (const auto& [id, n] : g.nodes)
    if (n.kind == NodeKind::Synset && g.scope_parents(id).empty()) out.push_back(id);
  return out;
}

// Inheritance engine shared by both resolvers: role parents first, then role
// children, then any scoped weak neighbor, until every synset has a box.
void inherit_scope(Drg& g) {
  while (true) {
    auto todo = unscoped_synsets(g);
    if (todo.empty()) return;

    bool progress = false;

    // Parents. One round reads the state at its start, so chains settle over
    // several rounds deterministically.
    std::vector<DrgEdge> additions;
    for (const auto& n : todo) {
      std::optional<std::pair<NodeId, NodeId>> best;  // (box, parent)
      for (const auto& p : g.role_parents(n)) {
        std::optional<NodeId> box;
        if (g.is_box(p))
          box = p;
        else if (g.has_node(p))
          box = min_scope(g, p);
        if (!box) continue;
        auto key = std::make_pair(*box, p);
        if (!best || key < *best) best = key;
      }
      if (best) {
        additions.push_back(DrgEdge::scope(best->first, n));
        progress = true;
      }
    }
    for (auto& e : additions) g.add(std::move(e));
    if (progress) continue;

    // Children: a parentless node joins the box its argument lives in; a box
    // argument contributes the box above it.
    for (const auto& n : todo) {
      std::optional<std::pair<NodeId, NodeId>> best;
      for (const auto& e : g.edges) {
        if (e.kind != EdgeKind::Role || !(e.source == n) || !g.has_node(e.target)) continue;
        const auto& child = g.node(e.target);
        std::optional<NodeId> box;
        if (child.kind == NodeKind::Box) {
          auto up = g.box_parent(e.target);
          box = up ? *up : e.target;
        } else if (child.kind == NodeKind::Synset) {
          box = min_scope(g, e.target);
        }
        if (!box) continue;
        auto key = std::make_pair(*box, e.target);
        if (!best || key < *best) best = key;
      }
      if (best) {
        g.add(DrgEdge::scope(best->first, n));
        progress = true;
        break;
      }
    }
    if (progress) continue;

    // Neighbors: anything adjacent, including through a shared constant.
    for (const auto& n : todo) {
      std::optional<std::pair<NodeId, NodeId>> best;
      auto consider = [&](const NodeId& m) {
        if (!g.has_node(m)) return;
        const auto& node = g.node(m);
        std::optional<NodeId> box;
        if (node.kind == NodeKind::Box) {
          box = m;
        } else if (node.kind == NodeKind::Synset) {
          box = min_scope(g, m);
        } else {
          // Constant: borrow from its other parents.
          for (const auto& q : g.role_parents(m)) {
            if (q == n) continue;
            auto qb = g.is_box(q) ? std::optional<NodeId>(q) : min_scope(g, q);
            if (qb) {
              auto key = std::make_pair(*qb, q);
              if (!best || key < *best) best = key;
            }
          }
          return;
        }
        if (box) {
          auto key = std::make_pair(*box, m);
          if (!best || key < *best) best = key;
        }
      };
      for (const auto& e : g.edges) {
        if (e.source == n) consider(e.target);
        if (e.target == n && e.kind != EdgeKind::Scope) consider(e.source);
      }
      if (best) {
        g.add(DrgEdge::scope(best->first, n));
        progress = true;
        break;
      }
    }
    if (!progress) throw UnresolvableError(todo.front());
  }
}

}  // namespace

Drg resolve_rule_based(const Drg& g) {
  Drg out = g;
  inherit_scope(out);
  return out;
}

Drg resolve_with_dependencies(const Drg& g, const ScopeDepGraph& d, const Alignment& a,
                              std::vector<std::string>* log) {
  Drg out = g;
  auto note = [&](const std::string& msg) {
    if (log) log->push_back(msg);
  };

  auto by_token = a.nodes_by_token();
  auto boxes_of_token = [&](int tok) {
    std::vector<NodeId> boxes;
    auto it = by_token.find(tok);
    if (it == by_token.end()) return boxes;
    for (const auto& id : it->second)
      if (out.has_node(id) && out.node(id).kind == NodeKind::Box) boxes.push_back(id);
    return boxes;
  };

  auto deps = d.edges;
  std::stable_sort(deps.begin(), deps.end(), [](const ScopeDep& x, const ScopeDep& y) {
    return std::make_pair(x.dep, x.head) < std::make_pair(y.dep, y.head);
  });

  std::map<int, size_t> cursor;  // per dependent token, next label slot
  std::map<int, std::vector<NodeId>> positions;
  for (const auto& e : deps) {
    if (e.label.kind != ScopeLabel::Kind::Scope) continue;
    if (e.dep <= 0 || e.dep >= static_cast<int>(d.tokens.size())) {
      note("dependency edge targets token " + std::to_string(e.dep) + " outside the sentence");
      continue;
    }
    if (!positions.count(e.dep)) {
      std::vector<NodeId> aligned;
      auto it = by_token.find(e.dep);
      if (it != by_token.end()) aligned = it->second;
      positions[e.dep] = fragment_positions(out, aligned);
    }
    const auto& slots = positions[e.dep];
    auto head_boxes = boxes_of_token(e.head);
    for (int num : e.label.boxes) {
      size_t k = cursor[e.dep]++;
      if (k >= slots.size()) {
        note("label on token " + std::to_string(e.dep) + " has more boxes than fragment nodes");
        break;
      }
      const NodeId& node = slots[k];
      if (!out.scope_parents(node).empty()) continue;  // graph wins over prediction
      NodeId head_box{};
      bool found = false;
      for (const auto& b : head_boxes)
        if (b.index == num) {
          head_box = b;
          found = true;
          break;
        }
      if (!found) {
        note("box b" + std::to_string(num) + " is not in the fragment of token " +
             std::to_string(e.head) + "; edge skipped");
        continue;
      }
      out.add(DrgEdge::scope(head_box, node));
    }
  }

  inherit_scope(out);
  return out;
}

// ---------------------------------------------------------------------------
// File format

std::string scope_dep_to_text(const ScopeDepGraph& d) {
  std::ostringstream out;
  for (int t = 0; t < static_cast<int>(d.tokens.size()); ++t) {
    bool any = false;
    for (const auto& e : d.edges) {
      if (e.dep != t) continue;
      out << t << "\t" << d.tokens[t] << "\t" << e.head << "\t" << e.label.str() << "\n";
      any = true;
    }
    if (!any) out << t << "\t" << d.tokens[t] << "\t_\t_\n";
  }
  return out.str();
}

void write_scope_dep_file(const std::string& path, const std::vector<ScopeDepGraph>& list) {
  std::ofstream out(path);
  if (!out) throw DrgError("cannot open " + path + " for writing");
  bool first = true;
  for (const auto& d : list) {
    if (!first) out << "\n";
    first = false;
    out << scope_dep_to_text(d);
  }
}

std::vector<ScopeDepGraph> read_scope_dep_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DrgError("cannot open " + path);
  std::vector<ScopeDepGraph> out;
  ScopeDepGraph cur;
  bool open = false;
  std::string line;
  int lineno = 0;

  auto flush = [&]() {
    if (open) out.push_back(cur);
    cur = {};
    open = false;
  };

  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    std::istringstream ss(line);
    std::string idx_s, token, head_s, label_s;
    if (!(ss >> idx_s >> token >> head_s >> label_s))
      throw FileFormatError("expected: index token head label", lineno);
    int idx;
    try {
      idx = std::stoi(idx_s);
    } catch (const std::exception&) {
      throw FileFormatError("bad token index " + idx_s, lineno);
    }
    open = true;
    if (idx == static_cast<int>(cur.tokens.size())) {
      cur.tokens.push_back(token);
    } else if (idx < static_cast<int>(cur.tokens.size())) {
      if (cur.tokens[idx] != token)
        throw FileFormatError("token mismatch on repeated index " + idx_s, lineno);
    } else {
      throw FileFormatError("token index " + idx_s + " skips ahead", lineno);
    }
    if (head_s == "_" && label_s == "_") continue;
    int head;
    try {
      head = std::stoi(head_s);
    } catch (const std::exception&) {
      throw FileFormatError("bad head index " + head_s, lineno);
    }
    ScopeLabel label;
    try {
      label = ScopeLabel::parse(label_s);
    } catch (const DrgError& e) {
      throw FileFormatError(e.what(), lineno);
    }
    cur.edges.push_back({head, idx, label});
  }
  flush();
  return out;
}

}  // namespace drgtk
