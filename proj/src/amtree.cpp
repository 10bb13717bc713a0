#include "drgtk/amtree.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "drgtk/penman.hpp"
#include "json.hpp"

namespace drgtk {

std::string AmOp::str() const {
  return (kind == Kind::App ? "APP_" : "MOD_") + src;
}

AmOp AmOp::parse(const std::string& text) {
  auto sep = text.find('_');
  if (sep == std::string::npos || sep + 1 >= text.size())
    throw AmError("bad operation " + text + "; expected APP_<src> or MOD_<src>");
  std::string head = text.substr(0, sep);
  std::transform(head.begin(), head.end(), head.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (head == "APP") return app(text.substr(sep + 1));
  if (head == "MOD") return mod(text.substr(sep + 1));
  throw AmError("bad operation " + text + "; expected APP_<src> or MOD_<src>");
}

namespace {
std::string describe(const AmEdge& e) {
  return std::to_string(e.head) + "->" + std::to_string(e.dep) + " (" + e.op.str() + ")";
}
}  // namespace

EvaluationFailure::EvaluationFailure(AmEdge e, const std::string& why)
    : AmError("edge " + describe(e) + ": " + why), edge(std::move(e)) {}

int AmDependencyTree::root() const {
  std::set<int> has_incoming;
  for (const auto& e : edges) has_incoming.insert(e.dep);
  for (const auto& [tok, g] : constants)
    if (!has_incoming.count(tok)) return tok;
  return -1;
}

void AmDependencyTree::check() const {
  int n = static_cast<int>(tokens.size());
  for (const auto& [tok, g] : constants)
    if (tok < 0 || tok >= n) throw AmError("constant on token " + std::to_string(tok) + " outside the sentence");
  std::set<int> seen_dep;
  for (const auto& e : edges) {
    if (e.head < 0 || e.head >= n || e.dep < 0 || e.dep >= n)
      throw AmError("edge " + describe(e) + " outside the sentence");
    if (e.head == e.dep) throw AmError("edge " + describe(e) + " is a self loop");
    if (!constants.count(e.head) || !constants.count(e.dep))
      throw AmError("edge " + describe(e) + " touches a token without a lexical graph");
    if (!seen_dep.insert(e.dep).second)
      throw AmError("token " + std::to_string(e.dep) + " has two incoming edges");
  }
  int roots = 0;
  for (const auto& [tok, g] : constants)
    if (!seen_dep.count(tok)) roots++;
  if (constants.empty()) throw AmError("tree has no lexical graphs");
  if (roots != 1)
    throw AmError("tree must have exactly one root, found " + std::to_string(roots));
  // Parent chains must reach the root; a cycle never does.
  std::map<int, int> parent;
  for (const auto& e : edges) parent[e.dep] = e.head;
  for (const auto& [tok, g] : constants) {
    std::set<int> path;
    int cur = tok;
    while (parent.count(cur)) {
      if (!path.insert(cur).second) throw AmError("edges contain a cycle");
      cur = parent[cur];
    }
  }
}

namespace {

// Default fold order: APP before MOD, token order inside each group.
std::pair<int, int> edge_key(const AmEdge& e) {
  return {e.op.kind == AmOp::Kind::App ? 0 : 1, e.dep};
}

struct Evaluator {
  const AmDependencyTree& t;
  std::map<int, std::vector<AmEdge>> children;
  std::vector<int> branch_nodes;  // nodes with >= 2 children, token order
  std::map<int, std::vector<AmEdge>> chosen;
  int attempts_left = 5000;
  std::optional<EvaluationFailure> first_failure;
  const AmEdge* last_folded = nullptr;

  explicit Evaluator(const AmDependencyTree& tree) : t(tree) {
    for (const auto& e : t.edges) children[e.head].push_back(e);
    for (auto& [tok, list] : children) {
      std::sort(list.begin(), list.end(),
                [](const AmEdge& a, const AmEdge& b) { return edge_key(a) < edge_key(b); });
      if (list.size() >= 2) branch_nodes.push_back(tok);
    }
    std::sort(branch_nodes.begin(), branch_nodes.end());
  }

  SGraph eval_node(int v) {
    SGraph g = t.constants.at(v);
    auto it = children.find(v);
    if (it == children.end()) return g;
    const auto& order = chosen.count(v) ? chosen.at(v) : it->second;
    for (const auto& e : order) {
      SGraph c = eval_node(e.dep);
      last_folded = &e;
      try {
        g = e.op.kind == AmOp::Kind::App ? apply(g, c, e.op.src) : modify(g, c, e.op.src);
      } catch (const AmError& err) {
        throw EvaluationFailure(e, err.what());
      }
    }
    return g;
  }

  bool attempt(SGraph& out) {
    attempts_left--;
    last_folded = nullptr;
    try {
      SGraph r = eval_node(t.root());
      r.to_drg();  // completeness check only
      out = std::move(r);
      return true;
    } catch (const EvaluationFailure& f) {
      if (!first_failure) first_failure = f;
      return false;
    } catch (const AmError& err) {
      if (!first_failure) {
        AmEdge blame = last_folded ? *last_folded
                                   : AmEdge{t.root(), t.root(), AmOp::app("s")};
        first_failure = EvaluationFailure(blame, err.what());
      }
      return false;
    }
  }

  bool search(std::size_t idx, SGraph& out) {
    if (attempts_left <= 0) return false;
    if (idx == branch_nodes.size()) return attempt(out);
    int node = branch_nodes[idx];
    std::vector<AmEdge> perm = children.at(node);
    do {
      chosen[node] = perm;
      if (search(idx + 1, out)) return true;
      if (attempts_left <= 0) return false;
    } while (std::next_permutation(perm.begin(), perm.end(), [](const AmEdge& a, const AmEdge& b) {
      return edge_key(a) < edge_key(b);
    }));
    chosen.erase(node);
    return false;
  }
};

}  // namespace

SGraph evaluate(const AmDependencyTree& t) {
  t.check();
  if (t.edges.empty()) {
    SGraph g = t.constants.at(t.root());
    g.to_drg();  // completeness check only
    return g;
  }
  Evaluator ev(t);
  SGraph out;
  if (ev.search(0, out)) return out;
  if (ev.first_failure) throw *ev.first_failure;
  throw AmError("sibling order search budget exhausted");
}

// ---------------------------------------------------------------------------
// JSONL

AmDependencyTree am_tree_from_json_line(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  AmDependencyTree t;
  for (const auto& tok : j.at("tokens")) t.tokens.push_back(tok.get<std::string>());
  if (j.contains("constants"))
    for (const auto& [key, val] : j.at("constants").items())
      t.constants[std::stoi(key)] = parse_fragment(val.get<std::string>());
  if (j.contains("edges"))
    for (const auto& e : j.at("edges"))
      t.edges.push_back({e.at("head").get<int>(), e.at("dep").get<int>(),
                         AmOp::parse(e.at("op").get<std::string>())});
  return t;
}

std::string am_tree_to_json_line(const AmDependencyTree& t) {
  nlohmann::json j;
  j["tokens"] = t.tokens;
  nlohmann::json consts = nlohmann::json::object();
  for (const auto& [tok, g] : t.constants) consts[std::to_string(tok)] = serialize_fragment(g);
  j["constants"] = consts;
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : t.edges)
    edges.push_back({{"head", e.head}, {"dep", e.dep}, {"op", e.op.str()}});
  j["edges"] = edges;
  return j.dump();
}

std::vector<AmDependencyTree> read_am_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DrgError("cannot open " + path);
  std::vector<AmDependencyTree> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    try {
      out.push_back(am_tree_from_json_line(line));
    } catch (const nlohmann::json::exception& e) {
      throw FileFormatError(e.what(), lineno);
    } catch (const DrgError& e) {
      throw FileFormatError(e.what(), lineno);
    }
  }
  return out;
}

void write_am_tree_file(const std::string& path, const std::vector<AmDependencyTree>& list) {
  std::ofstream out(path);
  if (!out) throw DrgError("cannot open " + path + " for writing");
  for (const auto& t : list) out << am_tree_to_json_line(t) << "\n";
}

}  // namespace drgtk
