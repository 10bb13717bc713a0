#pragma once

#include <map>
#include <string>
#include <vector>

#include "drgtk/sgraph.hpp"

namespace drgtk {

struct AmOp {
  enum class Kind { App, Mod };
  Kind kind = Kind::App;
  SourceName src;

  std::string str() const;  // APP_s, MOD_m1, ...
  static AmOp parse(const std::string& text);
  static AmOp app(SourceName s) { return {Kind::App, std::move(s)}; }
  static AmOp mod(SourceName s) { return {Kind::Mod, std::move(s)}; }
  friend bool operator==(const AmOp&, const AmOp&) = default;
};

struct AmEdge {
  int head = 0;
  int dep = 0;
  AmOp op;
  friend bool operator==(const AmEdge&, const AmEdge&) = default;
};

// Dependency tree over a token list. Only tokens carrying a lexical graph
// take part in the tree; the rest stay edge-free. Token 0 is START.
struct AmDependencyTree {
  std::vector<std::string> tokens;
  std::map<int, SGraph> constants;
  std::vector<AmEdge> edges;

  // Constant-bearing token without incoming edge; -1 when absent.
  int root() const;
  // Throws AmError unless edges form one tree over the constant-bearing
  // tokens and every other token is isolated.
  void check() const;
};

class EvaluationFailure : public AmError {
 public:
  AmEdge edge;
  EvaluationFailure(AmEdge e, const std::string& why);
};

// Bottom-up evaluation. Siblings fold APP first then MOD, each in token
// order; when that fails, other sibling orders are tried before giving up.
// The result carries no sources besides the root.
SGraph evaluate(const AmDependencyTree& t);

// JSONL: {"tokens": [...], "constants": {"4": "(s0<root> / want.v.01 ...)"},
//         "edges": [{"head": 4, "dep": 3, "op": "APP_s"}]}
AmDependencyTree am_tree_from_json_line(const std::string& line);
std::string am_tree_to_json_line(const AmDependencyTree& t);
std::vector<AmDependencyTree> read_am_tree_file(const std::string& path);
void write_am_tree_file(const std::string& path, const std::vector<AmDependencyTree>& list);

}  // namespace drgtk
