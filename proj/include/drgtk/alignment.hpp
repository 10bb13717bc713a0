#pragma once

#include <map>
#include <string>
#include <vector>

#include "drgtk/drg.hpp"

namespace drgtk {

class FileFormatError : public DrgError {
 public:
  FileFormatError(const std::string& what, int line)
      : DrgError(what + " (line " + std::to_string(line) + ")"), line(line) {}
  int line;
};

// Node-to-token alignment for one sentence. Token 0 is the synthetic START
// token; the top box aligns to it. Total over non-constant nodes.
struct Alignment {
  std::vector<std::string> tokens;  // tokens[0] == "START"
  std::map<NodeId, int> node_token;

  int token_of(const NodeId& id) const {
    auto it = node_token.find(id);
    return it == node_token.end() ? -1 : it->second;
  }
  // Node ids aligned to each token, in id order.
  std::map<int, std::vector<NodeId>> nodes_by_token() const;
};

class MissingAlignmentError : public DrgError {
 public:
  explicit MissingAlignmentError(const NodeId& id)
      : DrgError("node " + id.str() + " has no aligned token") {}
};

// Raises MissingAlignmentError unless every non-constant node of g is aligned
// to a token index within range.
void check_alignment(const Drg& g, const Alignment& a);

// JSON lines, one object per sentence:
//   {"tokens": ["START", ...], "alignment": {"b1": 0, "s1": 2, ...}}
std::vector<Alignment> read_alignment_file(const std::string& path);
void write_alignment_file(const std::string& path, const std::vector<Alignment>& list);
Alignment alignment_from_json_line(const std::string& line, int lineno);
std::string alignment_to_json_line(const Alignment& a);

}  // namespace drgtk
