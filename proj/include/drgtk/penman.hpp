#pragma once

#include <string>
#include <vector>

#include "drgtk/drg.hpp"
#include "drgtk/sgraph.hpp"

namespace drgtk {

enum class PenmanVariant { Lenient, Strict };

struct PenmanDocument {
  std::string text;
  PenmanVariant variant = PenmanVariant::Strict;
};

class PenmanError : public DrgError {
 public:
  PenmanError(const std::string& what, int line, int col)
      : DrgError(what + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

class NotFullyScopedError : public DrgError {
 public:
  explicit NotFullyScopedError(const NodeId& id)
      : DrgError("node " + id.str() + " has no scope; cannot serialize strictly") {}
};

// Parses one graph in either variant; the flavor of each node is recognized
// from its concept, so mixed input is tolerated. `:member` becomes a Scope
// edge, `:ANA` an Ana edge, a `-of` suffix inverts the edge, quoted attribute
// values become constant nodes.
Drg parse_penman(const std::string& text);
inline Drg parse_penman(const PenmanDocument& doc) { return parse_penman(doc.text); }

// Splits a file into blank-line-separated blocks; '#' lines are comments.
std::vector<std::string> split_penman_blocks(const std::string& text);
std::vector<Drg> parse_penman_corpus(const std::string& text);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Strict output: synsets as lemma.pos.sense, constants inlined as quoted
// attribute values, variables renamed to document order. Requires every
// synset to be reachable from the root top-down, which holds for fully
// scoped graphs.
PenmanDocument serialize_strict(const Drg& g);

// Lenient output per the interchange format: quoted concepts, synset parts as
// :lemma/:pos/:sense attributes, constants as c-variables. Nodes that are not
// reachable top-down are emitted through inverted `-of` relations, so any
// weakly connected graph (e.g. a simplified one) serializes.
PenmanDocument serialize_lenient(const Drg& g);

PenmanDocument lenient_to_strict(const PenmanDocument& doc);

// Fragment notation used in AM dependency tree files: strict Penman where a
// variable may carry <src> annotations, the root is marked <root>, and
// unlabeled placeholder nodes are written as bare annotated variables in the
// `u` namespace, e.g. (b1<root> / box :member (u0<s>)).
SGraph parse_fragment(const std::string& text);
std::string serialize_fragment(const SGraph& g);

}  // namespace drgtk
