#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace drgtk {

// Variable namespaces of a DRG: boxes, synsets, constants. The 'u' namespace
// holds unlabeled placeholder nodes inside lexical fragments; it never occurs
// in a finished DRG.
enum class Ns : char { Box = 'b', Synset = 's', Constant = 'c', Unlabeled = 'u' };

inline char ns_char(Ns ns) { return static_cast<char>(ns); }

// A DRG node identifier such as b0, s3 or c1.
struct NodeId {
  Ns ns = Ns::Box;
  int index = 0;

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;

  std::string str() const { return std::string(1, ns_char(ns)) + std::to_string(index); }

  static NodeId box(int i) { return {Ns::Box, i}; }
  static NodeId synset(int i) { return {Ns::Synset, i}; }
  static NodeId constant(int i) { return {Ns::Constant, i}; }
  static NodeId unlabeled(int i) { return {Ns::Unlabeled, i}; }

  // Parses "b12"; throws std::invalid_argument on anything else.
  static NodeId parse(const std::string& s) {
    if (s.size() < 2 || (s[0] != 'b' && s[0] != 's' && s[0] != 'c' && s[0] != 'u'))
      throw std::invalid_argument("not a node id: " + s);
    for (size_t i = 1; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("not a node id: " + s);
    return {static_cast<Ns>(s[0]), std::stoi(s.substr(1))};
  }
};

}  // namespace drgtk

template <>
struct std::hash<drgtk::NodeId> {
  size_t operator()(const drgtk::NodeId& id) const noexcept {
    return std::hash<int>()(id.index * 4 + static_cast<int>(static_cast<char>(id.ns)));
  }
};
