#pragma once

#include <map>
#include <optional>

#include "drgtk/drg.hpp"

namespace drgtk {

// Exact equality: same node ids and labels, same root, same edge multiset.
bool graph_equal(const Drg& a, const Drg& b);

// Label-preserving isomorphism that maps root to root.
std::optional<std::map<NodeId, NodeId>> find_isomorphism(const Drg& a, const Drg& b);
bool isomorphic(const Drg& a, const Drg& b);

}  // namespace drgtk
