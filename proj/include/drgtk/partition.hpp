#pragma once

#include <map>
#include <vector>

#include "drgtk/alignment.hpp"
#include "drgtk/drg.hpp"
#include "drgtk/policy.hpp"
#include "drgtk/sgraph.hpp"

namespace drgtk {

// Splits g into one lexical graph per aligned token. Nodes keep their ids;
// an edge goes to its head-side fragment for APP labels and to its
// modifier-side fragment for MOD labels, with the off-fragment endpoint
// repeated as an unlabeled placeholder. Constants follow their first edge.
// Placeholders carry no source names here; a caller decorates them.
std::map<int, SGraph> partition(const Drg& g, const Alignment& a,
                                const EdgeAttachmentPolicy& p,
                                std::vector<std::string>* log = nullptr);

// Inverse of partition: overlays all fragments, letting labeled nodes win
// over placeholders. Used as the round-trip oracle for partition itself.
Drg glue(const std::map<int, SGraph>& fragments, const NodeId& root);

}  // namespace drgtk
