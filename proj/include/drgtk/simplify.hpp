#pragma once

#include "drgtk/drg.hpp"

namespace drgtk {

// Compact form: drops the scope edge of every node whose role parents all sit
// in the same box as the node itself. Lossless under resolve_rule_based.
Drg to_compact(const Drg& g);

// Scopeless form: greedily drops scope edges (smallest box first, then target
// id) while the graph stays weakly connected. Box-to-box scope edges always
// survive, so the box tree is intact. Lossy in general.
Drg to_scopeless(const Drg& g);

}  // namespace drgtk
