#pragma once

#include "drgtk/drg.hpp"

namespace drgtk {

// Rewrites coreference into recoverable node tags: every node touching an Ana
// edge gets pos p, then the Ana edges are dropped. Leaves other graphs alone.
Drg preprocess_coref(const Drg& g);

// Restores coreference from p tags: p-nodes sharing (lemma, sense) become a
// chain, each larger node pointing at the smallest via Ana; every p turns into n.
// A lone p-node just turns back into n.
Drg postprocess_coref(const Drg& g);

}  // namespace drgtk
