#include "drgtk/coref.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace drgtk {

Drg preprocess_coref(const Drg& g) {
  Drg out = g;
  for (const auto& e : out.edges) {
    if (e.kind != EdgeKind::Ana) continue;
    for (const auto& id : {e.source, e.target}) {
      if (!out.has_node(id)) continue;
      auto& n = out.nodes.at(id);
      if (n.kind == NodeKind::Synset) n.synset.pos = "p";
    }
  }
  out.edges.erase(std::remove_if(out.edges.begin(), out.edges.end(),
                                 [](const DrgEdge& e) { return e.kind == EdgeKind::Ana; }),
                  out.edges.end());
  return out;
}

Drg postprocess_coref(const Drg& g) {
  Drg out = g;
  std::map<std::pair<std::string, std::string>, std::vector<NodeId>> groups;
  for (auto& [id, n] : out.nodes) {
    if (n.kind != NodeKind::Synset || n.synset.pos != "p") continue;
    groups[{n.synset.lemma, n.synset.sense}].push_back(id);
    n.synset.pos = "n";
  }
  for (auto& [key, ids] : groups) {
    if (ids.size() < 2) continue;
    std::sort(ids.begin(), ids.end());
    for (size_t i = 1; i < ids.size(); ++i) out.add(DrgEdge::ana(ids[i], ids[0]));
  }
  return out;
}

}  // namespace drgtk
