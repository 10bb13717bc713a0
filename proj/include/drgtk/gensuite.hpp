#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "drgtk/alignment.hpp"
#include "drgtk/drg.hpp"

namespace drgtk {

// Knobs for the random graph generator. Desk-scale bounds: boxes up to 6,
// predicates up to 12.
struct GenParams {
  int min_boxes = 1;
  int max_boxes = 3;
  int min_predicates = 1;
  int max_predicates = 6;
  std::vector<std::string> app_roles = {"Agent", "Theme", "Patient", "Experiencer", "Stimulus"};
  std::vector<std::string> mod_roles = {"Manner", "Attribute", "Location"};
  std::vector<std::string> box_roles = {"NEGATION", "POSSIBILITY", "CONDITION"};
  std::vector<std::string> const_roles = {"Name", "Quantity", "Time"};
  double universal_prob = 0.4;   // nested negation pair on one token
  double box_role_prob = 0.8;    // role edge next to a box scope edge
  double pair_token_prob = 0.2;  // second predicate on the same token
  double cross_scope_prob = 0.3; // second predicate scoped by a different box
  double role_prob = 0.75;       // predicate gets a role parent
  double extra_role_prob = 0.25; // additional role edge
  double mod_role_prob = 0.3;    // modifier edge
  double constant_prob = 0.2;
  double coref_prob = 0.0;
  int lemma_pool = 8;
  int hub_fan = 0;  // when > 0, adds a box of this many cross-box-parented predicates
};

// Deterministic per seed: a fully scoped, validator-clean, canonically
// numbered graph with a total alignment over synthetic tokens.
std::pair<Drg, Alignment> generate(std::uint64_t seed, const GenParams& p = {});

// Small random edits (role relabels, sense changes, edge retargets) for
// building imperfect predictions. Node set is preserved.
Drg mutate(const Drg& g, std::uint64_t seed);

}  // namespace drgtk
