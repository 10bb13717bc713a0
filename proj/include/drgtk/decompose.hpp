#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drgtk/amtree.hpp"
#include "drgtk/partition.hpp"

namespace drgtk {

struct DecomposeResult {
  enum class Status { Ok, NotDecomposable, BudgetExhausted };
  Status status = Status::NotDecomposable;
  std::optional<AmDependencyTree> tree;
  std::string reason;             // set on failure
  std::vector<std::string> log;   // partition warnings etc.
  long steps = 0;                 // search steps consumed

  bool ok() const { return status == Status::Ok; }
};

// Searches for a dependency tree over the lexical fragments whose evaluation
// is isomorphic to g. Exhaustive over tree shapes and operation kinds within
// the step budget; source names are assigned by coloring the boundary nodes
// from the shared inventory.
DecomposeResult find_am_tree(const Drg& g, const Alignment& a, const EdgeAttachmentPolicy& p,
                             long budget = 100000);

enum class PrepMode { NoPrep, Cpt, Scpl };

struct InstanceOutcome {
  DecomposeResult::Status status;
  std::string reason;
};

struct RateReport {
  int total = 0;
  int decomposable = 0;
  int budget_exhausted = 0;
  double rate = 0.0;  // fraction in [0, 1]
  std::vector<InstanceOutcome> items;
  std::map<std::string, int> reasons;  // failure taxonomy
};

// Coreference preprocessing plus the chosen simplification, then one search
// per instance.
RateReport decomposability_rate(const std::vector<std::pair<Drg, Alignment>>& corpus,
                                const EdgeAttachmentPolicy& p, PrepMode mode,
                                long budget = 100000, int jobs = 1);

}  // namespace drgtk
