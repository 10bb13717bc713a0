#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "drgtk/drg.hpp"

namespace drgtk {

// Triples of the evaluation format: one instance triple per variable, inlined
// constants as attributes, everything else as variable-to-variable relations.
// Scope edges appear as the member relation. Variable names are opaque.
struct TripleSet {
  std::map<std::string, std::string> instances;
  std::map<std::tuple<std::string, std::string, std::string>, int> attributes;
  std::map<std::tuple<std::string, std::string, std::string>, int> relations;

  int size() const;
};

TripleSet triples_from_drg(const Drg& g);

// Restriction used for scope scoring: member relations plus the instance
// triples of box variables.
TripleSet scope_restriction(const TripleSet& t);

struct SmatchResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int matched = 0;
  int pred_size = 0;
  int gold_size = 0;
  std::map<std::string, std::string> mapping;  // pred variable -> gold variable
};

// Best variable mapping found by steepest-ascent hill climbing from
// `restarts` random starts plus one concept-matching start. Deterministic
// given the seed.
SmatchResult smatch_score(const TripleSet& gold, const TripleSet& pred, int restarts = 16,
                          std::uint64_t seed = 0);
SmatchResult smatch_score(const Drg& gold, const Drg& pred, int restarts = 16,
                          std::uint64_t seed = 0);

// Exhaustive optimum over all injective variable mappings. Exponential; meant
// for small graphs where it certifies the hill-climbing answer.
SmatchResult smatch_exact(const TripleSet& gold, const TripleSet& pred);
SmatchResult smatch_exact(const Drg& gold, const Drg& pred);

// Scope-restricted score. By default reuses the full-graph mapping and only
// recounts the restricted triples; reoptimize searches the restriction alone.
SmatchResult scope_only_score(const Drg& gold, const Drg& pred, bool reoptimize = false,
                              int restarts = 16, std::uint64_t seed = 0);

struct ScoreOptions {
  int restarts = 16;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool scope_reoptimize = false;
};

struct PairScore {
  bool err = false;
  int matched = 0, pred_size = 0, gold_size = 0;
  int scope_matched = 0, scope_pred = 0, scope_gold = 0;
  int gold_boxes = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
};

struct BucketScore {
  int count = 0;
  long matched = 0, pred = 0, gold = 0;
  long scope_matched = 0, scope_pred = 0, scope_gold = 0;
};

struct CorpusReport {
  double precision = 0.0, recall = 0.0, f1 = 0.0;  // micro-averaged
  double scope_f1 = 0.0;
  double err_rate = 0.0;  // percent of predictions that fail to parse or validate
  int total = 0;
  int errors = 0;
  std::vector<PairScore> items;
  std::map<int, BucketScore> by_boxes;  // keys 1, 2, 3, 4 (4 collects >= 4)
};

// Scores line-aligned Penman corpora. Gold blocks must parse; a prediction
// that fails to parse or validate scores as the empty graph and counts
// toward err_rate.
CorpusReport score_blocks(const std::vector<std::string>& gold,
                          const std::vector<std::string>& pred, const ScoreOptions& opt = {});
CorpusReport score_corpus(const std::string& gold_path, const std::string& pred_path,
                          const ScoreOptions& opt = {});

}  // namespace drgtk
