#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "drgtk/coref.hpp"
#include "drgtk/decompose.hpp"
#include "drgtk/gensuite.hpp"
#include "drgtk/penman.hpp"
#include "drgtk/pipeline.hpp"
#include "drgtk/scope.hpp"
#include "drgtk/simplify.hpp"
#include "drgtk/smatch.hpp"
#include "json.hpp"

namespace {

using namespace drgtk;

std::string serialize_as(const Drg& g, const std::string& variant) {
  return variant == "strict" ? serialize_strict(g) : serialize_lenient(g);
}

void write_blocks(const std::string& path, const std::vector<std::string>& blocks) {
  std::ostringstream out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out << "\n";
    out << blocks[i];
    if (blocks[i].empty() || blocks[i].back() != '\n') out << "\n";
  }
  write_text_file(path, out.str());
}

std::vector<Alignment> read_alignments(const std::string& path) { return read_alignment_file(path); }

int run_convert(const std::string& in, const std::string& out, const std::string& to, int jobs) {
  auto blocks = split_penman_blocks(read_text_file(in));
  auto converted = map_blocks(blocks, jobs, [&](const std::string& b, std::size_t) {
    return serialize_as(parse_penman(b), to);
  });
  write_blocks(out, converted);
  return 0;
}

int run_simplify(const std::string& in, const std::string& out, const std::string& mode,
                 bool coref, int jobs) {
  auto blocks = split_penman_blocks(read_text_file(in));
  auto converted = map_blocks(blocks, jobs, [&](const std::string& b, std::size_t) {
    Drg g = parse_penman(b);
    if (coref) g = preprocess_coref(g);
    g = mode == "cpt" ? to_compact(g) : to_scopeless(g);
    return serialize_lenient(g);
  });
  write_blocks(out, converted);
  return 0;
}

int run_project(const std::string& graphs, const std::string& aligns, const std::string& out,
                int jobs) {
  auto blocks = split_penman_blocks(read_text_file(graphs));
  auto alignments = read_alignments(aligns);
  if (blocks.size() != alignments.size())
    throw DrgError("graph count " + std::to_string(blocks.size()) +
                   " does not match alignment count " + std::to_string(alignments.size()));
  std::vector<ScopeDepGraph> deps(blocks.size());
  parallel_for(blocks.size(), jobs, [&](std::size_t i) {
    try {
      deps[i] = project(parse_penman(blocks[i]), alignments[i]);
    } catch (const std::exception& e) {
      throw DrgError("graph " + std::to_string(i + 1) + ": " + e.what());
    }
  });
  write_scope_dep_file(out, deps);
  return 0;
}

int run_resolve(const std::string& in, const std::string& out, const std::string& resolver,
                const std::string& deps_path, const std::string& align_path,
                const std::string& to, int jobs) {
  auto blocks = split_penman_blocks(read_text_file(in));
  std::vector<ScopeDepGraph> deps;
  std::vector<Alignment> alignments;
  if (resolver == "dep") {
    deps = read_scope_dep_file(deps_path);
    alignments = read_alignments(align_path);
    if (deps.size() != blocks.size() || alignments.size() != blocks.size())
      throw DrgError("graphs, dependencies, and alignments must have matching counts");
  }
  auto converted = map_blocks(blocks, jobs, [&](const std::string& b, std::size_t i) {
    Drg g = parse_penman(b);
    Drg resolved = resolver == "dep" ? resolve_with_dependencies(g, deps[i], alignments[i])
                                     : resolve_rule_based(g);
    resolved = postprocess_coref(resolved);
    return serialize_as(resolved, to);
  });
  write_blocks(out, converted);
  return 0;
}

int run_stats(const std::string& graphs, const std::string& aligns, const std::string& policy_path,
              const std::string& member, const std::string& mode, long budget, int jobs,
              bool as_json) {
  auto blocks = split_penman_blocks(read_text_file(graphs));
  auto alignments = read_alignments(aligns);
  if (blocks.size() != alignments.size())
    throw DrgError("graph count does not match alignment count");
  std::vector<std::pair<Drg, Alignment>> corpus;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    try {
      corpus.push_back({parse_penman(blocks[i]), alignments[i]});
    } catch (const std::exception& e) {
      throw DrgError("graph " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  EdgeAttachmentPolicy policy = policy_path.empty()
                                    ? default_policy(member == "mod" ? MemberMode::Mod
                                                                     : MemberMode::App)
                                    : load_policy(policy_path);
  PrepMode prep = mode == "noprep" ? PrepMode::NoPrep
                                   : (mode == "cpt" ? PrepMode::Cpt : PrepMode::Scpl);
  RateReport rep = decomposability_rate(corpus, policy, prep, budget, jobs);

  if (as_json) {
    nlohmann::json j;
    j["total"] = rep.total;
    j["decomposable"] = rep.decomposable;
    j["budget_exhausted"] = rep.budget_exhausted;
    j["rate"] = rep.rate;
    j["reasons"] = rep.reasons;
    nlohmann::json items = nlohmann::json::array();
    for (const auto& item : rep.items)
      items.push_back({{"ok", item.status == DecomposeResult::Status::Ok},
                       {"reason", item.reason}});
    j["items"] = items;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::printf("decomposable  %d/%d  (%.1f%%)\n", rep.decomposable, rep.total, 100.0 * rep.rate);
  if (rep.budget_exhausted) std::printf("budget hit    %d\n", rep.budget_exhausted);
  for (const auto& [reason, count] : rep.reasons)
    std::printf("%6d  %s\n", count, reason.c_str());
  return 0;
}

int run_score(const std::string& gold, const std::string& pred, bool scope_only, bool by_boxes,
              int restarts, std::uint64_t seed, int jobs, bool as_json) {
  ScoreOptions opt;
  opt.restarts = restarts;
  opt.seed = seed;
  opt.jobs = jobs;
  CorpusReport rep = score_corpus(gold, pred, opt);

  auto f1_of = [](long m, long p, long g) {
    if (p == 0 && g == 0) return 1.0;
    double prec = p ? static_cast<double>(m) / p : 0.0;
    double rec = g ? static_cast<double>(m) / g : 0.0;
    double s = prec + rec;
    return s > 0 ? 2.0 * prec * rec / s : 0.0;
  };

  if (as_json) {
    nlohmann::json j;
    j["precision"] = rep.precision;
    j["recall"] = rep.recall;
    j["f1"] = rep.f1;
    j["scope_f1"] = rep.scope_f1;
    j["err_rate"] = rep.err_rate;
    j["total"] = rep.total;
    j["errors"] = rep.errors;
    if (by_boxes) {
      nlohmann::json buckets = nlohmann::json::object();
      for (const auto& [k, b] : rep.by_boxes) {
        std::string key = k >= 4 ? "#>=4" : "#" + std::to_string(k);
        buckets[key] = {{"count", b.count},
                        {"f1", f1_of(b.matched, b.pred, b.gold)},
                        {"scope_f1", f1_of(b.scope_matched, b.scope_pred, b.scope_gold)}};
      }
      j["by_boxes"] = buckets;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (scope_only) {
    std::printf("scope F1  %.3f\n", rep.scope_f1);
  } else {
    std::printf("P %.3f  R %.3f  F1 %.3f\n", rep.precision, rep.recall, rep.f1);
    std::printf("scope F1  %.3f\n", rep.scope_f1);
  }
  std::printf("Err  %.1f%%  (%d of %d)\n", rep.err_rate, rep.errors, rep.total);
  if (by_boxes) {
    for (const auto& [k, b] : rep.by_boxes) {
      std::string key = k >= 4 ? "#>=4" : "#" + std::to_string(k);
      std::printf("%-5s count %-6d F1 %.3f  scope %.3f\n", key.c_str(), b.count,
                  f1_of(b.matched, b.pred, b.gold),
                  f1_of(b.scope_matched, b.scope_pred, b.scope_gold));
    }
  }
  return 0;
}

int run_gen(const std::string& out_graphs, const std::string& out_align, int count,
            std::uint64_t seed, const GenParams& params, const std::string& to) {
  std::vector<std::string> blocks;
  std::vector<Alignment> aligns;
  for (int i = 0; i < count; ++i) {
    auto [g, a] = generate(seed + static_cast<std::uint64_t>(i), params);
    blocks.push_back(serialize_as(g, to));
    aligns.push_back(a);
  }
  write_blocks(out_graphs, blocks);
  write_alignment_file(out_align, aligns);
  return 0;
}

int run_eval_trees(const std::string& in, const std::string& out, const std::string& to,
                   int jobs) {
  auto trees = read_am_tree_file(in);
  std::vector<std::string> blocks(trees.size());
  parallel_for(trees.size(), jobs, [&](std::size_t i) {
    try {
      blocks[i] = serialize_as(evaluate(trees[i]).to_drg(), to);
    } catch (const std::exception& e) {
      throw DrgError("tree " + std::to_string(i + 1) + ": " + e.what());
    }
  });
  write_blocks(out, blocks);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DRG toolkit: conversion, simplification, scope, decomposition, scoring"};
  app.require_subcommand(1);

  int jobs = 1;
  std::uint64_t seed = 0;
  app.add_option("--jobs", jobs, "worker threads for corpus commands")->capture_default_str();
  app.add_option("--seed", seed, "seed for all randomized steps")->capture_default_str();

  auto* convert = app.add_subcommand("convert", "rewrite Penman blocks between formats");
  std::string c_from = "auto", c_to = "strict", c_in, c_out;
  convert->add_option("--from", c_from, "input format (auto-detected)")
      ->check(CLI::IsMember({"auto", "lenient", "strict"}));
  convert->add_option("--to", c_to, "output format")
      ->check(CLI::IsMember({"lenient", "strict"}))
      ->capture_default_str();
  convert->add_option("input", c_in, "Penman file")->required();
  convert->add_option("output", c_out, "output file")->required();

  auto* simplify = app.add_subcommand("simplify", "drop redundant scope edges");
  std::string s_mode, s_in, s_out;
  bool s_coref = false;
  simplify->add_option("--mode", s_mode, "cpt (compact) or scpl (scopeless)")
      ->check(CLI::IsMember({"cpt", "scpl"}))
      ->required();
  simplify->add_flag("--coref", s_coref, "rewrite coreference into node tags first");
  simplify->add_option("input", s_in)->required();
  simplify->add_option("output", s_out)->required();

  auto* project_cmd = app.add_subcommand("project-scope", "graphs to token-level scope files");
  std::string p_graphs, p_aligns, p_out;
  project_cmd->add_option("graphs", p_graphs, "Penman file")->required();
  project_cmd->add_option("alignments", p_aligns, "alignment JSONL")->required();
  project_cmd->add_option("output", p_out, "scope dependency file")->required();

  auto* resolve = app.add_subcommand("resolve", "restore full scope on simplified graphs");
  std::string r_resolver = "rule", r_deps, r_align, r_in, r_out, r_to = "strict";
  resolve->add_option("--resolver", r_resolver, "rule or dep")
      ->check(CLI::IsMember({"rule", "dep"}))
      ->capture_default_str();
  resolve->add_option("--deps", r_deps, "scope dependency file (dep resolver)");
  resolve->add_option("--align", r_align, "alignment JSONL (dep resolver)");
  resolve->add_option("--to", r_to, "output format")
      ->check(CLI::IsMember({"lenient", "strict"}))
      ->capture_default_str();
  resolve->add_option("input", r_in)->required();
  resolve->add_option("output", r_out)->required();

  auto* stats = app.add_subcommand("stats", "decomposability of a corpus");
  std::string t_graphs, t_aligns, t_policy, t_member = "app", t_mode = "noprep";
  long t_budget = 100000;
  bool t_json = false;
  stats->add_option("--policy", t_policy, "edge attachment policy file");
  stats->add_option("--member", t_member, "member edge side when no policy file is given")
      ->check(CLI::IsMember({"app", "mod"}))
      ->capture_default_str();
  stats->add_option("--mode", t_mode, "preprocessing before the search")
      ->check(CLI::IsMember({"noprep", "cpt", "scpl"}))
      ->capture_default_str();
  stats->add_option("--budget", t_budget, "search steps per graph")->capture_default_str();
  stats->add_flag("--json", t_json, "machine-readable report");
  stats->add_option("graphs", t_graphs)->required();
  stats->add_option("alignments", t_aligns)->required();

  auto* score = app.add_subcommand("score", "match predictions against gold graphs");
  std::string sc_gold, sc_pred;
  bool sc_scope = false, sc_boxes = false, sc_json = false;
  int sc_restarts = 16;
  score->add_flag("--scope-only", sc_scope, "report the scope-restricted score");
  score->add_flag("--by-boxes", sc_boxes, "break scores down by gold box count");
  score->add_flag("--json", sc_json, "machine-readable report");
  score->add_option("--restarts", sc_restarts, "random restarts per pair")->capture_default_str();
  score->add_option("gold", sc_gold)->required();
  score->add_option("pred", sc_pred)->required();

  auto* gen = app.add_subcommand("gen", "write a random well-formed corpus");
  std::string g_graphs, g_aligns, g_to = "lenient";
  int g_count = 100;
  GenParams g_params;
  gen->add_option("--count", g_count, "number of graphs")->capture_default_str();
  gen->add_option("--max-boxes", g_params.max_boxes)->capture_default_str();
  gen->add_option("--max-predicates", g_params.max_predicates)->capture_default_str();
  gen->add_option("--coref-prob", g_params.coref_prob)->capture_default_str();
  gen->add_option("--constant-prob", g_params.constant_prob)->capture_default_str();
  gen->add_option("--hub-fan", g_params.hub_fan)->capture_default_str();
  gen->add_option("--to", g_to, "output format")
      ->check(CLI::IsMember({"lenient", "strict"}))
      ->capture_default_str();
  gen->add_option("graphs", g_graphs, "output Penman file")->required();
  gen->add_option("alignments", g_aligns, "output alignment JSONL")->required();

  auto* eval_trees = app.add_subcommand("eval-trees", "evaluate dependency trees to graphs");
  std::string e_in, e_out, e_to = "lenient";
  eval_trees->add_option("--to", e_to, "output format")
      ->check(CLI::IsMember({"lenient", "strict"}))
      ->capture_default_str();
  eval_trees->add_option("input", e_in, "tree JSONL")->required();
  eval_trees->add_option("output", e_out, "output Penman file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (convert->parsed()) return run_convert(c_in, c_out, c_to, jobs);
    if (simplify->parsed()) return run_simplify(s_in, s_out, s_mode, s_coref, jobs);
    if (project_cmd->parsed()) return run_project(p_graphs, p_aligns, p_out, jobs);
    if (resolve->parsed()) {
      if (r_resolver == "dep" && (r_deps.empty() || r_align.empty())) {
        std::cerr << "resolve: --resolver dep needs --deps and --align\n";
        return 1;
      }
      return run_resolve(r_in, r_out, r_resolver, r_deps, r_align, r_to, jobs);
    }
    if (stats->parsed())
      return run_stats(t_graphs, t_aligns, t_policy, t_member, t_mode, t_budget, jobs, t_json);
    if (score->parsed())
      return run_score(sc_gold, sc_pred, sc_scope, sc_boxes, sc_restarts, seed, jobs, sc_json);
    if (gen->parsed()) return run_gen(g_graphs, g_aligns, g_count, seed, g_params, g_to);
    if (eval_trees->parsed()) return run_eval_trees(e_in, e_out, e_to, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
