#include "drgtk/smatch.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <utility>

#include "drgtk/penman.hpp"
#include "drgtk/pipeline.hpp"

namespace drgtk {

int TripleSet::size() const {
  int n = static_cast<int>(instances.size());
  for (const auto& [k, c] : attributes) n += c;
  for (const auto& [k, c] : relations) n += c;
  return n;
}

TripleSet triples_from_drg(const Drg& g) {
  TripleSet t;
  for (const auto& [id, n] : g.nodes) {
    if (n.kind == NodeKind::Box)
      t.instances[id.str()] = "box";
    else if (n.kind == NodeKind::Synset)
      t.instances[id.str()] = n.synset.str();
  }
  for (const auto& e : g.edges) {
    if (!g.has_node(e.source) || !g.has_node(e.target)) continue;
    if (g.node(e.source).kind == NodeKind::Constant) continue;
    std::string label = e.label();
    if (g.node(e.target).kind == NodeKind::Constant)
      t.attributes[{e.source.str(), label, g.node(e.target).value}]++;
    else
      t.relations[{e.source.str(), label, e.target.str()}]++;
  }
  return t;
}

TripleSet scope_restriction(const TripleSet& t) {
  TripleSet s;
  for (const auto& [var, concept] : t.instances)
    if (concept == "box") s.instances[var] = concept;
  for (const auto& [key, c] : t.relations)
    if (std::get<1>(key) == "member") s.relations[key] = c;
  for (const auto& [key, c] : t.attributes)
    if (std::get<1>(key) == "member") s.attributes[key] = c;
  return s;
}

namespace {

void my_shuffle(std::vector<int>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

// Variable matching engine over one gold/pred triple pair. Variables are
// dense indices; a mapping is pred index -> gold index or -1.
struct Matcher {
  int P = 0, G = 0;
  std::vector<std::string> pv, gv;
  std::vector<int> pconcept, gconcept;  // interned, -1/-2 when absent

  struct Rec {  // non-instance pred triple
    int a = -1, key = -1, b = -1;  // b == -1: attribute (key interns rel+value)
  };
  std::vector<Rec> recs;
  std::vector<std::vector<int>> incident;  // pred var -> rec ids, deduped

  std::set<std::pair<int, int>> gattr;
  std::set<std::tuple<int, int, int>> grel;
  std::map<std::pair<int, int>, int> gattr_count;
  std::map<std::tuple<int, int, int>, int> grel_count;
  std::vector<std::pair<int, int>> pattr;           // (var, key)
  std::vector<std::tuple<int, int, int>> prel;      // (a, key, b)
  bool has_dups = false;

  std::map<std::string, int> pool;
  int intern(const std::string& s) {
    auto [it, ins] = pool.emplace(s, static_cast<int>(pool.size()));
    return it->second;
  }

  Matcher(const TripleSet& gold, const TripleSet& pred) {
    std::set<std::string> gvars, pvars;
    auto collect = [](const TripleSet& t, std::set<std::string>& vars) {
      for (const auto& [v, c] : t.instances) vars.insert(v);
      for (const auto& [k, c] : t.attributes) vars.insert(std::get<0>(k));
      for (const auto& [k, c] : t.relations) {
        vars.insert(std::get<0>(k));
        vars.insert(std::get<2>(k));
      }
    };
    collect(gold, gvars);
    collect(pred, pvars);
    gv.assign(gvars.begin(), gvars.end());
    pv.assign(pvars.begin(), pvars.end());
    P = static_cast<int>(pv.size());
    G = static_cast<int>(gv.size());

    std::map<std::string, int> gidx, pidx;
    for (int i = 0; i < G; ++i) gidx[gv[i]] = i;
    for (int i = 0; i < P; ++i) pidx[pv[i]] = i;

    pconcept.assign(P, -1);
    gconcept.assign(G, -2);
    for (const auto& [v, c] : pred.instances) pconcept[pidx[v]] = intern(c);
    for (const auto& [v, c] : gold.instances) gconcept[gidx[v]] = intern(c);

    for (const auto& [k, c] : gold.attributes) {
      int key = intern(std::get<1>(k) + "\x1f" + std::get<2>(k));
      std::pair<int, int> t{gidx[std::get<0>(k)], key};
      gattr.insert(t);
      gattr_count[t] += c;
      if (c > 1) has_dups = true;
    }
    for (const auto& [k, c] : gold.relations) {
      std::tuple<int, int, int> t{gidx[std::get<0>(k)], intern(std::get<1>(k)),
                                  gidx[std::get<2>(k)]};
      grel.insert(t);
      grel_count[t] += c;
      if (c > 1) has_dups = true;
    }

    incident.assign(P, {});
    for (const auto& [k, c] : pred.attributes) {
      if (c > 1) has_dups = true;
      int key = intern(std::get<1>(k) + "\x1f" + std::get<2>(k));
      int v = pidx[std::get<0>(k)];
      for (int rep = 0; rep < c; ++rep) {
        pattr.push_back({v, key});
        int id = static_cast<int>(recs.size());
        recs.push_back({v, key, -1});
        incident[v].push_back(id);
      }
    }
    for (const auto& [k, c] : pred.relations) {
      if (c > 1) has_dups = true;
      int a = pidx[std::get<0>(k)], b = pidx[std::get<2>(k)];
      int key = intern(std::get<1>(k));
      for (int rep = 0; rep < c; ++rep) {
        prel.push_back({a, key, b});
        int id = static_cast<int>(recs.size());
        recs.push_back({a, key, b});
        incident[a].push_back(id);
        if (b != a) incident[b].push_back(id);
      }
    }
  }

  // Duplicate-safe full count; the authority for reported scores.
  int score_full(const std::vector<int>& m) const {
    int s = 0;
    for (int i = 0; i < P; ++i)
      if (m[i] >= 0 && pconcept[i] >= 0 && pconcept[i] == gconcept[m[i]]) s++;
    auto attr = gattr_count;
    for (const auto& [v, key] : pattr) {
      if (m[v] < 0) continue;
      auto it = attr.find({m[v], key});
      if (it != attr.end() && it->second > 0) {
        it->second--;
        s++;
      }
    }
    auto rel = grel_count;
    for (const auto& [a, key, b] : prel) {
      if (m[a] < 0 || m[b] < 0) continue;
      auto it = rel.find({m[a], key, m[b]});
      if (it != rel.end() && it->second > 0) {
        it->second--;
        s++;
      }
    }
    return s;
  }

  bool rec_matches(const Rec& r, const std::vector<int>& m) const {
    if (r.b < 0) return m[r.a] >= 0 && gattr.count({m[r.a], r.key}) > 0;
    return m[r.a] >= 0 && m[r.b] >= 0 && grel.count({m[r.a], r.key, m[r.b]}) > 0;
  }

  int inst_match(int p, const std::vector<int>& m) const {
    return (m[p] >= 0 && pconcept[p] >= 0 && pconcept[p] == gconcept[m[p]]) ? 1 : 0;
  }

  // Exact when no key has multiplicity; the climb falls back to full
  // rescoring otherwise.
  int move_delta(std::vector<int>& m, int p, int g, int q) const {
    std::vector<int> ids = incident[p];
    if (q >= 0)
      for (int id : incident[q]) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    auto eval = [&]() {
      int s = inst_match(p, m) + (q >= 0 ? inst_match(q, m) : 0);
      for (int id : ids)
        if (rec_matches(recs[id], m)) s++;
      return s;
    };
    int old_p = m[p], before = eval();
    if (q >= 0) m[q] = old_p;
    m[p] = g;
    int after = eval();
    m[p] = old_p;
    if (q >= 0) m[q] = g;
    return after - before;
  }

  void improve(std::vector<int>& m) const {
    std::vector<int> used(G, -1);
    for (int i = 0; i < P; ++i)
      if (m[i] >= 0) used[m[i]] = i;
    int cur = has_dups ? score_full(m) : 0;
    while (true) {
      int best_delta = 0, bp = -1, bg = -2;
      for (int p = 0; p < P; ++p) {
        for (int g = -1; g < G; ++g) {
          if (g == m[p]) continue;
          int q = (g >= 0 && used[g] >= 0) ? used[g] : -1;
          int delta;
          if (has_dups) {
            int old_p = m[p];
            if (q >= 0) m[q] = old_p;
            m[p] = g;
            delta = score_full(m) - cur;
            m[p] = old_p;
            if (q >= 0) m[q] = g;
          } else {
            delta = move_delta(m, p, g, q);
          }
          if (delta > best_delta) {
            best_delta = delta;
            bp = p;
            bg = g;
          }
        }
      }
      if (best_delta <= 0) break;
      int q = (bg >= 0 && used[bg] >= 0) ? used[bg] : -1;
      int old_p = m[bp];
      if (q >= 0) m[q] = old_p;
      m[bp] = bg;
      if (old_p >= 0) used[old_p] = q;
      if (bg >= 0) used[bg] = bp;
      cur += best_delta;
    }
  }

  std::vector<int> smart_start() const {
    std::vector<int> m(P, -1);
    std::vector<char> used(G, 0);
    for (int p = 0; p < P; ++p)
      for (int g = 0; g < G; ++g)
        if (!used[g] && pconcept[p] >= 0 && pconcept[p] == gconcept[g]) {
          m[p] = g;
          used[g] = 1;
          break;
        }
    for (int p = 0; p < P; ++p) {
      if (m[p] >= 0) continue;
      for (int g = 0; g < G; ++g)
        if (!used[g]) {
          m[p] = g;
          used[g] = 1;
          break;
        }
    }
    return m;
  }

  std::vector<int> random_start(std::mt19937_64& rng) const {
    std::vector<int> slots(G);
    for (int g = 0; g < G; ++g) slots[g] = g;
    while (static_cast<int>(slots.size()) < P) slots.push_back(-1);
    my_shuffle(slots, rng);
    return {slots.begin(), slots.begin() + P};
  }

  std::pair<int, std::vector<int>> climb(int restarts, std::uint64_t seed) const {
    int best_score = -1;
    std::vector<int> best;
    auto consider = [&](std::vector<int> m) {
      improve(m);
      int s = score_full(m);
      if (s > best_score || (s == best_score && m < best)) {
        best_score = s;
        best = std::move(m);
      }
    };
    consider(smart_start());
    std::mt19937_64 rng(seed);
    for (int r = 0; r < restarts; ++r) consider(random_start(rng));
    return {best_score, best};
  }

  std::pair<int, std::vector<int>> exhaustive() const {
    int best_score = -1;
    std::vector<int> best, m(P, -1);
    std::vector<char> used(G, 0);
    auto rec = [&](auto&& self, int p) -> void {
      if (p == P) {
        int s = score_full(m);
        if (s > best_score || (s == best_score && m < best)) {
          best_score = s;
          best = m;
        }
        return;
      }
      m[p] = -1;
      self(self, p + 1);
      for (int g = 0; g < G; ++g) {
        if (used[g]) continue;
        used[g] = 1;
        m[p] = g;
        self(self, p + 1);
        m[p] = -1;
        used[g] = 0;
      }
    };
    rec(rec, 0);
    return {best_score, best};
  }

  SmatchResult finish(int matched, const std::vector<int>& m, int pred_size,
                      int gold_size) const {
    SmatchResult r;
    r.matched = matched;
    r.pred_size = pred_size;
    r.gold_size = gold_size;
    if (pred_size == 0 && gold_size == 0) {
      r.precision = r.recall = r.f1 = 1.0;
    } else {
      r.precision = pred_size ? static_cast<double>(matched) / pred_size : 0.0;
      r.recall = gold_size ? static_cast<double>(matched) / gold_size : 0.0;
      double s = r.precision + r.recall;
      r.f1 = s > 0 ? 2.0 * r.precision * r.recall / s : 0.0;
    }
    for (int i = 0; i < P && i < static_cast<int>(m.size()); ++i)
      if (m[i] >= 0) r.mapping[pv[i]] = gv[m[i]];
    return r;
  }
};

int recount_with_mapping(const TripleSet& gold, const TripleSet& pred,
                         const std::map<std::string, std::string>& mapping) {
  Matcher mt(gold, pred);
  std::map<std::string, int> gidx;
  for (int g = 0; g < mt.G; ++g) gidx[mt.gv[g]] = g;
  std::vector<int> m(mt.P, -1);
  for (int p = 0; p < mt.P; ++p) {
    auto it = mapping.find(mt.pv[p]);
    if (it == mapping.end()) continue;
    auto jt = gidx.find(it->second);
    if (jt != gidx.end()) m[p] = jt->second;
  }
  return mt.score_full(m);
}

}  // namespace

SmatchResult smatch_score(const TripleSet& gold, const TripleSet& pred, int restarts,
                          std::uint64_t seed) {
  Matcher mt(gold, pred);
  auto [matched, m] = mt.climb(restarts, seed);
  return mt.finish(matched, m, pred.size(), gold.size());
}

SmatchResult smatch_score(const Drg& gold, const Drg& pred, int restarts, std::uint64_t seed) {
  return smatch_score(triples_from_drg(gold), triples_from_drg(pred), restarts, seed);
}

SmatchResult smatch_exact(const TripleSet& gold, const TripleSet& pred) {
  Matcher mt(gold, pred);
  if (mt.P > 10 || mt.G > 10) throw DrgError("exact matching is exponential; 10 variables max");
  auto [matched, m] = mt.exhaustive();
  return mt.finish(matched, m, pred.size(), gold.size());
}

SmatchResult smatch_exact(const Drg& gold, const Drg& pred) {
  return smatch_exact(triples_from_drg(gold), triples_from_drg(pred));
}

SmatchResult scope_only_score(const Drg& gold, const Drg& pred, bool reoptimize, int restarts,
                              std::uint64_t seed) {
  TripleSet gt = triples_from_drg(gold), pt = triples_from_drg(pred);
  TripleSet gs = scope_restriction(gt), ps = scope_restriction(pt);
  if (reoptimize) return smatch_score(gs, ps, restarts, seed);
  auto full = smatch_score(gt, pt, restarts, seed);
  int matched = recount_with_mapping(gs, ps, full.mapping);
  Matcher mt(gs, ps);
  std::vector<int> empty(mt.P, -1);
  auto r = mt.finish(matched, empty, ps.size(), gs.size());
  r.mapping = full.mapping;
  return r;
}

CorpusReport score_blocks(const std::vector<std::string>& gold,
                          const std::vector<std::string>& pred, const ScoreOptions& opt) {
  if (gold.size() != pred.size())
    throw DrgError("gold has " + std::to_string(gold.size()) + " graphs but predictions have " +
                   std::to_string(pred.size()));
  CorpusReport rep;
  rep.total = static_cast<int>(gold.size());
  rep.items.resize(gold.size());

  parallel_for(gold.size(), opt.jobs, [&](std::size_t i) {
    Drg g;
    try {
      g = parse_penman(gold[i]);
    } catch (const std::exception& e) {
      throw DrgError("gold graph " + std::to_string(i + 1) + ": " + e.what());
    }
    PairScore& item = rep.items[i];
    for (const auto& [id, n] : g.nodes)
      if (n.kind == NodeKind::Box) item.gold_boxes++;

    Drg p;
    bool ok = true;
    try {
      p = parse_penman(pred[i]);
      ok = is_valid(p, ValidateMode::Full);
    } catch (const std::exception&) {
      ok = false;
    }
    item.err = !ok;

    TripleSet gt = triples_from_drg(g);
    TripleSet pt = ok ? triples_from_drg(p) : TripleSet{};
    auto r = smatch_score(gt, pt, opt.restarts, opt.seed);
    item.matched = r.matched;
    item.pred_size = r.pred_size;
    item.gold_size = r.gold_size;
    item.precision = r.precision;
    item.recall = r.recall;
    item.f1 = r.f1;

    TripleSet gs = scope_restriction(gt), ps = scope_restriction(pt);
    if (opt.scope_reoptimize) {
      auto sr = smatch_score(gs, ps, opt.restarts, opt.seed);
      item.scope_matched = sr.matched;
    } else {
      item.scope_matched = recount_with_mapping(gs, ps, r.mapping);
    }
    item.scope_pred = ps.size();
    item.scope_gold = gs.size();
  });

  long matched = 0, psize = 0, gsize = 0, sm = 0, sp = 0, sg = 0;
  for (const auto& item : rep.items) {
    if (item.err) rep.errors++;
    matched += item.matched;
    psize += item.pred_size;
    gsize += item.gold_size;
    sm += item.scope_matched;
    sp += item.scope_pred;
    sg += item.scope_gold;
    int key = item.gold_boxes >= 4 ? 4 : item.gold_boxes;
    auto& b = rep.by_boxes[key];
    b.count++;
    b.matched += item.matched;
    b.pred += item.pred_size;
    b.gold += item.gold_size;
    b.scope_matched += item.scope_matched;
    b.scope_pred += item.scope_pred;
    b.scope_gold += item.scope_gold;
  }
  auto f1_of = [](long m, long p, long g) {
    if (p == 0 && g == 0) return 1.0;
    double prec = p ? static_cast<double>(m) / p : 0.0;
    double rec = g ? static_cast<double>(m) / g : 0.0;
    double s = prec + rec;
    return s > 0 ? 2.0 * prec * rec / s : 0.0;
  };
  rep.precision = psize ? static_cast<double>(matched) / psize : (gsize ? 0.0 : 1.0);
  rep.recall = gsize ? static_cast<double>(matched) / gsize : (psize ? 0.0 : 1.0);
  double s = rep.precision + rep.recall;
  rep.f1 = s > 0 ? 2.0 * rep.precision * rep.recall / s : 0.0;
  rep.scope_f1 = f1_of(sm, sp, sg);
  rep.err_rate = rep.total ? 100.0 * rep.errors / rep.total : 0.0;
  return rep;
}

CorpusReport score_corpus(const std::string& gold_path, const std::string& pred_path,
                          const ScoreOptions& opt) {
  auto gold = split_penman_blocks(read_text_file(gold_path));
  auto pred = split_penman_blocks(read_text_file(pred_path));
  return score_blocks(gold, pred, opt);
}

}  // namespace drgtk
