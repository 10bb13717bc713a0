#include "drgtk/penman.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>
#include <tuple>
#include <utility>

namespace drgtk {

namespace {

// ---------------------------------------------------------------------------
// Tokenizer

enum class Tok { LParen, RParen, Slash, Label, Atom, Str, End };

struct Token {
  Tok kind;
  std::string text;  // label without ':', string without quotes
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = text_[pos_];
    if (c == '(') {
      advance();
      t.kind = Tok::LParen;
      return t;
    }
    if (c == ')') {
      advance();
      t.kind = Tok::RParen;
      return t;
    }
    if (c == '/') {
      advance();
      t.kind = Tok::Slash;
      return t;
    }
    if (c == '"') {
      advance();
      std::string s;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
        s.push_back(text_[pos_]);
        advance();
      }
      if (pos_ >= text_.size()) throw PenmanError("unterminated string", t.line, t.col);
      advance();  // closing quote
      t.kind = Tok::Str;
      t.text = s;
      return t;
    }
    if (c == ':') {
      advance();
      t.kind = Tok::Label;
      t.text = read_atom();
      if (t.text.empty()) throw PenmanError("empty relation label", t.line, t.col);
      return t;
    }
    t.kind = Tok::Atom;
    t.text = read_atom();
    if (t.text.empty()) throw PenmanError(std::string("unexpected character '") + c + "'", t.line, t.col);
    return t;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  void advance() {
    if (text_[pos_] == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    pos_++;
  }
  std::string read_atom() {
    std::string s;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '/' ||
          c == ':' || c == '"')
        break;
      s.push_back(c);
      advance();
    }
    return s;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Generic parse tree

struct PNode;

struct PTarget {
  enum Kind { Child, Ref, Quoted } kind;
  std::unique_ptr<PNode> child;
  std::string text;  // Ref: raw variable (annotations stripped); Quoted: value
  int line = 0, col = 0;
};

struct PRel {
  std::string label;
  PTarget target;
};

struct PNode {
  std::string var;                       // bare variable name
  std::vector<std::string> annotations;  // root, s, o2, ...
  bool has_concept = false;
  bool concept_quoted = false;
  std::string concept;
  std::vector<PRel> rels;
  int line = 0, col = 0;
};

// Splits "b1<root><m1>" into the variable and its annotation list.
std::pair<std::string, std::vector<std::string>> split_annotations(const std::string& raw, int line,
                                                                   int col) {
  auto lt = raw.find('<');
  if (lt == std::string::npos) return {raw, {}};
  std::string var = raw.substr(0, lt);
  std::vector<std::string> anns;
  size_t i = lt;
  while (i < raw.size()) {
    if (raw[i] != '<') throw PenmanError("malformed source annotation in " + raw, line, col);
    auto gt = raw.find('>', i);
    if (gt == std::string::npos) throw PenmanError("malformed source annotation in " + raw, line, col);
    anns.push_back(raw.substr(i + 1, gt - i - 1));
    i = gt + 1;
  }
  return {var, anns};
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { shift(); }

  std::unique_ptr<PNode> parse_document() {
    auto node = parse_node();
    if (cur_.kind != Tok::End)
      throw PenmanError("trailing content after the graph", cur_.line, cur_.col);
    return node;
  }

 private:
  void shift() { cur_ = lex_.next(); }

  std::unique_ptr<PNode> parse_node() {
    expect(Tok::LParen, "expected '('");
    auto node = std::make_unique<PNode>();
    node->line = cur_.line;
    node->col = cur_.col;
    if (cur_.kind != Tok::Atom) throw PenmanError("expected a variable", cur_.line, cur_.col);
    auto [var, anns] = split_annotations(cur_.text, cur_.line, cur_.col);
    node->var = var;
    node->annotations = anns;
    shift();
    if (cur_.kind == Tok::Slash) {
      shift();
      if (cur_.kind == Tok::Atom) {
        node->has_concept = true;
        node->concept = cur_.text;
        shift();
      } else if (cur_.kind == Tok::Str) {
        node->has_concept = true;
        node->concept_quoted = true;
        node->concept = cur_.text;
        shift();
      } else {
        throw PenmanError("expected a concept after '/'", cur_.line, cur_.col);
      }
    }
    while (cur_.kind == Tok::Label) {
      PRel rel;
      rel.label = cur_.text;
      int lline = cur_.line, lcol = cur_.col;
      shift();
      if (cur_.kind == Tok::LParen) {
        rel.target.kind = PTarget::Child;
        rel.target.child = parse_node();
      } else if (cur_.kind == Tok::Atom) {
        auto [rvar, ranns] = split_annotations(cur_.text, cur_.line, cur_.col);
        (void)ranns;
        rel.target.kind = PTarget::Ref;
        rel.target.text = rvar;
        rel.target.line = cur_.line;
        rel.target.col = cur_.col;
        shift();
      } else if (cur_.kind == Tok::Str) {
        rel.target.kind = PTarget::Quoted;
        rel.target.text = cur_.text;
        rel.target.line = cur_.line;
        rel.target.col = cur_.col;
        shift();
      } else {
        throw PenmanError("expected a target after :" + rel.label, lline, lcol);
      }
      node->rels.push_back(std::move(rel));
    }
    expect(Tok::RParen, "expected ')'");
    return node;
  }

  void expect(Tok kind, const std::string& msg) {
    if (cur_.kind != kind) throw PenmanError(msg, cur_.line, cur_.col);
    shift();
  }

  Lexer lex_;
  Token cur_;
};

// ---------------------------------------------------------------------------
// Interpretation

bool is_synset_concept(const std::string& s, Synset* out) {
  // lemma.pos.sense with pos one of n v a r p and a numeric sense.
  auto last = s.rfind('.');
  if (last == std::string::npos || last + 1 >= s.size()) return false;
  auto mid = s.rfind('.', last - 1);
  if (mid == std::string::npos || mid == 0) return false;
  std::string lemma = s.substr(0, mid);
  std::string pos = s.substr(mid + 1, last - mid - 1);
  std::string sense = s.substr(last + 1);
  if (pos.size() != 1 || std::string("nvarp").find(pos[0]) == std::string::npos) return false;
  if (sense.empty()) return false;
  for (char c : sense)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  if (out) *out = Synset{lemma, pos[0], sense};
  return true;
}

NodeId parse_var(const std::string& v, int line, int col) {
  try {
    return NodeId::parse(v);
  } catch (const std::invalid_argument&) {
    throw PenmanError("unsupported variable name " + v, line, col);
  }
}

struct Interp {
  Drg g;
  SGraph sg;
  bool as_fragment = false;
  bool root_seen = false;
  std::set<NodeId> defined;
  int next_const = 0;

  void collect_vars(const PNode& n) {
    NodeId id = parse_var(n.var, n.line, n.col);
    if (!defined.insert(id).second)
      throw PenmanError("variable " + n.var + " defined twice", n.line, n.col);
    if (id.ns == Ns::Constant) next_const = std::max(next_const, id.index + 1);
    for (const auto& rel : n.rels)
      if (rel.target.kind == PTarget::Child) collect_vars(*rel.target.child);
  }

  NodeId fresh_constant() { return NodeId::constant(next_const++); }

  void add_node(NodeId id, bool labeled, DrgNode label) {
    if (as_fragment) {
      if (labeled)
        sg.add(SNode::from(std::move(label)));
      else
        sg.add(SNode::placeholder(id));
    } else {
      if (!labeled) throw DrgError("placeholder outside a fragment");
      g.add(std::move(label));
    }
  }

  void add_edge(DrgEdge e) {
    if (as_fragment)
      sg.add(std::move(e));
    else
      g.add(std::move(e));
  }

  DrgEdge make_edge(const std::string& raw_label, NodeId from, NodeId to, int line, int col) {
    std::string label = raw_label;
    bool inverse = false;
    if (label.size() > 3 && label.substr(label.size() - 3) == "-of") {
      inverse = true;
      label = label.substr(0, label.size() - 3);
    }
    NodeId s = inverse ? to : from;
    NodeId t = inverse ? from : to;
    if (label == "member") return DrgEdge::scope(s, t);
    if (label == "ANA") return DrgEdge::ana(s, t);
    if (label.empty()) throw PenmanError("empty relation label", line, col);
    return DrgEdge::make_role(s, t, label);
  }

  void build(const PNode& n) {
    NodeId id = parse_var(n.var, n.line, n.col);

    // In the lenient format a synset node keeps its parts in :lemma/:pos/
    // :sense attribute relations; everywhere else every relation is an edge.
    const bool lenient_synset = n.has_concept && n.concept == "synset" && id.ns != Ns::Constant;
    std::string lemma, pos, sense;
    bool saw_lemma = false, saw_pos = false, saw_sense = false;
    std::vector<const PRel*> edge_rels;
    for (const auto& rel : n.rels) {
      const bool attr = lenient_synset &&
                        (rel.target.kind == PTarget::Quoted || rel.target.kind == PTarget::Ref);
      if (attr && rel.label == "lemma") {
        lemma = rel.target.text;
        saw_lemma = true;
      } else if (attr && rel.label == "pos") {
        pos = rel.target.text;
        saw_pos = true;
      } else if (attr && rel.label == "sense") {
        sense = rel.target.text;
        saw_sense = true;
      } else {
        edge_rels.push_back(&rel);
      }
    }

    if (!n.has_concept) {
      if (!as_fragment)
        throw PenmanError("node " + n.var + " has no concept", n.line, n.col);
      add_node(id, false, {});
    } else if (n.concept_quoted && id.ns == Ns::Constant) {
      add_node(id, true, DrgNode::constant(id, n.concept));
    } else if (n.concept == "box") {
      add_node(id, true, DrgNode::box(id));
    } else if (lenient_synset) {
      if (!saw_lemma || !saw_pos || !saw_sense)
        throw PenmanError("synset " + n.var + " lacks :lemma/:pos/:sense", n.line, n.col);
      if (pos.size() != 1)
        throw PenmanError("bad :pos value \"" + pos + "\" on " + n.var, n.line, n.col);
      add_node(id, true, DrgNode::make_synset(id, Synset{lemma, pos[0], sense}));
    } else {
      Synset syn;
      if (!n.concept_quoted && is_synset_concept(n.concept, &syn)) {
        add_node(id, true, DrgNode::make_synset(id, syn));
      } else if (n.concept_quoted) {
        add_node(id, true, DrgNode::constant(id, n.concept));
      } else {
        throw PenmanError("unrecognized concept " + n.concept + " on " + n.var, n.line, n.col);
      }
    }

    if (as_fragment) {
      for (const auto& ann : n.annotations) {
        if (ann == "root") {
          if (root_seen) throw PenmanError("two nodes marked <root>", n.line, n.col);
          root_seen = true;
          sg.root = id;
        } else {
          auto it = sg.sources.find(ann);
          if (it != sg.sources.end())
            throw PenmanError("source " + ann + " marks two nodes", n.line, n.col);
          sg.sources[ann] = id;
        }
      }
    } else if (!n.annotations.empty()) {
      throw PenmanError("source annotations are only valid in fragments", n.line, n.col);
    }

    for (const auto* relp : edge_rels) {
      const auto& rel = *relp;
      switch (rel.target.kind) {
        case PTarget::Child: {
          NodeId child = parse_var(rel.target.child->var, rel.target.child->line,
                                   rel.target.child->col);
          add_edge(make_edge(rel.label, id, child, rel.target.child->line, rel.target.child->col));
          build(*rel.target.child);
          break;
        }
        case PTarget::Ref: {
          NodeId ref = parse_var(rel.target.text, rel.target.line, rel.target.col);
          if (!defined.count(ref))
            throw PenmanError("undefined variable " + rel.target.text, rel.target.line,
                              rel.target.col);
          add_edge(make_edge(rel.label, id, ref, rel.target.line, rel.target.col));
          break;
        }
        case PTarget::Quoted: {
          NodeId cid = fresh_constant();
          add_node(cid, true, DrgNode::constant(cid, rel.target.text));
          add_edge(make_edge(rel.label, id, cid, rel.target.line, rel.target.col));
          break;
        }
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Serialization helpers

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Renames variables to document order per namespace: b0, b1, ..., s0, ...
class VarNamer {
 public:
  std::string name(const NodeId& id) {
    auto it = names_.find(id);
    if (it != names_.end()) return it->second;
    char ns = ns_char(id.ns);
    std::string fresh = std::string(1, ns) + std::to_string(counter_[ns]++);
    names_[id] = fresh;
    return fresh;
  }
  bool known(const NodeId& id) const { return names_.count(id) != 0; }

 private:
  std::map<NodeId, std::string> names_;
  std::map<char, int> counter_;
};

struct StrictWriter {
  const Drg& g;
  VarNamer namer;
  std::set<NodeId> visited;
  std::ostringstream out;

  void write(const NodeId& id, int depth) {
    visited.insert(id);
    const DrgNode& n = g.node(id);
    out << "(" << namer.name(id) << " / ";
    if (n.kind == NodeKind::Box)
      out << "box";
    else
      out << n.synset.str();

    auto rels = g.out_edges(id);
    std::stable_sort(rels.begin(), rels.end(), [](const DrgEdge& a, const DrgEdge& b) {
      return std::make_pair(a.label(), a.target) < std::make_pair(b.label(), b.target);
    });
    for (const auto& e : rels) {
      out << "\n" << std::string(2 * (depth + 1), ' ') << ":" << e.label() << " ";
      const DrgNode& t = g.node(e.target);
      if (t.kind == NodeKind::Constant) {
        out << quote(t.value);
      } else if (visited.count(e.target)) {
        out << namer.name(e.target);
      } else {
        write(e.target, depth + 1);
      }
    }
    out << ")";
  }
};

// Orientation-aware edge listing shared by the traversing serializers: all
// edges incident to a node, forward ones first, each ordered by label and
// far endpoint.
struct Incidence {
  size_t edge_index;
  bool forward;
  std::string label;  // includes -of for inverted edges
  NodeId far;
};

std::vector<Incidence> incident_edges(const Drg& g, const NodeId& id) {
  std::vector<Incidence> out;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.source == id) out.push_back({i, true, e.label(), e.target});
    else if (e.target == id) out.push_back({i, false, e.label() + "-of", e.source});
  }
  std::stable_sort(out.begin(), out.end(), [](const Incidence& a, const Incidence& b) {
    return std::make_tuple(!a.forward, a.label, a.far) < std::make_tuple(!b.forward, b.label, b.far);
  });
  return out;
}

struct LenientWriter {
  const Drg& g;
  VarNamer namer;
  std::set<NodeId> visited;
  std::set<size_t> emitted;
  std::ostringstream out;

  void write(const NodeId& id, int depth) {
    visited.insert(id);
    const DrgNode& n = g.node(id);
    const std::string ind = std::string(2 * (depth + 1), ' ');
    out << "(" << namer.name(id) << " / ";
    switch (n.kind) {
      case NodeKind::Box: out << quote("box"); break;
      case NodeKind::Constant: out << quote(n.value); break;
      case NodeKind::Synset:
        out << quote("synset");
        out << "\n" << ind << ":lemma " << quote(n.synset.lemma);
        out << "\n" << ind << ":pos " << quote(std::string(1, n.synset.pos));
        out << "\n" << ind << ":sense " << quote(n.synset.sense);
        break;
    }
    for (const auto& inc : incident_edges(g, id)) {
      if (emitted.count(inc.edge_index)) continue;
      emitted.insert(inc.edge_index);
      out << "\n" << ind << ":" << inc.label << " ";
      if (visited.count(inc.far)) {
        out << namer.name(inc.far);
      } else {
        write(inc.far, depth + 1);
      }
    }
    out << ")";
  }
};

struct FragmentWriter {
  const SGraph& g;
  std::set<NodeId> visited;
  std::set<size_t> emitted;
  std::ostringstream out;

  std::vector<Incidence> incident(const NodeId& id) const {
    std::vector<Incidence> res;
    for (size_t i = 0; i < g.edges.size(); ++i) {
      const auto& e = g.edges[i];
      if (e.source == id) res.push_back({i, true, e.label(), e.target});
      else if (e.target == id) res.push_back({i, false, e.label() + "-of", e.source});
    }
    std::stable_sort(res.begin(), res.end(), [](const Incidence& a, const Incidence& b) {
      return std::make_tuple(!a.forward, a.label, a.far) < std::make_tuple(!b.forward, b.label, b.far);
    });
    return res;
  }

  void write(const NodeId& id) {
    visited.insert(id);
    const SNode& n = g.nodes.at(id);
    out << "(" << id.str();
    if (id == g.root) out << "<root>";
    for (const auto& name : g.names_of(id)) out << "<" << name << ">";
    if (n.labeled) {
      out << " / ";
      switch (n.label.kind) {
        case NodeKind::Box: out << "box"; break;
        case NodeKind::Synset: out << n.label.synset.str(); break;
        case NodeKind::Constant: out << quote(n.label.value); break;
      }
    }
    for (const auto& inc : incident(id)) {
      if (emitted.count(inc.edge_index)) continue;
      emitted.insert(inc.edge_index);
      out << " :" << inc.label << " ";
      if (visited.count(inc.far)) {
        out << inc.far.str();  // annotations live on the defining occurrence only
      } else {
        write(inc.far);
      }
    }
    out << ")";
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Public entry points

Drg parse_penman(const std::string& text) {
  Parser parser(text);
  auto tree = parser.parse_document();
  Interp in;
  in.collect_vars(*tree);
  in.build(*tree);
  in.g.root = parse_var(tree->var, tree->line, tree->col);
  return std::move(in.g);
}

SGraph parse_fragment(const std::string& text) {
  Parser parser(text);
  auto tree = parser.parse_document();
  Interp in;
  in.as_fragment = true;
  in.collect_vars(*tree);
  in.build(*tree);
  if (!in.root_seen) in.sg.root = parse_var(tree->var, tree->line, tree->col);
  return std::move(in.sg);
}

std::vector<std::string> split_penman_blocks(const std::string& text) {
  std::vector<std::string> blocks;
  std::istringstream in(text);
  std::string line, cur;
  auto flush = [&]() {
    if (cur.find_first_not_of(" \t\r\n") != std::string::npos) blocks.push_back(cur);
    cur.clear();
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      flush();
    } else {
      cur += line;
      cur += "\n";
    }
  }
  flush();
  return blocks;
}

std::vector<Drg> parse_penman_corpus(const std::string& text) {
  std::vector<Drg> out;
  for (const auto& block : split_penman_blocks(text)) out.push_back(parse_penman(block));
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DrgError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DrgError("cannot open " + path + " for writing");
  out << text;
}

PenmanDocument serialize_strict(const Drg& g) {
  for (const auto& [id, n] : g.nodes)
    if (n.kind == NodeKind::Synset && g.scope_parents(id).empty()) throw NotFullyScopedError(id);
  if (!g.has_node(g.root)) throw DrgError("root node missing");

  StrictWriter w{g, {}, {}, {}};
  w.write(g.root, 0);

  // Anything not reached top-down cannot be expressed in strict notation.
  for (const auto& [id, n] : g.nodes)
    if (n.kind != NodeKind::Constant && !w.visited.count(id)) throw NotFullyScopedError(id);

  return {w.out.str() + "\n", PenmanVariant::Strict};
}

PenmanDocument serialize_lenient(const Drg& g) {
  if (!g.has_node(g.root)) throw DrgError("root node missing");
  LenientWriter w{g, {}, {}, {}, {}};
  w.write(g.root, 0);
  for (const auto& [id, n] : g.nodes)
    if (!w.visited.count(id))
      throw DrgError("node " + id.str() + " is not connected to the root");
  return {w.out.str() + "\n", PenmanVariant::Lenient};
}

PenmanDocument lenient_to_strict(const PenmanDocument& doc) {
  return serialize_strict(parse_penman(doc.text));
}

std::string serialize_fragment(const SGraph& g) {
  FragmentWriter w{g, {}, {}, {}};
  w.write(g.root);
  for (const auto& [id, n] : g.nodes)
    if (!w.visited.count(id)) throw DrgError("fragment node " + id.str() + " unreachable from root");
  return w.out.str();
}

}  // namespace drgtk
