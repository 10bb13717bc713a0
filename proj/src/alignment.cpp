#include "drgtk/alignment.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace drgtk {

std::map<int, std::vector<NodeId>> Alignment::nodes_by_token() const {
  std::map<int, std::vector<NodeId>> out;
  for (const auto& [id, tok] : node_token) out[tok].push_back(id);
  return out;
}

void check_alignment(const Drg& g, const Alignment& a) {
  for (const auto& [id, n] : g.nodes) {
    if (n.kind == NodeKind::Constant) continue;
    int tok = a.token_of(id);
    if (tok < 0) throw MissingAlignmentError(id);
    if (tok >= static_cast<int>(a.tokens.size()))
      throw DrgError("alignment of " + id.str() + " points past the token list");
  }
}

Alignment alignment_from_json_line(const std::string& line, int lineno) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw FileFormatError(std::string("bad JSON: ") + e.what(), lineno);
  }
  Alignment a;
  if (!j.contains("tokens") || !j["tokens"].is_array())
    throw FileFormatError("missing \"tokens\" array", lineno);
  for (const auto& t : j["tokens"]) a.tokens.push_back(t.get<std::string>());
  if (!j.contains("alignment") || !j["alignment"].is_object())
    throw FileFormatError("missing \"alignment\" object", lineno);
  for (const auto& [key, val] : j["alignment"].items()) {
    NodeId id;
    try {
      id = NodeId::parse(key);
    } catch (const std::exception&) {
      throw FileFormatError("bad node id " + key, lineno);
    }
    a.node_token[id] = val.get<int>();
  }
  return a;
}

std::string alignment_to_json_line(const Alignment& a) {
  nlohmann::json j;
  j["tokens"] = a.tokens;
  nlohmann::json m = nlohmann::json::object();
  for (const auto& [id, tok] : a.node_token) m[id.str()] = tok;
  j["alignment"] = m;
  return j.dump();
}

std::vector<Alignment> read_alignment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DrgError("cannot open " + path);
  std::vector<Alignment> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty() || line[0] == '#') continue;
    out.push_back(alignment_from_json_line(line, lineno));
  }
  return out;
}

void write_alignment_file(const std::string& path, const std::vector<Alignment>& list) {
  std::ofstream out(path);
  if (!out) throw DrgError("cannot open " + path + " for writing");
  for (const auto& a : list) out << alignment_to_json_line(a) << "\n";
}

}  // namespace drgtk
