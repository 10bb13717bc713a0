#include "drgtk/policy.hpp"

#include <fstream>
#include <sstream>

#include "drgtk/alignment.hpp"

namespace drgtk {

EdgeAttachmentPolicy default_policy(MemberMode mode) {
  EdgeAttachmentPolicy p;
  p.member_mode = mode;
  p.app_labels = {
      "Agent", "Bearer", "Participant", "Creator", "Proposition", "Stimulus", "Beneficiary",
      "Co-Agent", "Co-Patient", "Co-Theme", "Experiencer", "Patient", "Pivot", "Product",
      "Recipient", "Theme", "Owner", "Of", "User", "Role", "NEQ", "APX", "EQU", "TPR",
      // Attachment attributes that name or date an entity travel with it.
      "Name", "Time", "Quantity",
  };
  p.mod_labels = {
      "Consumer", "Topic", "Result", "Sub", "Source", "Destination", "Goal",
      "ALTERNATION", "ATTRIBUTION", "CONDITION", "CONSEQUENCE", "CONTINUATION", "CONTRAST",
      "EXPLANATION", "NECESSITY", "NEGATION", "POSSIBILITY", "PRECONDITION", "RESULT", "SOURCE",
      // Modifier-side roles: the describing node owns the edge.
      "Attribute", "Manner", "Location",
  };
  return p;
}

EdgeAttachmentPolicy load_policy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DrgError("cannot open " + path);
  EdgeAttachmentPolicy p;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;
    std::string word;
    if (head == "member:") {
      if (!(ss >> word) || (word != "app" && word != "mod"))
        throw FileFormatError("member: expects app or mod", lineno);
      p.member_mode = word == "app" ? MemberMode::App : MemberMode::Mod;
    } else if (head == "app:") {
      while (ss >> word) p.app_labels.insert(word);
    } else if (head == "mod:") {
      while (ss >> word) p.mod_labels.insert(word);
    } else {
      throw FileFormatError("unknown directive " + head, lineno);
    }
  }
  for (const auto& l : p.app_labels)
    if (p.mod_labels.count(l)) throw DrgError("label " + l + " is listed as both app and mod");
  return p;
}

void save_policy(const std::string& path, const EdgeAttachmentPolicy& p) {
  std::ofstream out(path);
  if (!out) throw DrgError("cannot open " + path + " for writing");
  out << "member: " << (p.member_mode == MemberMode::App ? "app" : "mod") << "\n";
  out << "app:";
  for (const auto& l : p.app_labels) out << " " << l;
  out << "\nmod:";
  for (const auto& l : p.mod_labels) out << " " << l;
  out << "\n";
}

}  // namespace drgtk
