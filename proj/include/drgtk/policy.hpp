#pragma once

#include <set>
#include <string>

#include "drgtk/drg.hpp"

namespace drgtk {

enum class MemberMode { App, Mod };

// Decides, per edge label, whether an edge crossing a fragment boundary stays
// with its source-side fragment (app) or its target-side fragment (mod).
// Scope edges follow member_mode: App keeps them with the box, Mod with the
// content node.
struct EdgeAttachmentPolicy {
  std::set<std::string> app_labels;
  std::set<std::string> mod_labels;
  MemberMode member_mode = MemberMode::Mod;

  // True when the label groups with the source side. Labels in neither list
  // default to app; callers may warn.
  bool is_app(const std::string& label) const {
    if (mod_labels.count(label)) return false;
    return true;
  }
  bool known(const std::string& label) const {
    return app_labels.count(label) || mod_labels.count(label);
  }
};

EdgeAttachmentPolicy default_policy(MemberMode mode);

// Plain text file:
//   member: app|mod
//   app: LabelA LabelB ...
//   mod: LabelC ...
// Lines may repeat; '#' starts a comment.
EdgeAttachmentPolicy load_policy(const std::string& path);
void save_policy(const std::string& path, const EdgeAttachmentPolicy& p);

}  // namespace drgtk
