#pragma once

// Thematic-role mapping for AnCora-style annotation. An annotation is an
// argument slot plus a role ("arg0:agt", "argM:tmp"); light-verb
// complements are the slot alone ("argL:"). Most roles map by name, two
// depend on the slot, and six residual classes only map under the fallback
// policy, always with a diagnostic.

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relabel/mapping.hpp"

namespace relabel {

struct UnmappedRoleError : Error {
  UnmappedRoleError(std::string_view role_name, std::string_view position)
      : Error("no clean mapping for role \"" + std::string(role_name) +
              "\" in slot " + std::string(position)),
        role(role_name) {}
  std::string role;
};

struct NoAncoraSourceError : Error {
  explicit NoAncoraSourceError(const UnifiedLabel& l)
      : Error("no thematic role maps to \"" + l.str() + "\""), label(l) {}
  UnifiedLabel label;
};

enum class ArgPosition { Arg0, Arg1, Arg2, Arg3, Arg4, Mod, Light };

inline std::string_view position_name(ArgPosition pos) {
  switch (pos) {
    case ArgPosition::Arg0:
      return "arg0";
    case ArgPosition::Arg1:
      return "arg1";
    case ArgPosition::Arg2:
      return "arg2";
    case ArgPosition::Arg3:
      return "arg3";
    case ArgPosition::Arg4:
      return "arg4";
    case ArgPosition::Mod:
      return "argM";
    case ArgPosition::Light:
      return "argL";
  }
  return {};
}

inline std::optional<ArgPosition> parse_position(std::string_view text) {
  if (text.size() != 4) return std::nullopt;
  char a = static_cast<char>(std::tolower(text[0]));
  char r = static_cast<char>(std::tolower(text[1]));
  char g = static_cast<char>(std::tolower(text[2]));
  if (a != 'a' || r != 'r' || g != 'g') return std::nullopt;
  switch (std::tolower(text[3])) {
    case '0':
      return ArgPosition::Arg0;
    case '1':
      return ArgPosition::Arg1;
    case '2':
      return ArgPosition::Arg2;
    case '3':
      return ArgPosition::Arg3;
    case '4':
      return ArgPosition::Arg4;
    case 'm':
      return ArgPosition::Mod;
    case 'l':
      return ArgPosition::Light;
  }
  return std::nullopt;
}

// Slot families used by the inverse direction: numbered arguments, the
// adjunct slot argM, or no restriction.
enum class PositionClass { Any, Argument, Adjunct };

inline bool position_in_class(ArgPosition pos, PositionClass cls) {
  switch (cls) {
    case PositionClass::Any:
      return true;
    case PositionClass::Argument:
      return pos != ArgPosition::Mod && pos != ArgPosition::Light;
    case PositionClass::Adjunct:
      return pos == ArgPosition::Mod;
  }
  return false;
}

inline std::string_view position_class_name(PositionClass cls) {
  switch (cls) {
    case PositionClass::Any:
      return "any";
    case PositionClass::Argument:
      return "argument";
    case PositionClass::Adjunct:
      return "adjunct";
  }
  return {};
}

struct RoleAnnotation {
  ArgPosition position = ArgPosition::Arg0;
  std::string role;  // empty exactly for argL

  std::string str() const {
    return std::string(position_name(position)) + ":" + role;
  }
  bool operator==(const RoleAnnotation&) const = default;
};

class AncoraMapping {
 public:
  struct Rule {
    std::string role;                      // "" for the argL class
    std::optional<ArgPosition> position;   // specific slot, or any
    UnifiedLabel label;
    bool residual;
    std::string provenance;
  };

  struct Source {
    std::string role;
    PositionClass positions;
  };

  AncoraMapping() { install_defaults(); }

  explicit AncoraMapping(const std::string& override_path) {
    install_defaults();
    load_overrides(override_path);
  }

  // Rows: role <TAB> slots <TAB> unified label, where slots is "*" or a
  // comma-separated list like "arg0,argM". Overrides are clean mappings and
  // win over the built-in rules; new roles become parseable.
  void load_overrides(const std::string& path) {
    for (const auto& row : detail::read_tsv(path, 3)) {
      auto fail = [&](const std::string& msg) {
        throw TableLoadError(path + ":" + std::to_string(row.line) + ": " +
                             msg);
      };
      const std::string& role = row.cols[0];
      if (!valid_role(role)) fail("bad role \"" + role + "\"");
      UnifiedLabel label;
      try {
        label = parse_label(row.cols[2]);
      } catch (const Error& e) {
        fail(e.what());
      }
      for (const char* banned : {"BINDER", "IND", "ADNOM", "EFF", "ADDR"})
        if (label.main == banned)
          fail("thematic roles never map into " + label.main);
      known_roles_.insert(role);
      if (row.cols[1] == "*") {
        star_overrides_[role] = label;
        continue;
      }
      for (auto slot : detail::split(row.cols[1], ',')) {
        auto pos = parse_position(slot);
        if (!pos || *pos == ArgPosition::Light)
          fail("bad slot \"" + std::string(slot) + "\"");
        slot_overrides_[{role, *pos}] = label;
      }
    }
  }

  static bool valid_role(std::string_view name) {
    if (name.empty()) return false;
    for (char c : name)
      if (c < 'a' || c > 'z') return false;
    return true;
  }

  RoleAnnotation parse_annotation(std::string_view raw) const {
    std::size_t colon = raw.find(':');
    if (colon == std::string_view::npos)
      throw AnnotationError("malformed role annotation \"" + std::string(raw) +
                            "\" (expected slot:role)");
    auto pos = parse_position(raw.substr(0, colon));
    if (!pos)
      throw AnnotationError("bad argument slot in \"" + std::string(raw) +
                            "\"");
    std::string role(raw.substr(colon + 1));
    if (role.empty()) {
      if (*pos != ArgPosition::Light)
        throw AnnotationError("only argL may omit the role: \"" +
                              std::string(raw) + "\"");
    } else {
      if (*pos == ArgPosition::Light)
        throw AnnotationError("argL carries no role: \"" + std::string(raw) +
                              "\"");
      if (!known_roles_.count(role))
        throw AnnotationError("unknown thematic role \"" + role + "\"");
    }
    return {*pos, std::move(role)};
  }

  MapResult map(const RoleAnnotation& ann, MapPolicy policy) const {
    return map_with_raw(ann, ann.str(), policy);
  }

  // Parses and maps, keeping the annotation bytes exactly as given.
  MapResult map_raw(std::string_view raw, MapPolicy policy) const {
    return map_with_raw(parse_annotation(raw), std::string(raw), policy);
  }

  // Inverse of the in-scope mapping: the role plus the slot family it may
  // occupy. Labels outside the in-scope image have no source.
  Source inverse(const UnifiedLabel& label) const {
    static const std::map<std::string, Source> table = {
        {"ACT:agt", {"agt", PositionClass::Any}},
        {"ACT:cau", {"cau", PositionClass::Argument}},
        {"ACT:exp", {"exp", PositionClass::Any}},
        {"ORIG:src", {"src", PositionClass::Any}},
        {"PAT", {"pat", PositionClass::Any}},
        {"PAT:atr", {"atr", PositionClass::Any}},
        {"PAT:theme", {"tem", PositionClass::Any}},
        {"MANR:ben", {"ben", PositionClass::Any}},
        {"MANR:mann", {"mnr", PositionClass::Any}},
        {"LOC:where", {"loc", PositionClass::Any}},
        {"LOC:dir3", {"des", PositionClass::Any}},
        {"LOC:ori", {"ori", PositionClass::Any}},
        {"CAUSE:aim", {"fin", PositionClass::Any}},
        {"CAUSE:caus", {"cau", PositionClass::Adjunct}},
        {"TIME", {"tmp", PositionClass::Any}},
        {"PCOMPL:efi", {"efi", PositionClass::Any}},
        {"PCOMPL:ein", {"ein", PositionClass::Any}},
    };
    auto it = table.find(label.str());
    if (it == table.end()) throw NoAncoraSourceError(label);
    return it->second;
  }

  // Active rules, overrides first, for table export.
  std::vector<Rule> rules() const {
    std::vector<Rule> out;
    for (const auto& [key, label] : slot_overrides_)
      out.push_back({key.first, key.second, label, false, "override"});
    for (const auto& [role, label] : star_overrides_)
      out.push_back({role, std::nullopt, label, false, "override"});
    for (const Rule& rule : builtin_rules()) out.push_back(rule);
    return out;
  }

 private:
  static const std::vector<Rule>& builtin_rules() {
    static const std::vector<Rule> rules = [] {
      std::vector<Rule> r;
      auto add = [&r](const char* role, std::optional<ArgPosition> pos,
                      const char* main, const char* sub, bool residual) {
        r.push_back({role, pos,
                     {main, sub ? std::optional<std::string>(sub)
                                : std::nullopt},
                     residual, "default"});
      };
      add("adv", std::nullopt, "MANR", nullptr, true);
      add("agt", std::nullopt, "ACT", "agt", false);
      add("atr", std::nullopt, "PAT", "atr", false);
      add("ben", std::nullopt, "MANR", "ben", false);
      add("cau", ArgPosition::Mod, "CAUSE", "caus", false);
      add("cau", std::nullopt, "ACT", "cau", false);
      add("cot", std::nullopt, "PAT", "theme", true);
      add("des", std::nullopt, "LOC", "dir3", false);
      add("efi", std::nullopt, "PCOMPL", "efi", false);
      add("ein", std::nullopt, "PCOMPL", "ein", false);
      add("exp", std::nullopt, "ACT", "exp", false);
      add("ext", std::nullopt, "MANR", "ext", true);
      add("fin", std::nullopt, "CAUSE", "aim", false);
      add("ins", std::nullopt, "MANR", "means", true);
      add("loc", std::nullopt, "LOC", "where", false);
      add("mnr", std::nullopt, "MANR", "mann", false);
      add("ori", std::nullopt, "LOC", "ori", false);
      add("pat", std::nullopt, "PAT", nullptr, false);
      add("src", std::nullopt, "ORIG", "src", false);
      add("tem", ArgPosition::Arg1, "PAT", "theme", false);
      add("tem", std::nullopt, "PAT", "theme", true);
      add("tmp", std::nullopt, "TIME", nullptr, false);
      add("", ArgPosition::Light, "MISCLL", "cphr", true);
      return r;
    }();
    return rules;
  }

  void install_defaults() {
    for (const Rule& rule : builtin_rules())
      if (!rule.role.empty()) known_roles_.insert(rule.role);
  }

  MapResult map_with_raw(const RoleAnnotation& ann, std::string raw,
                         MapPolicy policy) const {
    if (auto it = slot_overrides_.find({ann.role, ann.position});
        it != slot_overrides_.end())
      return {it->second, std::move(raw), {}};
    if (auto it = star_overrides_.find(ann.role); it != star_overrides_.end())
      return {it->second, std::move(raw), {}};

    const Rule* match = nullptr;
    for (const Rule& rule : builtin_rules()) {
      if (rule.role != ann.role) continue;
      if (rule.position && *rule.position != ann.position) continue;
      match = &rule;
      break;
    }
    if (!match)
      throw AnnotationError("unknown thematic role \"" + ann.role + "\"");
    if (!match->residual) return {match->label, std::move(raw), {}};
    switch (policy) {
      case MapPolicy::Strict:
        throw UnmappedRoleError(ann.role.empty() ? "(light verb)" : ann.role,
                                position_name(ann.position));
      case MapPolicy::Passthrough:
        return {std::nullopt, std::move(raw), std::string(diag::kPassthrough)};
      case MapPolicy::Fallback:
        return {match->label, std::move(raw),
                std::string(diag::kResidualRole)};
    }
    return {};
  }

  std::set<std::string> known_roles_;
  std::map<std::pair<std::string, ArgPosition>, UnifiedLabel> slot_overrides_;
  std::map<std::string, UnifiedLabel> star_overrides_;
};

}  // namespace relabel
