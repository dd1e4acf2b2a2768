#pragma once

// The unified deep-relation label set: 14 closed main labels, each with a
// fixed inventory of subcategories. Labels are written MAIN or
// MAIN:subcategory.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relabel/error.hpp"

namespace relabel {

struct UnknownMainError : Error {
  explicit UnknownMainError(std::string_view name)
      : Error("unknown main label \"" + std::string(name) + "\""),
        main(name) {}
  std::string main;
};

struct UnknownSubcatError : Error {
  UnknownSubcatError(std::string_view main_name, std::string_view sub)
      : Error("unknown subcategory \"" + std::string(sub) + "\" under " +
              std::string(main_name)),
        main(main_name),
        subcat(sub) {}
  std::string main;
  std::string subcat;
};

struct UnifiedLabel {
  std::string main;
  std::optional<std::string> subcat;

  std::string str() const { return subcat ? main + ":" + *subcat : main; }
  bool operator==(const UnifiedLabel&) const = default;
  bool operator<(const UnifiedLabel& other) const {
    return str() < other.str();
  }
};

// a subsumes b when both share the main label and a is no more specific.
inline bool subsumes(const UnifiedLabel& a, const UnifiedLabel& b) {
  if (a.main != b.main) return false;
  if (!a.subcat) return true;
  return b.subcat && *a.subcat == *b.subcat;
}

class Taxonomy {
 public:
  struct Subcat {
    std::string name;
    std::string provenance;  // "core" or "extension"
  };
  struct Main {
    std::string name;
    std::vector<Subcat> subcats;
  };

  static const Taxonomy& instance() {
    static const Taxonomy reg;
    return reg;
  }

  const std::vector<Main>& mains() const { return mains_; }

  const Main* find_main(std::string_view name) const {
    for (const auto& m : mains_)
      if (m.name == name) return &m;
    return nullptr;
  }

  const Subcat* find_subcat(std::string_view main_name,
                            std::string_view sub) const {
    const Main* m = find_main(main_name);
    if (!m) return nullptr;
    for (const auto& s : m->subcats)
      if (s.name == sub) return &s;
    return nullptr;
  }

  bool has(const UnifiedLabel& label) const {
    if (!label.subcat) return find_main(label.main) != nullptr;
    return find_subcat(label.main, *label.subcat) != nullptr;
  }

  void check(const UnifiedLabel& label) const {
    const Main* m = find_main(label.main);
    if (!m) throw UnknownMainError(label.main);
    if (label.subcat && !find_subcat(label.main, *label.subcat))
      throw UnknownSubcatError(label.main, *label.subcat);
  }

  UnifiedLabel parse(std::string_view text) const {
    UnifiedLabel label;
    std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) {
      label.main = std::string(text);
    } else {
      label.main = std::string(text.substr(0, colon));
      label.subcat = std::string(text.substr(colon + 1));
    }
    check(label);
    return label;
  }

  std::string format(const UnifiedLabel& label) const {
    check(label);
    return label.str();
  }

  // {"ACT":["agt","cau","exp"],...} in registry order. Names never need
  // escaping: they are plain identifiers.
  std::string to_json() const {
    std::string out = "{";
    for (std::size_t i = 0; i < mains_.size(); ++i) {
      if (i) out += ",";
      out += "\"" + mains_[i].name + "\":[";
      for (std::size_t j = 0; j < mains_[i].subcats.size(); ++j) {
        if (j) out += ",";
        out += "\"" + mains_[i].subcats[j].name + "\"";
      }
      out += "]";
    }
    out += "}";
    return out;
  }

  // One row per subcategory; mains without subcategories get a single row
  // with "_" in the subcategory column.
  std::string to_tsv() const {
    std::string out = "main\tsubcat\tprovenance\n";
    for (const auto& m : mains_) {
      if (m.subcats.empty()) {
        out += m.name + "\t_\tcore\n";
        continue;
      }
      for (const auto& s : m.subcats)
        out += m.name + "\t" + s.name + "\t" + s.provenance + "\n";
    }
    return out;
  }

 private:
  Taxonomy() {
    auto add = [this](std::string name, std::vector<std::string> subs) {
      Main m{std::move(name), {}};
      for (auto& s : subs) m.subcats.push_back({std::move(s), "core"});
      mains_.push_back(std::move(m));
    };
    add("ACT", {"agt", "cau", "exp"});
    add("ADDR", {});
    add("EFF", {});
    add("ORIG", {"src"});
    add("PAT", {"atr", "theme"});
    add("MANR", {"acmp", "ben", "contrd", "cpr", "crit", "diff", "ext", "her",
                 "mann", "means", "reg", "resl", "restr", "subs"});
    add("LOC", {"dir1", "dir2", "dir3", "ori", "where"});
    add("CAUSE", {"aim", "caus", "cncs", "cond", "intt"});
    add("TIME", {"fhl", "frwh", "hl", "ho", "owh", "par", "sin", "till",
                 "when"});
    add("BINDER", {"adv", "apps", "confr", "conj", "contra", "csq", "disj",
                   "grad", "oper", "reas"});
    add("IND", {"denom", "par", "partl", "pred", "vocat"});
    add("PCOMPL", {"compl", "efi", "ein"});
    add("ADNOM", {"app", "auth", "id", "mat", "restr"});
    add("MISCLL", {"att", "cm", "cphr", "dphr", "fphr", "intf", "mod", "prec",
                   "rhem"});
    // "app" extends the inventory beyond the attested adnominal set.
    for (auto& m : mains_)
      if (m.name == "ADNOM")
        for (auto& s : m.subcats)
          if (s.name == "app") s.provenance = "extension";
  }

  std::vector<Main> mains_;
};

inline UnifiedLabel parse_label(std::string_view text) {
  return Taxonomy::instance().parse(text);
}

inline std::string format_label(const UnifiedLabel& label) {
  return Taxonomy::instance().format(label);
}

inline UnifiedLabel make_label(std::string main) {
  return {std::move(main), std::nullopt};
}

inline UnifiedLabel make_label(std::string main, std::string subcat) {
  return {std::move(main), std::move(subcat)};
}

}  // namespace relabel
