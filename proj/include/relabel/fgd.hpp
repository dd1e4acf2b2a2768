#pragma once

// Functor-to-unified-label mapping for FGD-style annotation. The default
// table covers the 67 core functors one-to-one and is invertible; a few
// corpus-specific extras (NE, DESCR, SM) are known but deliberately
// unmapped. Override tables may replace or extend entries as long as the
// result stays injective.

#include <map>
#include <string>
#include <string_view>

#include "relabel/mapping.hpp"

namespace relabel {

struct UnmappedFunctorError : Error {
  explicit UnmappedFunctorError(std::string_view name)
      : Error("no mapping for functor \"" + std::string(name) + "\""),
        functor(name) {}
  std::string functor;
};

struct NoFgdSourceError : Error {
  explicit NoFgdSourceError(const UnifiedLabel& l)
      : Error("no functor maps to \"" + l.str() + "\""), label(l) {}
  UnifiedLabel label;
};

class FgdMapping {
 public:
  struct Entry {
    UnifiedLabel label;
    std::string provenance;
  };

  FgdMapping() {
    install_defaults();
    rebuild_inverse();
  }

  explicit FgdMapping(const std::string& override_path) {
    install_defaults();
    load_overrides(override_path);
  }

  // Rows: functor <TAB> unified label <TAB> provenance. Entries replace
  // defaults per functor; the merged table must stay injective.
  void load_overrides(const std::string& path) {
    for (const auto& row : detail::read_tsv(path, 3)) {
      const std::string& functor = row.cols[0];
      if (!valid_functor(functor))
        throw TableLoadError(path + ":" + std::to_string(row.line) +
                             ": bad functor \"" + functor + "\"");
      UnifiedLabel label;
      try {
        label = parse_label(row.cols[1]);
      } catch (const Error& e) {
        throw TableLoadError(path + ":" + std::to_string(row.line) + ": " +
                             e.what());
      }
      table_[functor] = {std::move(label), row.cols[2]};
      unmapped_.erase(functor);
    }
    rebuild_inverse();
  }

  static bool valid_functor(std::string_view name) {
    if (name.empty() || name[0] < 'A' || name[0] > 'Z') return false;
    for (char c : name)
      if (!(c >= 'A' && c <= 'Z') && !(c >= '0' && c <= '9')) return false;
    return true;
  }

  MapResult map(std::string_view functor, MapPolicy policy) const {
    if (!valid_functor(functor))
      throw AnnotationError("malformed functor \"" + std::string(functor) +
                            "\"");
    std::string raw(functor);
    auto it = table_.find(raw);
    if (it != table_.end()) return {it->second.label, std::move(raw), {}};
    switch (policy) {
      case MapPolicy::Strict:
        throw UnmappedFunctorError(functor);
      case MapPolicy::Passthrough:
        return {std::nullopt, std::move(raw), std::string(diag::kPassthrough)};
      case MapPolicy::Fallback:
        return {make_label("MISCLL"), std::move(raw),
                std::string(diag::kUnmapped)};
    }
    return {};
  }

  // Unique pre-image under the active table.
  std::string inverse(const UnifiedLabel& label) const {
    auto it = inverse_.find(label.str());
    if (it == inverse_.end()) throw NoFgdSourceError(label);
    return it->second;
  }

  const std::map<std::string, Entry>& table() const { return table_; }

  // Known source functors that have no unified counterpart.
  const std::map<std::string, std::string>& unmapped() const {
    return unmapped_;
  }

 private:
  void install_defaults() {
    auto put = [this](const char* functor, const char* main,
                      const char* sub = nullptr) {
      UnifiedLabel label{main,
                         sub ? std::optional<std::string>(sub) : std::nullopt};
      table_[functor] = {std::move(label), "default"};
    };
    put("ACT", "ACT");
    put("ADDR", "ADDR");
    put("EFF", "EFF");
    put("ORIG", "ORIG");
    put("PAT", "PAT");

    put("DENOM", "IND", "denom");
    put("PAR", "IND", "par");
    put("PARTL", "IND", "partl");
    put("PRED", "IND", "pred");
    put("VOCAT", "IND", "vocat");

    put("TFHL", "TIME", "fhl");
    put("TFRWH", "TIME", "frwh");
    put("THL", "TIME", "hl");
    put("THO", "TIME", "ho");
    put("TOWH", "TIME", "owh");
    put("TPAR", "TIME", "par");
    put("TSIN", "TIME", "sin");
    put("TTILL", "TIME", "till");
    put("TWHEN", "TIME", "when");

    put("DIR1", "LOC", "dir1");
    put("DIR2", "LOC", "dir2");
    put("DIR3", "LOC", "dir3");
    put("LOC", "LOC", "where");

    put("AIM", "CAUSE", "aim");
    put("CAUS", "CAUSE", "caus");
    put("CNCS", "CAUSE", "cncs");
    put("COND", "CAUSE", "cond");
    put("INTT", "CAUSE", "intt");

    put("ACMP", "MANR", "acmp");
    put("BEN", "MANR", "ben");
    put("CONTRD", "MANR", "contrd");
    put("CPR", "MANR", "cpr");
    put("CRIT", "MANR", "crit");
    put("DIFF", "MANR", "diff");
    put("EXT", "MANR", "ext");
    put("HER", "MANR", "her");
    put("MANN", "MANR", "mann");
    put("MEANS", "MANR", "means");
    put("REG", "MANR", "reg");
    put("RESL", "MANR", "resl");
    put("RESTR", "MANR", "restr");
    put("SUBS", "MANR", "subs");

    put("COMPL", "PCOMPL", "compl");

    put("APP", "ADNOM", "app");
    put("AUTH", "ADNOM", "auth");
    put("ID", "ADNOM", "id");
    put("MAT", "ADNOM", "mat");
    put("RSTR", "ADNOM", "restr");

    put("ATT", "MISCLL", "att");
    put("CM", "MISCLL", "cm");
    put("CPHR", "MISCLL", "cphr");
    put("DPHR", "MISCLL", "dphr");
    put("FPHR", "MISCLL", "fphr");
    put("INTF", "MISCLL", "intf");
    put("MOD", "MISCLL", "mod");
    put("PREC", "MISCLL", "prec");
    put("RHEM", "MISCLL", "rhem");

    put("ADVS", "BINDER", "adv");
    put("APPS", "BINDER", "apps");
    put("CONFR", "BINDER", "confr");
    put("CONJ", "BINDER", "conj");
    put("CONTRA", "BINDER", "contra");
    put("CSQ", "BINDER", "csq");
    put("DISJ", "BINDER", "disj");
    put("GRAD", "BINDER", "grad");
    put("OPER", "BINDER", "oper");
    put("REAS", "BINDER", "reas");

    unmapped_ = {{"NE", "pcedt-extra"},
                 {"DESCR", "pcedt-extra"},
                 {"SM", "pcedt-extra"}};
  }

  void rebuild_inverse() {
    inverse_.clear();
    for (const auto& [functor, entry] : table_) {
      auto [it, inserted] = inverse_.emplace(entry.label.str(), functor);
      if (!inserted)
        throw TableLoadError("functors \"" + it->second + "\" and \"" +
                             functor + "\" both map to " + entry.label.str());
    }
  }

  std::map<std::string, Entry> table_;
  std::map<std::string, std::string> unmapped_;
  std::map<std::string, std::string> inverse_;
};

}  // namespace relabel
