#pragma once

// Pieces shared by the two source-framework mappings: the mapping policy,
// the per-annotation result record, diagnostic codes, and TSV helpers for
// override tables.

#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relabel/conllu.hpp"
#include "relabel/error.hpp"
#include "relabel/taxonomy.hpp"

namespace relabel {

// A source annotation that is malformed beyond repair; raised under every
// policy.
struct AnnotationError : Error {
  using Error::Error;
};

struct TableLoadError : Error {
  using Error::Error;
};

enum class MapPolicy { Strict, Passthrough, Fallback };

inline std::string_view policy_name(MapPolicy policy) {
  switch (policy) {
    case MapPolicy::Strict:
      return "strict";
    case MapPolicy::Passthrough:
      return "passthrough";
    case MapPolicy::Fallback:
      return "fallback";
  }
  return {};
}

inline std::optional<MapPolicy> parse_policy(std::string_view name) {
  if (name == "strict") return MapPolicy::Strict;
  if (name == "passthrough") return MapPolicy::Passthrough;
  if (name == "fallback") return MapPolicy::Fallback;
  return std::nullopt;
}

namespace diag {
inline constexpr std::string_view kResidualRole = "RESIDUAL_ROLE";
inline constexpr std::string_view kPassthrough = "PASSTHROUGH";
inline constexpr std::string_view kUnmapped = "UNMAPPED";
inline constexpr std::string_view kOverwroteDst = "OVERWROTE_DST";
}  // namespace diag

// One mapped annotation. No label means the annotation passed through
// unmapped and the output will carry a SRC:<raw> marker instead.
struct MapResult {
  std::optional<UnifiedLabel> label;
  std::string raw;
  std::optional<std::string> diagnostic;

  bool passthrough() const { return !label.has_value(); }
  std::string target() const {
    return label ? label->str() : "SRC:" + raw;
  }
};

namespace detail {

struct TsvRow {
  std::size_t line;
  std::vector<std::string> cols;
};

// Rows of an override table: tab-separated columns, blank lines and lines
// starting with '#' skipped.
inline std::vector<TsvRow> read_tsv(const std::string& path,
                                    std::size_t expected_cols) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableLoadError("cannot open table " + path);
  std::vector<TsvRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    TsvRow row{line_no, {}};
    for (auto col : split(line, '\t')) row.cols.emplace_back(col);
    if (row.cols.size() != expected_cols)
      throw TableLoadError(path + ":" + std::to_string(line_no) +
                           ": expected " + std::to_string(expected_cols) +
                           " columns, got " + std::to_string(row.cols.size()));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

}  // namespace relabel
