#pragma once

// Label frequency counts over MISC values, renderers, and comparison
// against golden count files.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relabel/conllu.hpp"
#include "relabel/mapping.hpp"
#include "relabel/report.hpp"

namespace relabel {

struct LabelCount {
  std::string label;
  std::size_t count = 0;

  bool operator==(const LabelCount&) const = default;
};

class FreqTable {
 public:
  void add(std::string_view label, std::size_t n = 1) {
    counts_[std::string(label)] += n;
  }

  void merge(const FreqTable& other) {
    for (const auto& [label, count] : other.counts_) counts_[label] += count;
  }

  std::size_t count(const std::string& label) const {
    auto it = counts_.find(label);
    return it == counts_.end() ? 0 : it->second;
  }

  std::size_t distinct() const { return counts_.size(); }

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& [label, count] : counts_) n += count;
    return n;
  }

  // Highest count first; equal counts in label order.
  std::vector<LabelCount> rows() const {
    std::vector<LabelCount> out;
    out.reserve(counts_.size());
    for (const auto& [label, count] : counts_) out.push_back({label, count});
    std::stable_sort(out.begin(), out.end(),
                     [](const LabelCount& a, const LabelCount& b) {
                       return a.count != b.count ? a.count > b.count
                                                 : a.label < b.label;
                     });
    return out;
  }

  std::string render_tsv() const {
    std::string out = "label\tcount\n";
    for (const LabelCount& row : rows())
      out += row.label + "\t" + std::to_string(row.count) + "\n";
    return out;
  }

  std::string render_json() const {
    std::string out = "[";
    bool first = true;
    for (const LabelCount& row : rows()) {
      if (!first) out += ",";
      first = false;
      out += "{\"label\":" + detail::json_quote(row.label) +
             ",\"count\":" + std::to_string(row.count) + "}";
    }
    out += "]";
    return out;
  }

  std::string render_markdown() const {
    std::string out = "| label | count |\n| --- | ---: |\n";
    for (const LabelCount& row : rows()) {
      std::string cell;
      for (char c : row.label) {
        if (c == '|') cell += '\\';
        cell += c;
      }
      out += "| " + cell + " | " + std::to_string(row.count) + " |\n";
    }
    return out;
  }

 private:
  std::map<std::string, std::size_t> counts_;
};

// Counts the values under one MISC key across words and empty nodes.
// Ranges never carry annotation and are skipped; bare keys without a
// value are skipped too.
inline void count_labels(const Sentence& sent, std::string_view key,
                         FreqTable& table) {
  for (const Token& tok : sent.tokens) {
    if (tok.id.is_range()) continue;
    const MiscItem* item = tok.find_misc(key);
    if (item && item->value) table.add(*item->value);
  }
}

inline FreqTable count_labels(const Document& doc, std::string_view key) {
  FreqTable table;
  for (const Sentence& sent : doc.sentences) count_labels(sent, key, table);
  return table;
}

inline std::vector<LabelCount> load_golden_counts(const std::string& path) {
  std::vector<LabelCount> out;
  for (const auto& row : detail::read_tsv(path, 2)) {
    if (row.cols[0] == "label" && row.cols[1] == "count" && out.empty())
      continue;
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(row.cols[1], &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != row.cols[1].size())
      throw TableLoadError(path + ":" + std::to_string(row.line) +
                           ": bad count \"" + row.cols[1] + "\"");
    out.push_back({row.cols[0], static_cast<std::size_t>(value)});
  }
  return out;
}

struct FreqDiff {
  std::string label;
  std::size_t expected = 0;
  std::size_t actual = 0;

  long long delta() const {
    return static_cast<long long>(actual) - static_cast<long long>(expected);
  }

  bool operator==(const FreqDiff&) const = default;
};

// Mismatched labels only, in label order. Labels absent from one side
// count as zero there.
inline std::vector<FreqDiff> compare_counts(
    const std::vector<LabelCount>& golden, const FreqTable& actual) {
  std::map<std::string, FreqDiff> by_label;
  for (const LabelCount& row : golden) {
    by_label[row.label].label = row.label;
    by_label[row.label].expected += row.count;
  }
  for (const LabelCount& row : actual.rows()) {
    by_label[row.label].label = row.label;
    by_label[row.label].actual = row.count;
  }
  std::vector<FreqDiff> out;
  for (const auto& [label, diff] : by_label)
    if (diff.expected != diff.actual) out.push_back(diff);
  return out;
}

}  // namespace relabel
