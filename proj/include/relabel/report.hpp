#pragma once

// Findings raised by validation and consistency checks, with deterministic
// ordering and text/JSON rendering.

#include <algorithm>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "relabel/conllu.hpp"

namespace relabel {

enum class Severity { Error, Warning, Info };

inline std::string_view severity_name(Severity s) {
  switch (s) {
    case Severity::Error:
      return "ERROR";
    case Severity::Warning:
      return "WARNING";
    case Severity::Info:
      return "INFO";
  }
  return {};
}

namespace detail {

inline std::string json_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += "\"";
  return out;
}

}  // namespace detail

struct Finding {
  Severity severity = Severity::Error;
  std::string code;
  std::size_t sentence = 0;      // 1-based position in the document
  std::string sent_id;           // empty when the sentence has none
  std::optional<NodeId> node;    // empty for sentence-level findings
  std::string message;

  // sent=<id> falls back to the document position when ids are missing.
  std::string sent_ref() const {
    return sent_id.empty() ? "#" + std::to_string(sentence) : sent_id;
  }
  std::string node_ref() const { return node ? node->str() : "-"; }
};

struct ValidationReport {
  std::vector<Finding> findings;

  std::size_t count(Severity s) const {
    std::size_t n = 0;
    for (const auto& f : findings) n += f.severity == s;
    return n;
  }
  std::size_t errors() const { return count(Severity::Error); }
  std::size_t warnings() const { return count(Severity::Warning); }
  bool has_errors() const { return errors() > 0; }

  void add(Finding f) { findings.push_back(std::move(f)); }

  // Document order: sentence, then node (sentence-level first), then code.
  void sort() {
    auto key = [](const Finding& f) {
      return std::make_tuple(f.sentence,
                             f.node ? f.node->order_key()
                                    : std::make_tuple(-1, -1, -1),
                             std::string_view(f.code),
                             std::string_view(f.message));
    };
    std::stable_sort(
        findings.begin(), findings.end(),
        [&key](const Finding& a, const Finding& b) { return key(a) < key(b); });
  }

  void render_text(std::ostream& out) const {
    for (const auto& f : findings)
      out << severity_name(f.severity) << ' ' << f.code << " sent="
          << f.sent_ref() << " node=" << f.node_ref() << ' ' << f.message
          << '\n';
  }

  std::string render_text() const {
    std::ostringstream out;
    render_text(out);
    return out.str();
  }

  std::string render_json() const {
    std::string out = "[";
    for (std::size_t i = 0; i < findings.size(); ++i) {
      const Finding& f = findings[i];
      if (i) out += ",";
      out += "{\"severity\":" +
             detail::json_quote(severity_name(f.severity)) +
             ",\"code\":" + detail::json_quote(f.code) +
             ",\"sentence\":" + std::to_string(f.sentence) +
             ",\"sent_id\":" + detail::json_quote(f.sent_id) + ",\"node\":" +
             (f.node ? detail::json_quote(f.node->str()) : "null") +
             ",\"message\":" + detail::json_quote(f.message) + "}";
    }
    out += "]";
    return out;
  }
};

}  // namespace relabel
