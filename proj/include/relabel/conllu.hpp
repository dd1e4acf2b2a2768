#pragma once

// CoNLL-U reading and writing. Canonical files (LF line ends, one blank
// line between sentences, trailing blank line) round-trip byte for byte:
// every column is kept as raw text except where callers need structure
// (ids, heads, enhanced deps, MISC items).

#include <cstddef>
#include <istream>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "relabel/error.hpp"

namespace relabel {

struct ParseError : Error {
  ParseError(std::size_t line_no, const std::string& msg)
      : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
  std::size_t line;  // 1-based input line
};

enum class NodeKind { Word, Empty, Range };

// Token id: plain word (4), empty node (4.1) or multiword range (4-5).
struct NodeId {
  NodeKind kind = NodeKind::Word;
  int major = 0;
  int minor = 0;  // empty nodes: position in the 4.1, 4.2, ... sequence
  int end = 0;    // ranges: last covered word

  static NodeId word(int n) { return {NodeKind::Word, n, 0, 0}; }
  static NodeId empty_node(int major, int minor) {
    return {NodeKind::Empty, major, minor, 0};
  }
  static NodeId range(int first, int last) {
    return {NodeKind::Range, first, 0, last};
  }

  bool is_word() const { return kind == NodeKind::Word; }
  bool is_empty() const { return kind == NodeKind::Empty; }
  bool is_range() const { return kind == NodeKind::Range; }

  static std::optional<NodeId> parse(std::string_view text);
  std::string str() const;

  // File order: a range precedes the words it covers, empty nodes follow
  // their anchor word.
  std::tuple<int, int, int> order_key() const {
    int tier = is_range() ? 0 : is_word() ? 1 : 2;
    return {major, tier, is_empty() ? minor : end};
  }

  bool operator==(const NodeId&) const = default;
  bool operator<(const NodeId& other) const {
    return order_key() < other.order_key();
  }
};

// One entry of the MISC column. A bare item ("Foo") has no value at all,
// which is distinct from an empty one ("Foo=").
struct MiscItem {
  std::string key;
  std::optional<std::string> value;

  std::string str() const { return value ? key + "=" + *value : key; }
  bool operator==(const MiscItem&) const = default;
};

// One enhanced-graph edge from the DEPS column, head side. Word id 0 is
// the virtual root.
struct Dep {
  NodeId head;
  std::string rel;

  std::string str() const { return head.str() + ":" + rel; }
  bool operator==(const Dep&) const = default;
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

// Nonnegative integer, no sign, no leading zeros ("0" itself is fine).
inline std::optional<int> parse_id_int(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  if (s.size() > 1 && s[0] == '0') return std::nullopt;
  int value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace detail

inline std::optional<NodeId> NodeId::parse(std::string_view text) {
  std::size_t dash = text.find('-');
  std::size_t dot = text.find('.');
  if (dash != std::string_view::npos) {
    auto first = detail::parse_id_int(text.substr(0, dash));
    auto last = detail::parse_id_int(text.substr(dash + 1));
    if (!first || !last) return std::nullopt;
    return range(*first, *last);
  }
  if (dot != std::string_view::npos) {
    auto major = detail::parse_id_int(text.substr(0, dot));
    auto minor = detail::parse_id_int(text.substr(dot + 1));
    if (!major || !minor || *minor < 1) return std::nullopt;
    return empty_node(*major, *minor);
  }
  auto major = detail::parse_id_int(text);
  if (!major) return std::nullopt;
  return word(*major);
}

inline std::string NodeId::str() const {
  switch (kind) {
    case NodeKind::Word:
      return std::to_string(major);
    case NodeKind::Empty:
      return std::to_string(major) + "." + std::to_string(minor);
    case NodeKind::Range:
      return std::to_string(major) + "-" + std::to_string(end);
  }
  return {};
}

struct Token {
  NodeId id;
  std::string form = "_";
  std::string lemma = "_";
  std::string upos = "_";
  std::string xpos = "_";
  std::vector<std::string> feats;   // "_" column <=> empty
  std::optional<int> head;          // "_" column <=> nullopt
  std::string deprel = "_";
  std::vector<Dep> deps;            // "_" column <=> empty
  std::vector<MiscItem> misc;       // "_" column <=> empty

  const MiscItem* find_misc(std::string_view key) const {
    for (const auto& item : misc)
      if (item.key == key) return &item;
    return nullptr;
  }

  // Value of a MISC attribute; a bare item reads as "". Absent key: nullopt.
  std::optional<std::string> misc_attr(std::string_view key) const {
    const MiscItem* item = find_misc(key);
    if (!item) return std::nullopt;
    return item->value.value_or("");
  }

  // Replaces the attribute in place when the key exists, appends otherwise.
  void set_misc_attr(std::string_view key, std::string_view value) {
    if (key.empty() ||
        key.find_first_of("=|\t\n\r") != std::string_view::npos)
      throw Error("invalid MISC key: \"" + std::string(key) + "\"");
    if (value.find_first_of("|\t\n\r") != std::string_view::npos)
      throw Error("invalid MISC value: \"" + std::string(value) + "\"");
    for (auto& item : misc) {
      if (item.key == key) {
        item.value = std::string(value);
        return;
      }
    }
    misc.push_back({std::string(key), std::string(value)});
  }
};

struct Sentence {
  std::vector<std::string> comments;  // verbatim lines, '#' included
  std::vector<Token> tokens;          // file order

  // Value of a "# key = value" comment.
  std::optional<std::string> comment_value(std::string_view key) const {
    for (const auto& line : comments) {
      std::string_view s(line);
      if (s.empty() || s[0] != '#') continue;
      s.remove_prefix(1);
      while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
      if (s.substr(0, key.size()) != key) continue;
      s.remove_prefix(key.size());
      while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
      if (s.empty() || s.front() != '=') continue;
      s.remove_prefix(1);
      if (!s.empty() && s.front() == ' ') s.remove_prefix(1);
      return std::string(s);
    }
    return std::nullopt;
  }

  std::string sent_id() const { return comment_value("sent_id").value_or(""); }

  int word_count() const {
    int n = 0;
    for (const auto& t : tokens)
      if (t.id.is_word()) ++n;
    return n;
  }

  const Token* find(const NodeId& id) const {
    for (const auto& t : tokens)
      if (t.id == id) return &t;
    return nullptr;
  }
};

struct Document {
  std::vector<Sentence> sentences;
};

// Pulls one sentence at a time so whole documents never need to sit in
// memory. CRLF input is accepted and normalized (reported once through
// warnings()).
class SentenceReader {
 public:
  explicit SentenceReader(std::istream& in) : in_(in) {}

  std::size_t line() const { return line_no_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::optional<Sentence> next() {
    Sentence sent;
    std::size_t first_comment_line = 0;
    bool saw_tokens = false;
    ParserState st;

    std::string line;
    while (read_line(line)) {
      if (line.empty()) {
        if (sent.comments.empty() && sent.tokens.empty()) continue;
        break;
      }
      if (line[0] == '#') {
        if (saw_tokens)
          throw ParseError(line_no_, "comment line inside a sentence");
        if (sent.comments.empty()) first_comment_line = line_no_;
        sent.comments.push_back(line);
        continue;
      }
      saw_tokens = true;
      sent.tokens.push_back(parse_token_line(line, st));
    }

    if (!saw_tokens) {
      if (sent.comments.empty()) return std::nullopt;
      throw ParseError(first_comment_line, "sentence has comments but no tokens");
    }
    if (st.open_range_end > st.last_word)
      throw ParseError(st.open_range_line, "multiword range extends past the last word");
    return sent;
  }

 private:
  struct ParserState {
    int last_word = 0;
    int open_range_end = 0;   // highest word a pending range must reach
    std::size_t open_range_line = 0;
    int last_empty_major = -1;
    int last_empty_minor = 0;
  };

  bool read_line(std::string& out) {
    if (!std::getline(in_, out)) return false;
    ++line_no_;
    if (!out.empty() && out.back() == '\r') {
      out.pop_back();
      if (!crlf_warned_) {
        warnings_.push_back("line " + std::to_string(line_no_) +
                            ": CRLF line ends normalized to LF");
        crlf_warned_ = true;
      }
    }
    return true;
  }

  Token parse_token_line(const std::string& line, ParserState& st) {
    auto cols = detail::split(line, '\t');
    if (cols.size() != 10)
      throw ParseError(line_no_, "expected 10 tab-separated columns, got " +
                                     std::to_string(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (cols[i].empty())
        throw ParseError(line_no_, "column " + std::to_string(i + 1) +
                                       " is empty (use \"_\")");

    Token tok;
    auto id = NodeId::parse(cols[0]);
    if (!id)
      throw ParseError(line_no_, "bad token id \"" + std::string(cols[0]) + "\"");
    tok.id = *id;
    check_id_sequence(tok.id, st);

    tok.form = cols[1];
    tok.lemma = cols[2];
    tok.upos = cols[3];
    tok.xpos = cols[4];

    if (cols[5] != "_")
      for (auto part : detail::split(cols[5], '|')) {
        if (part.empty())
          throw ParseError(line_no_, "empty FEATS item");
        tok.feats.emplace_back(part);
      }

    if (tok.id.is_range()) {
      if (cols[6] != "_" || cols[7] != "_" || cols[8] != "_")
        throw ParseError(line_no_,
                         "multiword range must have \"_\" in HEAD, DEPREL and DEPS");
    } else {
      if (cols[6] != "_") {
        auto head = detail::parse_id_int(cols[6]);
        if (!head)
          throw ParseError(line_no_, "bad HEAD \"" + std::string(cols[6]) + "\"");
        tok.head = *head;
      }
      tok.deprel = cols[7];
      if (cols[8] != "_") tok.deps = parse_deps(cols[8]);
    }
    if (tok.id.is_word() && !tok.head)
      throw ParseError(line_no_, "word token without HEAD");

    if (cols[9] != "_") tok.misc = parse_misc(cols[9]);
    return tok;
  }

  void check_id_sequence(const NodeId& id, ParserState& st) {
    switch (id.kind) {
      case NodeKind::Word:
        if (id.major != st.last_word + 1)
          throw ParseError(line_no_, "word id " + id.str() + " after word " +
                                         std::to_string(st.last_word));
        st.last_word = id.major;
        st.last_empty_major = -1;
        break;
      case NodeKind::Range:
        if (id.end <= id.major)
          throw ParseError(line_no_, "backwards multiword range " + id.str());
        if (id.major != st.last_word + 1)
          throw ParseError(line_no_, "multiword range " + id.str() +
                                         " does not start at the next word");
        if (st.open_range_end >= id.major)
          throw ParseError(line_no_, "overlapping multiword range " + id.str());
        st.open_range_end = id.end;
        st.open_range_line = line_no_;
        break;
      case NodeKind::Empty:
        if (id.major != st.last_word)
          throw ParseError(line_no_, "empty node " + id.str() +
                                         " is not anchored to the previous word");
        if (id.major != st.last_empty_major) {
          st.last_empty_major = id.major;
          st.last_empty_minor = 0;
        }
        if (id.minor != st.last_empty_minor + 1)
          throw ParseError(line_no_, "empty node " + id.str() +
                                         " out of sequence");
        st.last_empty_minor = id.minor;
        break;
    }
  }

  std::vector<Dep> parse_deps(std::string_view col) {
    std::vector<Dep> deps;
    for (auto item : detail::split(col, '|')) {
      std::size_t colon = item.find(':');
      if (colon == std::string_view::npos || colon == 0 ||
          colon + 1 == item.size())
        throw ParseError(line_no_, "bad DEPS item \"" + std::string(item) + "\"");
      auto head = NodeId::parse(item.substr(0, colon));
      if (!head || head->is_range())
        throw ParseError(line_no_, "bad DEPS head in \"" + std::string(item) + "\"");
      deps.push_back({*head, std::string(item.substr(colon + 1))});
    }
    return deps;
  }

  std::vector<MiscItem> parse_misc(std::string_view col) {
    std::vector<MiscItem> misc;
    for (auto item : detail::split(col, '|')) {
      if (item.empty())
        throw ParseError(line_no_, "empty MISC item");
      MiscItem mi;
      std::size_t eq = item.find('=');
      if (eq == std::string_view::npos) {
        mi.key = std::string(item);
      } else if (eq == 0) {
        throw ParseError(line_no_, "MISC item with empty key");
      } else {
        mi.key = std::string(item.substr(0, eq));
        mi.value = std::string(item.substr(eq + 1));
      }
      for (const auto& seen : misc)
        if (seen.key == mi.key)
          throw ParseError(line_no_, "duplicate MISC key \"" + mi.key + "\"");
      misc.push_back(std::move(mi));
    }
    return misc;
  }

  std::istream& in_;
  std::size_t line_no_ = 0;
  bool crlf_warned_ = false;
  std::vector<std::string> warnings_;
};

inline Document parse(std::istream& in,
                      std::vector<std::string>* warnings = nullptr) {
  Document doc;
  SentenceReader reader(in);
  while (auto sent = reader.next()) doc.sentences.push_back(std::move(*sent));
  if (warnings)
    warnings->insert(warnings->end(), reader.warnings().begin(),
                     reader.warnings().end());
  return doc;
}

inline Document parse_string(std::string_view text,
                             std::vector<std::string>* warnings = nullptr) {
  std::istringstream in{std::string(text)};
  return parse(in, warnings);
}

inline Document parse_file(const std::string& path,
                           std::vector<std::string>* warnings = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return parse(in, warnings);
}

inline void serialize(const Token& tok, std::ostream& out) {
  auto join = [&out](const auto& items, auto str) {
    if (items.empty()) {
      out << '_';
      return;
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out << '|';
      out << str(items[i]);
    }
  };
  out << tok.id.str() << '\t' << tok.form << '\t' << tok.lemma << '\t'
      << tok.upos << '\t' << tok.xpos << '\t';
  join(tok.feats, [](const std::string& f) { return f; });
  out << '\t';
  if (tok.head)
    out << *tok.head;
  else
    out << '_';
  out << '\t' << tok.deprel << '\t';
  join(tok.deps, [](const Dep& d) { return d.str(); });
  out << '\t';
  join(tok.misc, [](const MiscItem& m) { return m.str(); });
  out << '\n';
}

inline void serialize(const Sentence& sent, std::ostream& out) {
  for (const auto& comment : sent.comments) out << comment << '\n';
  for (const auto& tok : sent.tokens) serialize(tok, out);
  out << '\n';
}

inline void serialize(const Document& doc, std::ostream& out) {
  for (const auto& sent : doc.sentences) serialize(sent, out);
}

inline std::string serialize(const Document& doc) {
  std::ostringstream out;
  serialize(doc, out);
  return out.str();
}

inline std::string serialize(const Sentence& sent) {
  std::ostringstream out;
  serialize(sent, out);
  return out.str();
}

}  // namespace relabel
