#pragma once

// Rewrites source-framework labels in MISC into unified labels, and checks
// that converted documents can be taken back to their source annotations.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relabel/ancora.hpp"
#include "relabel/conllu.hpp"
#include "relabel/fgd.hpp"
#include "relabel/mapping.hpp"
#include "relabel/report.hpp"
#include "relabel/taxonomy.hpp"

namespace relabel {

struct ConfigError : Error {
  using Error::Error;
};

enum class Framework { Fgd, Ancora };

inline std::string_view framework_name(Framework f) {
  return f == Framework::Fgd ? "fgd" : "ancora";
}

inline Framework parse_framework(std::string_view name) {
  if (name == "fgd") return Framework::Fgd;
  if (name == "ancora") return Framework::Ancora;
  throw ConfigError("unknown framework \"" + std::string(name) + "\"");
}

// The raw source annotation travels with the converted label under this
// key, as <framework>:<raw> with the raw bytes unchanged.
inline constexpr std::string_view kSrcMarkerKey = "DeepRelSrc";

struct ConvertConfig {
  Framework framework = Framework::Fgd;
  std::string src_key;         // empty picks the framework default
  std::string dst_key = "DeepRel";
  bool keep_src = true;
  MapPolicy policy = MapPolicy::Fallback;
  std::string override_table;  // optional TSV path

  std::string resolved_src_key() const {
    if (!src_key.empty()) return src_key;
    return default_src_key(framework);
  }

  static std::string default_src_key(Framework f) {
    return f == Framework::Fgd ? "Functor" : "ArgTem";
  }
};

struct ConvertError : Error {
  ConvertError(std::size_t sentence_no, const std::string& id,
               const NodeId& where, const std::string& reason)
      : Error(locate(sentence_no, id, where) + ": " + reason),
        sentence(sentence_no),
        sent_id(id),
        node(where) {}

  static std::string locate(std::size_t sentence_no, const std::string& id,
                            const NodeId& where) {
    std::string out = "sentence " + std::to_string(sentence_no);
    if (!id.empty()) out += " (" + id + ")";
    return out + ", node " + where.str();
  }

  std::size_t sentence;
  std::string sent_id;
  NodeId node;
};

struct ConvertDiagnostic {
  std::string code;
  std::size_t sentence = 0;
  std::string sent_id;
  NodeId node;
  std::string detail;
};

struct ConvertReport {
  std::size_t sentences = 0;
  std::size_t tokens = 0;   // words and empty nodes
  std::size_t labeled = 0;  // tokens bearing the source key
  std::size_t passthrough = 0;
  std::map<std::string, std::size_t> label_counts;
  std::vector<ConvertDiagnostic> diagnostics;

  std::size_t mapped() const {
    std::size_t n = 0;
    for (const auto& [label, count] : label_counts) n += count;
    return n;
  }

  void merge(const ConvertReport& other) {
    sentences += other.sentences;
    tokens += other.tokens;
    labeled += other.labeled;
    passthrough += other.passthrough;
    for (const auto& [label, count] : other.label_counts)
      label_counts[label] += count;
    diagnostics.insert(diagnostics.end(), other.diagnostics.begin(),
                       other.diagnostics.end());
  }

  std::string to_json() const {
    std::string out = "{";
    out += "\"sentences\":" + std::to_string(sentences);
    out += ",\"tokens\":" + std::to_string(tokens);
    out += ",\"labeled\":" + std::to_string(labeled);
    out += ",\"passthrough\":" + std::to_string(passthrough);
    out += ",\"label_counts\":{";
    bool first = true;
    for (const auto& [label, count] : label_counts) {
      if (!first) out += ",";
      first = false;
      out += detail::json_quote(label) + ":" + std::to_string(count);
    }
    out += "},\"diagnostics\":[";
    for (std::size_t i = 0; i < diagnostics.size(); ++i) {
      const ConvertDiagnostic& d = diagnostics[i];
      if (i) out += ",";
      out += "{\"code\":" + detail::json_quote(d.code) +
             ",\"sentence\":" + std::to_string(d.sentence) +
             ",\"sent_id\":" + detail::json_quote(d.sent_id) +
             ",\"node\":" + detail::json_quote(d.node.str()) +
             ",\"detail\":" + detail::json_quote(d.detail) + "}";
    }
    out += "]}";
    return out;
  }
};

namespace detail {

inline void check_misc_key(const std::string& key, const char* what) {
  if (key.empty())
    throw ConfigError(std::string(what) + " must not be empty");
  if (key.find_first_of("=|\t\n") != std::string::npos)
    throw ConfigError(std::string(what) + " \"" + key +
                      "\" is not a legal MISC key");
}

}  // namespace detail

class Converter {
 public:
  explicit Converter(ConvertConfig cfg)
      : cfg_(std::move(cfg)), src_key_(cfg_.resolved_src_key()) {
    detail::check_misc_key(src_key_, "source key");
    detail::check_misc_key(cfg_.dst_key, "destination key");
    if (src_key_ == cfg_.dst_key)
      throw ConfigError("source and destination keys are both \"" +
                        src_key_ + "\"");
    if (cfg_.framework == Framework::Fgd) {
      fgd_.emplace();
      if (!cfg_.override_table.empty())
        fgd_->load_overrides(cfg_.override_table);
    } else {
      ancora_.emplace();
      if (!cfg_.override_table.empty())
        ancora_->load_overrides(cfg_.override_table);
    }
  }

  const ConvertConfig& config() const { return cfg_; }
  const std::string& src_key() const { return src_key_; }
  const FgdMapping& fgd() const { return *fgd_; }
  const AncoraMapping& ancora() const { return *ancora_; }

  MapResult map_value(const std::string& raw, MapPolicy policy) const {
    return fgd_ ? fgd_->map(raw, policy) : ancora_->map_raw(raw, policy);
  }

  void convert_sentence(Sentence& sent, std::size_t index,
                        ConvertReport& report) const {
    ++report.sentences;
    const std::string sid = sent.sent_id();
    for (Token& tok : sent.tokens) {
      if (tok.id.is_range()) continue;
      ++report.tokens;

      if ((src_key_ == "Functor" || src_key_ == "ArgTem") &&
          tok.find_misc("Functor") && tok.find_misc("ArgTem"))
        throw ConvertError(index, sid, tok.id,
                           "token carries both Functor and ArgTem");

      auto raw = tok.misc_attr(src_key_);
      if (!raw) continue;
      ++report.labeled;

      MapResult result;
      try {
        result = map_value(*raw, cfg_.policy);
      } catch (const Error& e) {
        throw ConvertError(index, sid, tok.id, e.what());
      }

      if (result.diagnostic)
        report.diagnostics.push_back(
            {*result.diagnostic, index, sid, tok.id, *raw});
      if (result.label)
        ++report.label_counts[result.label->str()];
      else
        ++report.passthrough;

      if (auto old = tok.misc_attr(cfg_.dst_key))
        report.diagnostics.push_back(
            {std::string(diag::kOverwroteDst), index, sid, tok.id, *old});
      tok.set_misc_attr(cfg_.dst_key, result.target());
      if (cfg_.keep_src)
        tok.set_misc_attr(kSrcMarkerKey,
                          std::string(framework_name(cfg_.framework)) + ":" +
                              *raw);
    }
  }

  ConvertReport convert_document(Document& doc) const {
    ConvertReport report;
    for (std::size_t i = 0; i < doc.sentences.size(); ++i)
      convert_sentence(doc.sentences[i], i + 1, report);
    return report;
  }

 private:
  ConvertConfig cfg_;
  std::string src_key_;
  std::optional<FgdMapping> fgd_;
  std::optional<AncoraMapping> ancora_;
};

namespace codes {

inline constexpr std::string_view kMissingSrc = "MISSING_SRC";
inline constexpr std::string_view kMissingDst = "MISSING_DST";
inline constexpr std::string_view kSrcFrameworkMismatch =
    "SRC_FRAMEWORK_MISMATCH";
inline constexpr std::string_view kRoundtripAMismatch = "ROUNDTRIP_A_MISMATCH";
inline constexpr std::string_view kRoundtripBMismatch = "ROUNDTRIP_B_MISMATCH";
inline constexpr std::string_view kBadLabel = "BAD_LABEL";

}  // namespace codes

enum class RoundtripMode { A, B };

inline RoundtripMode parse_roundtrip_mode(std::string_view name) {
  if (name == "a" || name == "A") return RoundtripMode::A;
  if (name == "b" || name == "B") return RoundtripMode::B;
  throw ConfigError("unknown roundtrip mode \"" + std::string(name) + "\"");
}

namespace detail {

struct RoundtripLoss {
  std::string_view code;
  std::string message;
};

// Checks one converted token in mode B: the inverse table must take the
// unified label back to the source annotation; labels the inverse cannot
// see (residuals, extensions) pass when re-mapping the source agrees with
// the stored unified label.
inline std::optional<RoundtripLoss> roundtrip_b_token(const Converter& conv,
                                                      const std::string& dst,
                                                      const std::string& raw) {
  if (dst.rfind("SRC:", 0) == 0) {
    if (dst.substr(4) != raw)
      return RoundtripLoss{codes::kRoundtripBMismatch,
                           "passthrough marker \"" + dst +
                               "\" does not carry \"" + raw + "\""};
    return std::nullopt;
  }

  UnifiedLabel label;
  try {
    label = parse_label(dst);
  } catch (const Error& e) {
    return RoundtripLoss{codes::kBadLabel,
                         std::string("unparsable unified label: ") + e.what()};
  }

  bool recovered = false;
  if (conv.config().framework == Framework::Fgd) {
    try {
      recovered = conv.fgd().inverse(label) == raw;
    } catch (const NoFgdSourceError&) {
    }
  } else {
    try {
      auto source = conv.ancora().inverse(label);
      auto ann = conv.ancora().parse_annotation(raw);
      recovered = source.role == ann.role &&
                  position_in_class(ann.position, source.positions);
    } catch (const Error&) {
    }
  }
  if (recovered) return std::nullopt;

  try {
    if (conv.map_value(raw, conv.config().policy).target() == dst)
      return std::nullopt;
  } catch (const Error&) {
  }
  return RoundtripLoss{codes::kRoundtripBMismatch,
                       "label \"" + dst + "\" does not recover source \"" +
                           raw + "\""};
}

}  // namespace detail

inline ValidationReport roundtrip_check(const Document& doc,
                                        const ConvertConfig& cfg,
                                        RoundtripMode mode) {
  Converter conv(cfg);
  ValidationReport report;

  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    const Sentence& sent = doc.sentences[i];
    const std::string sid = sent.sent_id();
    auto add = [&](std::string_view code, const NodeId& node,
                   std::string msg) {
      report.add({Severity::Error, std::string(code), i + 1, sid, node,
                  std::move(msg)});
    };

    for (const Token& tok : sent.tokens) {
      if (tok.id.is_range()) continue;
      auto dst = tok.misc_attr(cfg.dst_key);
      auto marker = tok.misc_attr(kSrcMarkerKey);
      if (!dst && !marker) continue;
      if (dst && !marker) {
        add(codes::kMissingSrc, tok.id,
            cfg.dst_key + " present but " + std::string(kSrcMarkerKey) +
                " is missing");
        continue;
      }
      if (marker && !dst) {
        add(codes::kMissingDst, tok.id,
            std::string(kSrcMarkerKey) + " present but " + cfg.dst_key +
                " is missing");
        continue;
      }

      auto colon = marker->find(':');
      if (colon == std::string::npos) {
        add(codes::kSrcFrameworkMismatch, tok.id,
            "malformed " + std::string(kSrcMarkerKey) + " \"" + *marker +
                "\"");
        continue;
      }
      std::string fw = marker->substr(0, colon);
      std::string raw = marker->substr(colon + 1);
      if (fw != framework_name(cfg.framework)) {
        add(codes::kSrcFrameworkMismatch, tok.id,
            "marker framework \"" + fw + "\" but checking " +
                std::string(framework_name(cfg.framework)));
        continue;
      }

      if (mode == RoundtripMode::A) {
        std::optional<std::string> remapped;
        try {
          remapped = conv.map_value(raw, cfg.policy).target();
        } catch (const Error& e) {
          add(codes::kRoundtripAMismatch, tok.id,
              "cannot re-map \"" + raw + "\": " + e.what());
          continue;
        }
        if (*remapped != *dst)
          add(codes::kRoundtripAMismatch, tok.id,
              cfg.dst_key + " is \"" + *dst + "\" but re-mapping gives \"" +
                  *remapped + "\"");
      } else {
        if (auto loss = detail::roundtrip_b_token(conv, *dst, raw))
          add(loss->code, tok.id, std::move(loss->message));
      }
    }
  }
  report.sort();
  return report;
}

}  // namespace relabel
