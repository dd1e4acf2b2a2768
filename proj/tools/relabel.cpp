// Command-line front end: label conversion, graph validation, label
// statistics, roundtrip checking and table export over CoNLL-U files.

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "relabel/relabel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : relabel::Error {
  using Error::Error;
};

// "-" selects the standard stream.
class Input {
 public:
  explicit Input(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoError("cannot open " + path);
    }
  }
  std::istream& stream() { return file_.is_open() ? file_ : std::cin; }

 private:
  std::ifstream file_;
};

void report_reader_warnings(const relabel::SentenceReader& reader) {
  for (const std::string& warning : reader.warnings())
    std::cerr << "relabel: warning: " << warning << "\n";
}

struct ConvertArgs {
  relabel::ConvertConfig cfg;
  std::string framework = "fgd";
  std::string policy = "fallback";
  std::string in = "-";
  std::string out = "-";
  int jobs = 1;
};

void convert_stream(const relabel::Converter& conv, std::istream& in,
                    std::ostream& out, int jobs,
                    relabel::ConvertReport& total) {
  relabel::SentenceReader reader(in);
  std::size_t index = 0;

  if (jobs <= 1) {
    while (auto sent = reader.next()) {
      conv.convert_sentence(*sent, ++index, total);
      relabel::serialize(*sent, out);
    }
    report_reader_warnings(reader);
    return;
  }

  const std::size_t chunk_cap = 256;
  std::vector<relabel::Sentence> chunk;
  chunk.reserve(chunk_cap);
  while (true) {
    chunk.clear();
    while (chunk.size() < chunk_cap) {
      auto sent = reader.next();
      if (!sent) break;
      chunk.push_back(std::move(*sent));
    }
    if (chunk.empty()) break;

    std::vector<relabel::ConvertReport> reports(chunk.size());
    std::vector<std::exception_ptr> failures(chunk.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
      for (std::size_t i; (i = cursor.fetch_add(1)) < chunk.size();) {
        try {
          conv.convert_sentence(chunk[i], index + i + 1, reports[i]);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    for (std::size_t i = 0; i < chunk.size(); ++i) {
      if (failures[i]) std::rethrow_exception(failures[i]);
      total.merge(reports[i]);
      relabel::serialize(chunk[i], out);
    }
    index += chunk.size();
  }
  report_reader_warnings(reader);
}

int run_convert(const ConvertArgs& args) {
  relabel::ConvertConfig cfg = args.cfg;
  cfg.framework = relabel::parse_framework(args.framework);
  if (auto policy = relabel::parse_policy(args.policy))
    cfg.policy = *policy;
  else
    throw relabel::ConfigError("unknown policy \"" + args.policy + "\"");
  relabel::Converter conv(cfg);

  Input in(args.in);
  relabel::ConvertReport report;
  if (args.out == "-") {
    convert_stream(conv, in.stream(), std::cout, args.jobs, report);
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to standard output");
  } else {
    std::string tmp = args.out + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw IoError("cannot write " + tmp);
      convert_stream(conv, in.stream(), out, args.jobs, report);
      out.flush();
      if (!out) throw IoError("cannot write " + tmp);
    }
    if (std::rename(tmp.c_str(), args.out.c_str()) != 0)
      throw IoError("cannot move " + tmp + " to " + args.out);
  }
  std::cerr << report.to_json() << "\n";
  return kExitOk;
}

struct ValidateArgs {
  std::string in = "-";
  std::string format = "text";
};

int run_validate(const ValidateArgs& args) {
  Input in(args.in);
  relabel::SentenceReader reader(in.stream());
  relabel::ValidationReport report;
  std::size_t index = 0;
  while (auto sent = reader.next())
    relabel::validate_sentence(*sent, ++index, report);
  report_reader_warnings(reader);
  report.sort();

  if (args.format == "json")
    std::cout << report.render_json() << "\n";
  else
    report.render_text(std::cout);
  std::cerr << index << " sentences: " << report.errors() << " errors, "
            << report.warnings() << " warnings, "
            << report.count(relabel::Severity::Info) << " infos\n";
  return report.has_errors() ? kExitFindings : kExitOk;
}

struct StatsArgs {
  std::string in = "-";
  std::string key = "DeepRel";
  std::string format = "tsv";
};

relabel::FreqTable count_stream(const std::string& path,
                                const std::string& key) {
  Input in(path);
  relabel::SentenceReader reader(in.stream());
  relabel::FreqTable table;
  while (auto sent = reader.next()) relabel::count_labels(*sent, key, table);
  report_reader_warnings(reader);
  return table;
}

int run_stats(const StatsArgs& args) {
  relabel::FreqTable table = count_stream(args.in, args.key);
  if (args.format == "json")
    std::cout << table.render_json() << "\n";
  else if (args.format == "markdown")
    std::cout << table.render_markdown();
  else
    std::cout << table.render_tsv();
  return kExitOk;
}

struct RoundtripArgs {
  relabel::ConvertConfig cfg;
  std::string framework = "fgd";
  std::string policy = "fallback";
  std::string in = "-";
  std::string mode = "a";
  std::string format = "text";
};

int run_roundtrip(const RoundtripArgs& args) {
  relabel::ConvertConfig cfg = args.cfg;
  cfg.framework = relabel::parse_framework(args.framework);
  if (auto policy = relabel::parse_policy(args.policy))
    cfg.policy = *policy;
  else
    throw relabel::ConfigError("unknown policy \"" + args.policy + "\"");
  relabel::RoundtripMode mode = relabel::parse_roundtrip_mode(args.mode);

  Input in(args.in);
  relabel::SentenceReader reader(in.stream());
  relabel::ValidationReport report;
  std::size_t index = 0;
  while (auto sent = reader.next()) {
    ++index;
    relabel::Document one;
    one.sentences.push_back(std::move(*sent));
    relabel::ValidationReport partial = roundtrip_check(one, cfg, mode);
    for (relabel::Finding& f : partial.findings) {
      f.sentence = index;
      report.add(std::move(f));
    }
  }
  report_reader_warnings(reader);
  report.sort();

  if (args.format == "json")
    std::cout << report.render_json() << "\n";
  else
    report.render_text(std::cout);
  std::cerr << "mode " << (mode == relabel::RoundtripMode::A ? "A" : "B")
            << ": " << report.errors() << " losses in " << index
            << " sentences\n";
  return report.has_errors() ? kExitFindings : kExitOk;
}

struct TableArgs {
  std::string what = "mapping";
  std::string framework = "fgd";
  std::string format = "tsv";
  std::string override_table;
};

std::string fgd_table_tsv(const relabel::FgdMapping& mapping) {
  std::string out = "functor\tlabel\tprovenance\n";
  for (const auto& [functor, entry] : mapping.table())
    out += functor + "\t" + entry.label.str() + "\t" + entry.provenance +
           "\n";
  for (const auto& [functor, provenance] : mapping.unmapped())
    out += functor + "\t_\t" + provenance + "\n";
  return out;
}

std::string fgd_table_json(const relabel::FgdMapping& mapping) {
  using relabel::detail::json_quote;
  std::string out = "{\"framework\":\"fgd\",\"entries\":[";
  bool first = true;
  for (const auto& [functor, entry] : mapping.table()) {
    if (!first) out += ",";
    first = false;
    out += "{\"functor\":" + json_quote(functor) +
           ",\"label\":" + json_quote(entry.label.str()) +
           ",\"provenance\":" + json_quote(entry.provenance) + "}";
  }
  out += "],\"unmapped\":[";
  first = true;
  for (const auto& [functor, provenance] : mapping.unmapped()) {
    if (!first) out += ",";
    first = false;
    out += "{\"functor\":" + json_quote(functor) +
           ",\"provenance\":" + json_quote(provenance) + "}";
  }
  out += "]}";
  return out;
}

std::string ancora_table_tsv(const relabel::AncoraMapping& mapping) {
  std::string out = "role\tpositions\tlabel\tresidual\tprovenance\n";
  for (const auto& rule : mapping.rules()) {
    std::string role = rule.role.empty() ? "argL" : rule.role;
    std::string positions =
        rule.position ? std::string(position_name(*rule.position)) : "*";
    out += role + "\t" + positions + "\t" + rule.label.str() + "\t" +
           (rule.residual ? "yes" : "no") + "\t" + rule.provenance + "\n";
  }
  return out;
}

std::string ancora_table_json(const relabel::AncoraMapping& mapping) {
  using relabel::detail::json_quote;
  std::string out = "{\"framework\":\"ancora\",\"rules\":[";
  bool first = true;
  for (const auto& rule : mapping.rules()) {
    if (!first) out += ",";
    first = false;
    out += "{\"role\":" + json_quote(rule.role.empty() ? "argL" : rule.role) +
           ",\"positions\":" +
           (rule.position ? json_quote(position_name(*rule.position))
                          : std::string("null")) +
           ",\"label\":" + json_quote(rule.label.str()) +
           ",\"residual\":" + (rule.residual ? "true" : "false") +
           ",\"provenance\":" + json_quote(rule.provenance) + "}";
  }
  out += "]}";
  return out;
}

int run_table(const TableArgs& args) {
  bool json = args.format == "json";
  if (args.what == "taxonomy") {
    const relabel::Taxonomy& tax = relabel::Taxonomy::instance();
    if (json)
      std::cout << tax.to_json() << "\n";
    else
      std::cout << tax.to_tsv();
    return kExitOk;
  }
  if (relabel::parse_framework(args.framework) == relabel::Framework::Fgd) {
    relabel::FgdMapping mapping;
    if (!args.override_table.empty())
      mapping.load_overrides(args.override_table);
    std::cout << (json ? fgd_table_json(mapping) + "\n"
                       : fgd_table_tsv(mapping));
  } else {
    relabel::AncoraMapping mapping;
    if (!args.override_table.empty())
      mapping.load_overrides(args.override_table);
    std::cout << (json ? ancora_table_json(mapping) + "\n"
                       : ancora_table_tsv(mapping));
  }
  return kExitOk;
}

struct CompareArgs {
  std::string in = "-";
  std::string key = "DeepRel";
  std::string golden;
  std::string mode = "assert";
};

int run_compare(const CompareArgs& args) {
  relabel::FreqTable table = count_stream(args.in, args.key);
  auto golden = relabel::load_golden_counts(args.golden);
  auto diffs = relabel::compare_counts(golden, table);

  std::cout << "label\texpected\tactual\tdelta\n";
  for (const relabel::FreqDiff& d : diffs)
    std::cout << d.label << "\t" << d.expected << "\t" << d.actual << "\t"
              << d.delta() << "\n";
  std::cerr << diffs.size() << " labels differ\n";
  if (args.mode == "assert" && !diffs.empty()) return kExitFindings;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deep-syntactic relation label harmonizer for CoNLL-U files"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file with per-subcommand sections")
      ->envname("RELABEL_CONFIG");

  ConvertArgs convert_args;
  CLI::App* convert = app.add_subcommand(
      "convert", "Map source labels in MISC to unified labels");
  convert->add_option("--from,--framework", convert_args.framework,
                      "Source framework")
      ->check(CLI::IsMember({"fgd", "ancora"}));
  convert->add_option("--in", convert_args.in, "Input file, - for stdin");
  convert->add_option("--out", convert_args.out, "Output file, - for stdout");
  convert->add_option("--policy", convert_args.policy,
                      "Unmapped-label policy")
      ->check(CLI::IsMember({"strict", "passthrough", "fallback"}));
  convert->add_option("--src-key,--src_key", convert_args.cfg.src_key,
                      "MISC key holding the source label");
  convert->add_option("--dst-key,--dst_key", convert_args.cfg.dst_key,
                      "MISC key receiving the unified label");
  convert->add_flag("--keep-src,--keep_src,!--no-keep-src",
                    convert_args.cfg.keep_src,
                    "Record the source label under DeepRelSrc");
  convert->add_option("--override,--override_table",
                      convert_args.cfg.override_table,
                      "TSV table replacing or extending mapping entries");
  convert->add_option("--jobs", convert_args.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);

  ValidateArgs validate_args;
  CLI::App* validate = app.add_subcommand(
      "validate", "Check basic trees and enhanced graphs");
  validate->add_option("--in", validate_args.in, "Input file, - for stdin");
  validate->add_option("--format", validate_args.format, "Findings format")
      ->check(CLI::IsMember({"text", "json"}));

  StatsArgs stats_args;
  CLI::App* stats =
      app.add_subcommand("stats", "Count label values under a MISC key");
  stats->add_option("--in", stats_args.in, "Input file, - for stdin");
  stats->add_option("--key", stats_args.key, "MISC key to count");
  stats->add_option("--format", stats_args.format, "Table format")
      ->check(CLI::IsMember({"tsv", "json", "markdown"}));

  RoundtripArgs roundtrip_args;
  CLI::App* roundtrip = app.add_subcommand(
      "roundtrip", "Check that converted labels recover their source");
  roundtrip->add_option("--in", roundtrip_args.in, "Converted file");
  roundtrip->add_option("--from,--framework", roundtrip_args.framework,
                        "Source framework")
      ->check(CLI::IsMember({"fgd", "ancora"}));
  roundtrip->add_option("--mode", roundtrip_args.mode,
                        "a re-maps the source, b inverts the label")
      ->check(CLI::IsMember({"a", "b", "A", "B"}));
  roundtrip->add_option("--policy", roundtrip_args.policy,
                        "Unmapped-label policy")
      ->check(CLI::IsMember({"strict", "passthrough", "fallback"}));
  roundtrip->add_option("--src-key,--src_key", roundtrip_args.cfg.src_key,
                        "MISC key holding the source label");
  roundtrip->add_option("--dst-key,--dst_key", roundtrip_args.cfg.dst_key,
                        "MISC key holding the unified label");
  roundtrip->add_option("--override,--override_table",
                        roundtrip_args.cfg.override_table,
                        "TSV table replacing or extending mapping entries");
  roundtrip->add_option("--format", roundtrip_args.format, "Findings format")
      ->check(CLI::IsMember({"text", "json"}));

  TableArgs table_args;
  CLI::App* table =
      app.add_subcommand("table", "Export the active mapping or registry");
  table->add_option("--what", table_args.what, "Which table to export")
      ->check(CLI::IsMember({"mapping", "taxonomy"}));
  table->add_option("--from,--framework", table_args.framework,
                    "Mapping to export")
      ->check(CLI::IsMember({"fgd", "ancora"}));
  table->add_option("--format", table_args.format, "Output format")
      ->check(CLI::IsMember({"tsv", "json"}));
  table->add_option("--override,--override_table", table_args.override_table,
                    "TSV table applied before exporting");

  CompareArgs compare_args;
  CLI::App* compare = app.add_subcommand(
      "compare", "Compare label counts against a golden TSV");
  compare->add_option("--in", compare_args.in, "Input file, - for stdin");
  compare->add_option("--key", compare_args.key, "MISC key to count");
  compare->add_option("--golden", compare_args.golden, "Golden counts TSV")
      ->required();
  compare->add_option("--mode", compare_args.mode,
                      "assert exits 1 on any difference")
      ->check(CLI::IsMember({"assert", "report"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (convert->parsed()) return run_convert(convert_args);
    if (validate->parsed()) return run_validate(validate_args);
    if (stats->parsed()) return run_stats(stats_args);
    if (roundtrip->parsed()) return run_roundtrip(roundtrip_args);
    if (table->parsed()) return run_table(table_args);
    if (compare->parsed()) return run_compare(compare_args);
  } catch (const relabel::ParseError& e) {
    std::cerr << "relabel: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "relabel: " << e.what() << "\n";
    return kExitIo;
  } catch (const relabel::ConvertError& e) {
    std::cerr << "relabel: " << e.what() << "\n";
    return kExitFindings;
  } catch (const relabel::Error& e) {
    std::cerr << "relabel: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
