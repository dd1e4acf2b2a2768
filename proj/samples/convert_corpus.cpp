// Reads a CoNLL-U file whose MISC column carries Functor= annotations,
// rewrites them as unified DeepRel= labels, and prints the result together
// with a count of what was mapped.

#include <iostream>

#include "relabel/relabel.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: convert_corpus FILE.conllu\n";
    return 2;
  }

  try {
    relabel::Document doc = relabel::parse_file(argv[1]);

    relabel::ConvertConfig cfg;
    cfg.framework = relabel::Framework::Fgd;
    cfg.policy = relabel::MapPolicy::Fallback;
    relabel::Converter converter(cfg);
    relabel::ConvertReport report = converter.convert_document(doc);

    std::cout << relabel::serialize(doc);
    std::cerr << report.labeled << " annotations mapped across "
              << report.sentences << " sentences\n";
    for (const auto& [label, count] : report.label_counts)
      std::cerr << "  " << label << "\t" << count << "\n";
    for (const auto& d : report.diagnostics)
      std::cerr << d.code << " at sentence " << d.sentence << ": "
                << d.detail << "\n";
  } catch (const relabel::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
