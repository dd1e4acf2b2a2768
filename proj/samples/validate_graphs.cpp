// Checks the enhanced dependency graphs of a CoNLL-U file: every node must
// hang off a single root, and cycles are tolerated only when a relative
// clause creates them. Findings print one per line.

#include <iostream>

#include "relabel/relabel.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: validate_graphs FILE.conllu\n";
    return 2;
  }

  try {
    relabel::Document doc = relabel::parse_file(argv[1]);
    relabel::ValidationReport report = relabel::validate_document(doc);

    if (report.findings.empty()) {
      std::cout << "all " << doc.sentences.size() << " graphs are clean\n";
      return 0;
    }
    report.render_text(std::cout);
    return report.has_errors() ? 1 : 0;
  } catch (const relabel::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
