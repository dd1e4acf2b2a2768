// Tallies the values of one MISC attribute across a corpus and prints the
// frequency table as Markdown, most frequent first.

#include <iostream>

#include "relabel/relabel.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: label_frequencies FILE.conllu MISC_KEY\n";
    return 2;
  }

  try {
    relabel::Document doc = relabel::parse_file(argv[1]);
    relabel::FreqTable table = relabel::count_labels(doc, argv[2]);
    std::cout << table.render_markdown();
    std::cerr << table.distinct() << " distinct labels, " << table.total()
              << " occurrences\n";
  } catch (const relabel::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
