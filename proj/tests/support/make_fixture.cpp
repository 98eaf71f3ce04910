// Writes the planted 40-document fixture: make_fixture DIR [SEED]
#include <cstdlib>
#include <iostream>
#include <string>

#include "planted.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_fixture DIR [SEED]\n";
    return 1;
  }
  const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 7;
  const auto corpus = econet::testing::planted_corpus(seed);
  econet::testing::write_planted(corpus, argv[1]);
  std::cout << "core:";
  for (const auto& id : corpus.core_ids) std::cout << ' ' << id;
  std::cout << '\n';
  return 0;
}
