#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "econet/corpus.hpp"

namespace econet::testing {

/// Synthetic 40-document corpus with a planted 12-document core.
///
/// Core documents share heavy use of 14 common terms and each carries one
/// rare core term. A side group of 11 documents uses its own 9 terms. The
/// 17 periphery documents mix a 14-term pool, five common terms, many
/// one-off terms and one rare periphery term; the first three also borrow
/// side-group terms, which ties the side group to the rest of the network.
struct PlantedCorpus {
  std::vector<std::string> ids;
  /// 'C' core, 'A' side group, 'B' periphery.
  std::vector<char> group;
  std::vector<std::string> texts;
  std::vector<MetadataRow> metadata;
  std::string glossary_tsv;
  std::set<std::string> core_ids;
  /// Terms used by exactly one of core and non-core documents.
  std::set<std::string> block_specific;
  std::set<std::string> rare_core;
  std::set<std::string> rare_periphery;
};

PlantedCorpus planted_corpus(std::uint64_t seed);

/// Writes corpus/<id>.txt, metadata.csv, glossary.tsv and periods.csv.
void write_planted(const PlantedCorpus& corpus, const std::filesystem::path& dir);

}  // namespace econet::testing
