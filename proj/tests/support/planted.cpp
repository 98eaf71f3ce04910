#include "planted.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <utility>

#include "econet/rng.hpp"

namespace econet::testing {
namespace {

constexpr std::size_t kDocs = 40, kCore = 12, kSide = 11;

std::string numbered(const char* stem, std::size_t i, int width) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%0*zu", stem, width, i);
  return buf;
}

std::vector<std::string> family(const char* stem, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(numbered(stem, i, 2));
  return out;
}

std::vector<std::string> pick(const std::vector<std::string>& pool, std::size_t k, Rng& rng) {
  std::vector<std::string> copy = pool;
  rng.shuffle(std::span<std::string>(copy));
  copy.resize(k);
  return copy;
}

const std::vector<std::string> kFiller = {"the", "and", "we", "will", "our", "people", "today", "must", "this", "year"};

}  // namespace

PlantedCorpus planted_corpus(std::uint64_t seed) {
  Rng rng(seed);
  const auto shared = family("sharedterm", 14);
  const auto pool = family("periphterm", 14);
  const auto side = family("groupterm", 9);
  const std::vector<std::string> rare_core = {"manufacturing", "tariff", "steel", "exports"};
  const std::vector<std::string> rare_periphery = {"innovation", "startup", "broadband", "research"};
  std::size_t noise = 0;
  auto fresh = [&] { return numbered("noise", noise++, 4); };

  std::vector<char> groups(kDocs, 'B');
  for (std::size_t i = 0; i < kCore; ++i) groups[i] = 'C';
  for (std::size_t i = kCore; i < kCore + kSide; ++i) groups[i] = 'A';

  std::vector<std::vector<std::pair<std::string, int>>> bags(kDocs);
  std::size_t periphery_seen = 0;
  for (std::size_t d = 0; d < kDocs; ++d) {
    auto& bag = bags[d];
    if (groups[d] == 'C') {
      for (const auto& t : shared) bag.emplace_back(t, 2);
      for (int k = 0; k < 2; ++k) bag.emplace_back(fresh(), 1);
      bag.emplace_back(pick(rare_core, 1, rng)[0], 1);
    } else if (groups[d] == 'A') {
      for (const auto& t : side) bag.emplace_back(t, 2);
    } else {
      for (const auto& t : pick(pool, 7, rng)) bag.emplace_back(t, 2);
      for (const auto& t : pick(shared, 5, rng)) bag.emplace_back(t, 2);
      for (int k = 0; k < 20; ++k) bag.emplace_back(fresh(), 1);
      bag.emplace_back(pick(rare_periphery, 1, rng)[0], 1);
      if (periphery_seen++ < 3) {
        for (const auto& t : pick(side, 6, rng)) bag.emplace_back(t, 2);
      }
    }
  }

  // Document d gets id slot[d]; the slot order is shuffled so that group
  // membership does not follow id order.
  std::vector<std::size_t> slot(kDocs);
  for (std::size_t i = 0; i < kDocs; ++i) slot[i] = i;
  rng.shuffle(std::span<std::size_t>(slot));

  PlantedCorpus out;
  out.ids.resize(kDocs);
  out.group.resize(kDocs);
  out.texts.resize(kDocs);
  std::map<std::string, std::set<char>> used_by;
  for (std::size_t d = 0; d < kDocs; ++d) {
    const std::size_t s = slot[d];
    out.ids[s] = numbered("doc", s + 1, 2);
    out.group[s] = groups[d];
    std::vector<std::string> tokens;
    for (const auto& [term, count] : bags[d]) {
      for (int k = 0; k < count; ++k) tokens.push_back(term);
      used_by[term].insert(groups[d] == 'C' ? 'C' : 'P');
    }
    for (std::size_t k = 0; k < bags[d].size(); ++k) tokens.push_back(kFiller[rng.below(kFiller.size())]);
    rng.shuffle(std::span<std::string>(tokens));
    std::string text;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      text += tokens[k];
      text += (k + 1) % 12 == 0 ? ".\n" : " ";
    }
    out.texts[s] = text;
    if (groups[d] == 'C') out.core_ids.insert(out.ids[s]);
  }
  const char* speakers[] = {"Adams", "Baker", "Carter", "Dewey"};
  const char* categories[] = {"address", "remarks", "interview"};
  for (std::size_t s = 0; s < kDocs; ++s) {
    const int year = 2005 + static_cast<int>(s / 6);
    const int month = 1 + static_cast<int>((s * 5) % 12);
    char date[16];
    std::snprintf(date, sizeof date, "%04d-%02d-15", year, month);
    out.metadata.push_back({out.ids[s], date, speakers[s % 4], categories[s % 3]});
  }
  for (const auto& [term, groups_of] : used_by) {
    out.glossary_tsv += term + "\n";
    if (groups_of.size() == 1) out.block_specific.insert(term);
  }
  out.rare_core.insert(rare_core.begin(), rare_core.end());
  out.rare_periphery.insert(rare_periphery.begin(), rare_periphery.end());
  return out;
}

void write_planted(const PlantedCorpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "corpus");
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
  };
  for (std::size_t i = 0; i < corpus.ids.size(); ++i) open(dir / "corpus" / (corpus.ids[i] + ".txt")) << corpus.texts[i];
  auto meta = open(dir / "metadata.csv");
  meta << "id,date,speaker,category\n";
  for (const auto& m : corpus.metadata) meta << m.id << ',' << m.date << ',' << m.speaker << ',' << m.category << '\n';
  open(dir / "glossary.tsv") << "# planted fixture glossary\n" << corpus.glossary_tsv;
  open(dir / "periods.csv") << "start,end,label\n2008-01-01,2009-06-30,recession\n2001-03-01,2001-11-30,recession\n";
}

}  // namespace econet::testing
