#include <doctest.h>

#include <algorithm>

#include "econet/error.hpp"
#include "econet/glossary.hpp"

using namespace econet;

namespace {

std::vector<RawEntry> entries(std::initializer_list<const char*> texts, const char* source) {
  std::vector<RawEntry> out;
  for (const char* t : texts) out.push_back({t, {}, source});
  return out;
}

std::vector<std::string> canonicals(const Glossary& g) {
  std::vector<std::string> out;
  for (const auto& l : g.locutions()) out.push_back(l.canonical);
  return out;
}

}  // namespace

TEST_CASE("plural rules") {
  CHECK(pluralize("tax rate") == "tax rates");
  CHECK(pluralize("tax") == "taxes");
  CHECK(pluralize("policy") == "policies");
  CHECK(pluralize("day") == "days");
  CHECK(pluralize("wealth tax") == "wealth taxes");
  CHECK(pluralize("switch") == "switches");
}

TEST_CASE("variants of a plain entry") {
  const Locution l = generate_variants({"Tax Rate", {}, "a"});
  CHECK(l.canonical == "tax rate");
  CHECK(l.variants == std::set<std::string>{"tax rate", "tax rates"});
  CHECK(l.sources == std::set<std::string>{"a"});
}

TEST_CASE("hyphenated entries also match as separate words") {
  const Locution l = generate_variants({"most-favoured nation", {}, "a"});
  CHECK(l.variants.count("most-favoured nation"));
  CHECK(l.variants.count("most favoured nation"));
  CHECK(l.variants.count("most favoured nations"));
}

TEST_CASE("explicit variants are kept") {
  const Locution l = generate_variants({"OECD", {"Organization for Economic Cooperation and Development"}, "a"});
  CHECK(l.canonical == "oecd");
  CHECK(l.variants.count("organization for economic cooperation and development"));
}

TEST_CASE("empty entry is rejected") {
  CHECK_THROWS_AS(generate_variants({" ,; ", {}, "a"}), ValidationError);
}

TEST_CASE("merging sources") {
  const Glossary g = merge_glossaries(entries({"tax"}, "a"), entries({"tax", "yield"}, "b"));
  CHECK(canonicals(g) == std::vector<std::string>{"tax", "yield"});
  const auto tax = g.find("tax");
  REQUIRE(tax);
  CHECK(g.locutions()[*tax].sources == std::set<std::string>{"a", "b"});

  const Glossary h = merge_glossaries(entries({"most-favoured nation"}, "a"), {});
  REQUIRE(h.size() == 1);
  CHECK(h.locutions()[0].canonical == "most-favoured nation");
  CHECK(h.locutions()[0].variants.count("most favoured nation"));
}

TEST_CASE("merge is idempotent and order independent") {
  const auto a = entries({"interest", "interest rate", "budget"}, "a");
  const auto b = entries({"interest", "deficit"}, "b");
  CHECK(merge_glossaries(a, a) == merge_glossaries(a, {}));
  CHECK(merge_glossaries(a, b) == merge_glossaries(b, a));
}

TEST_CASE("a plural entry folds into its singular") {
  const Glossary g = merge_glossaries(entries({"tariff", "tariffs"}, "a"), {});
  CHECK(canonicals(g) == std::vector<std::string>{"tariff"});
}

TEST_CASE("variant collision names both canonicals") {
  std::vector<RawEntry> a{{"imf", {"fund"}, "a"}};
  std::vector<RawEntry> b{{"fund", {}, "b"}};
  try {
    merge_glossaries(a, b);
    FAIL("expected a collision");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("imf") != std::string::npos);
    CHECK(msg.find("fund") != std::string::npos);
  }
}

TEST_CASE("tsv and json sources") {
  const auto tsv = parse_glossary_tsv("# comment\n\ntax rate\nOECD\torganisation for economic co-operation|o.e.c.d\n", "t");
  REQUIRE(tsv.size() == 2);
  CHECK(tsv[1].variants.size() == 2);
  const auto json = parse_glossary_json(R"([{"canonical":"inflation"},{"canonical":"gdp","variants":["gross domestic product"],"source":"x"}])", "d");
  REQUIRE(json.size() == 2);
  CHECK(json[0].source == "d");
  CHECK(json[1].source == "x");
}

TEST_CASE("json round trip") {
  const Glossary g = merge_glossaries(entries({"tax", "tax rate", "most-favoured nation"}, "a"), entries({"gdp"}, "b"));
  CHECK(glossary_from_json(to_json(g)) == g);
  CHECK(g.max_length() == 3);
}
