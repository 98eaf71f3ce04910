#include "econet/glossary.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "econet/error.hpp"
#include "econet/text.hpp"

namespace econet {
namespace {

std::size_t token_count(std::string_view joined) {
  return static_cast<std::size_t>(std::count(joined.begin(), joined.end(), ' ')) + 1;
}

std::string split_hyphens(std::string_view form) {
  std::string out(form);
  std::replace(out.begin(), out.end(), '-', ' ');
  return text::join(text::split_tokens(out));
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open glossary source " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string normalize_locution_text(std::string_view raw) {
  std::vector<std::string> tokens;
  for (auto& token : text::split_tokens(raw, /*keep_hyphen=*/true)) {
    std::string cleaned;
    for (char c : token) {
      if (c == '-' && (cleaned.empty() || cleaned.back() == '-')) continue;
      cleaned.push_back(c);
    }
    while (!cleaned.empty() && cleaned.back() == '-') cleaned.pop_back();
    if (!cleaned.empty()) tokens.push_back(std::move(cleaned));
  }
  return text::join(tokens);
}

std::string pluralize(std::string_view phrase) {
  std::string out(phrase);
  if (out.empty()) return out;
  const auto last_space = out.rfind(' ');
  const std::string_view last =
      std::string_view(out).substr(last_space == std::string::npos ? 0 : last_space + 1);
  if (last.ends_with('s') || last.ends_with('x') || last.ends_with('z') ||
      last.ends_with("ch") || last.ends_with("sh")) {
    out += "es";
  } else if (last.size() >= 2 && last.back() == 'y' && !is_vowel(last[last.size() - 2])) {
    out.pop_back();
    out += "ies";
  } else {
    out += 's';
  }
  return out;
}

Locution generate_variants(const RawEntry& entry) {
  Locution loc;
  loc.canonical = normalize_locution_text(entry.text);
  if (loc.canonical.empty()) {
    throw ValidationError("glossary entry '" + entry.text + "' is empty after normalization");
  }
  std::vector<std::string> forms{loc.canonical};
  if (loc.canonical.find('-') != std::string::npos) forms.push_back(split_hyphens(loc.canonical));
  for (const auto& form : forms) {
    loc.variants.insert(form);
    loc.variants.insert(pluralize(form));
  }
  for (const auto& v : entry.variants) {
    auto norm = normalize_locution_text(v);
    if (!norm.empty()) loc.variants.insert(std::move(norm));
  }
  if (!entry.source.empty()) loc.sources.insert(entry.source);
  return loc;
}

Glossary::Glossary(std::vector<Locution> locutions) : locutions_(std::move(locutions)) {
  std::sort(locutions_.begin(), locutions_.end(),
            [](const Locution& a, const Locution& b) { return a.canonical < b.canonical; });
  std::map<std::string, std::size_t> owner_of;
  for (std::size_t i = 0; i < locutions_.size(); ++i) {
    const auto& loc = locutions_[i];
    if (loc.canonical.empty()) throw ValidationError("glossary locution with empty canonical");
    if (std::any_of(loc.canonical.begin(), loc.canonical.end(),
                    [](char c) { return c >= 'A' && c <= 'Z'; })) {
      throw ValidationError("glossary canonical '" + loc.canonical + "' is not lowercase");
    }
    if (i > 0 && locutions_[i - 1].canonical == loc.canonical) {
      throw ValidationError("duplicate glossary canonical '" + loc.canonical + "'");
    }
    for (const auto& v : loc.variants) {
      if (v.empty()) continue;
      auto [it, inserted] = owner_of.emplace(v, i);
      if (!inserted && it->second != i) {
        throw ValidationError("glossary variant '" + v + "' is claimed by both '" +
                              locutions_[it->second].canonical + "' and '" + loc.canonical + "'");
      }
      const std::size_t len = token_count(v);
      if (buckets_.size() < len) buckets_.resize(len);
      buckets_[len - 1].emplace(v, i);
    }
  }
}

const std::map<std::string, std::size_t>& Glossary::bucket(std::size_t length) const {
  static const std::map<std::string, std::size_t> kEmpty;
  if (length == 0 || length > buckets_.size()) return kEmpty;
  return buckets_[length - 1];
}

std::optional<std::size_t> Glossary::find(std::string_view canonical) const {
  auto it = std::lower_bound(
      locutions_.begin(), locutions_.end(), canonical,
      [](const Locution& loc, std::string_view key) { return loc.canonical < key; });
  if (it == locutions_.end() || it->canonical != canonical) return std::nullopt;
  return static_cast<std::size_t>(it - locutions_.begin());
}

std::optional<std::size_t> Glossary::owner(std::string_view variant) const {
  const auto& b = bucket(token_count(variant));
  auto it = b.find(std::string(variant));
  if (it == b.end()) return std::nullopt;
  return it->second;
}

Glossary merge_sources(std::span<const std::vector<RawEntry>> sources) {
  // Entries merge when their hyphen-split forms agree.
  std::map<std::string, Locution> groups;
  for (const auto& source : sources) {
    for (const auto& entry : source) {
      Locution loc = generate_variants(entry);
      auto& group = groups[split_hyphens(loc.canonical)];
      if (group.canonical.empty() || loc.canonical < group.canonical) group.canonical = loc.canonical;
      group.variants.insert(loc.variants.begin(), loc.variants.end());
      group.sources.insert(loc.sources.begin(), loc.sources.end());
    }
  }

  // Fold plural entries into their singular. The plural of a form is always
  // longer than the form, so the shortest key of a chain is its root.
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> root = [&](const std::string& k) {
    auto it = parent.find(k);
    return it == parent.end() ? k : root(it->second);
  };
  for (const auto& [key, group] : groups) {
    const std::string plural = pluralize(key);
    if (plural != key && groups.contains(plural)) parent[plural] = key;
  }
  std::map<std::string, Locution> folded;
  for (auto& [key, group] : groups) {
    const std::string r = root(key);
    auto& target = folded[r];
    if (r == key) target.canonical = group.canonical;
    target.variants.insert(group.variants.begin(), group.variants.end());
    target.sources.insert(group.sources.begin(), group.sources.end());
  }

  std::vector<Locution> locutions;
  locutions.reserve(folded.size());
  for (auto& [key, loc] : folded) locutions.push_back(std::move(loc));
  return Glossary(std::move(locutions));
}

Glossary merge_glossaries(const std::vector<RawEntry>& a, const std::vector<RawEntry>& b) {
  const std::vector<RawEntry> both[] = {a, b};
  return merge_sources(both);
}

std::vector<RawEntry> parse_glossary_tsv(std::string_view text, std::string_view source) {
  std::vector<RawEntry> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;

    RawEntry entry;
    entry.source = std::string(source);
    const auto tab = line.find('\t');
    entry.text = std::string(line.substr(0, tab));
    if (tab != std::string_view::npos) {
      std::string_view rest = line.substr(tab + 1);
      while (true) {
        const auto bar = rest.find('|');
        auto piece = rest.substr(0, bar);
        if (piece.find_first_not_of(" \t") != std::string_view::npos) {
          entry.variants.emplace_back(piece);
        }
        if (bar == std::string_view::npos) break;
        rest.remove_prefix(bar + 1);
      }
    }
    if (normalize_locution_text(entry.text).empty()) {
      throw ValidationError("glossary line " + std::to_string(line_no) + ": empty canonical");
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<RawEntry> parse_glossary_json(std::string_view text, std::string_view default_source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("glossary JSON: ") + e.what());
  }
  const nlohmann::json* items = &doc;
  if (doc.is_object()) {
    if (!doc.contains("locutions")) throw ValidationError("glossary JSON: missing 'locutions'");
    items = &doc.at("locutions");
  }
  if (!items->is_array()) throw ValidationError("glossary JSON: expected an array of entries");

  std::vector<RawEntry> entries;
  for (const auto& item : *items) {
    if (!item.is_object() || !item.contains("canonical") || !item["canonical"].is_string()) {
      throw ValidationError("glossary JSON: every entry needs a string 'canonical'");
    }
    std::vector<std::string> variants;
    if (item.contains("variants")) {
      for (const auto& v : item["variants"]) variants.push_back(v.get<std::string>());
    }
    std::vector<std::string> tags;
    if (item.contains("source")) {
      const auto& s = item["source"];
      if (s.is_string()) {
        tags.push_back(s.get<std::string>());
      } else {
        for (const auto& t : s) tags.push_back(t.get<std::string>());
      }
    }
    if (tags.empty()) tags.emplace_back(default_source);
    for (auto& tag : tags) {
      entries.push_back(RawEntry{item["canonical"].get<std::string>(), variants, std::move(tag)});
    }
  }
  return entries;
}

std::vector<RawEntry> read_glossary_source(const std::filesystem::path& path,
                                           std::optional<std::string> source) {
  const std::string content = read_file(path);
  const std::string tag = source.value_or(path.stem().string());
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (content[first] == '[' || content[first] == '{')) {
    return parse_glossary_json(content, tag);
  }
  return parse_glossary_tsv(content, tag);
}

nlohmann::json to_json(const Glossary& glossary) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& loc : glossary.locutions()) {
    items.push_back({{"canonical", loc.canonical},
                     {"variants", loc.variants},
                     {"source", loc.sources}});
  }
  return {{"max_length", glossary.max_length()}, {"locutions", std::move(items)}};
}

Glossary glossary_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("locutions")) {
    throw ValidationError("glossary file: missing 'locutions'");
  }
  std::vector<Locution> locutions;
  try {
    for (const auto& item : doc.at("locutions")) {
      Locution loc;
      loc.canonical = item.at("canonical").get<std::string>();
      for (const auto& v : item.at("variants")) loc.variants.insert(v.get<std::string>());
      if (item.contains("source")) {
        for (const auto& s : item["source"]) loc.sources.insert(s.get<std::string>());
      }
      locutions.push_back(std::move(loc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("glossary file: ") + e.what());
  }
  return Glossary(std::move(locutions));
}

Glossary load_glossary(const std::filesystem::path& path) {
  try {
    return glossary_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("glossary file " + path.string() + ": " + e.what());
  }
}

void save_glossary(const Glossary& glossary, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(glossary).dump(2) << '\n';
}

}  // namespace econet
