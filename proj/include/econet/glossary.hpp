#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace econet {

/// One line of a glossary source before normalization.
struct RawEntry {
  std::string text;
  /// Editorial variants (acronym expansions, surname-only forms, irregular
  /// plurals). Kept as written apart from case and punctuation folding.
  std::vector<std::string> variants;
  std::string source;
};

/// A canonical glossary term and every surface form that counts toward it.
/// Token sequences are stored space-joined; tokens never contain spaces.
struct Locution {
  std::string canonical;
  std::set<std::string> variants;
  std::set<std::string> sources;

  friend bool operator==(const Locution&, const Locution&) = default;
};

/// Lowercases, folds punctuation other than '-' to spaces and collapses
/// whitespace. Hyphens are trimmed from token ends.
std::string normalize_locution_text(std::string_view text);

/// Plural of the final token: +es after s/x/z/ch/sh, y -> ies after a
/// consonant, +s otherwise.
std::string pluralize(std::string_view phrase);

/// Builds the variant set of one entry: the normalized form, its hyphen-split
/// form if it contains a hyphen, the plural of each, and the explicit
/// variants. Throws ValidationError if the text normalizes to nothing.
Locution generate_variants(const RawEntry& entry);

/// Immutable set of locutions with variants bucketed by token count.
class Glossary {
 public:
  Glossary() = default;

  /// Validates and indexes `locutions`. Throws ValidationError when two
  /// distinct canonicals share a variant or a canonical is empty.
  explicit Glossary(std::vector<Locution> locutions);

  /// Sorted by canonical.
  const std::vector<Locution>& locutions() const noexcept { return locutions_; }
  std::size_t size() const noexcept { return locutions_.size(); }
  bool empty() const noexcept { return locutions_.empty(); }

  /// Longest variant length in tokens (0 for an empty glossary).
  std::size_t max_length() const noexcept { return buckets_.size(); }

  /// Variant -> locution index for variants of exactly `length` tokens.
  const std::map<std::string, std::size_t>& bucket(std::size_t length) const;

  std::optional<std::size_t> find(std::string_view canonical) const;

  /// Canonical owning `variant`, if any.
  std::optional<std::size_t> owner(std::string_view variant) const;

  friend bool operator==(const Glossary& a, const Glossary& b) {
    return a.locutions_ == b.locutions_;
  }

 private:
  std::vector<Locution> locutions_;
  std::vector<std::map<std::string, std::size_t>> buckets_;
};

/// Deduplicated union of any number of sources. Entries with the same
/// hyphen-split form merge (lexicographically smallest spelling becomes the
/// canonical); an entry whose form is the generated plural of another
/// entry's form folds into the singular. Variant sets and source tags are
/// unioned. The result does not depend on source or entry order.
Glossary merge_sources(std::span<const std::vector<RawEntry>> sources);
Glossary merge_glossaries(const std::vector<RawEntry>& a, const std::vector<RawEntry>& b);

/// `canonical[TAB]v1|v2|...` per line, '#' comments, blank lines ignored.
std::vector<RawEntry> parse_glossary_tsv(std::string_view text, std::string_view source);

/// Array of {canonical, variants?, source?} objects, or an object with a
/// "locutions" array of the same. `source` may be a string or a list; a
/// missing source takes `default_source`.
std::vector<RawEntry> parse_glossary_json(std::string_view text, std::string_view default_source);

/// Dispatches on content: JSON when the first non-space byte is '[' or '{'.
/// The source tag defaults to the file stem.
std::vector<RawEntry> read_glossary_source(const std::filesystem::path& path,
                                           std::optional<std::string> source = std::nullopt);

nlohmann::json to_json(const Glossary& glossary);
Glossary glossary_from_json(const nlohmann::json& doc);
Glossary load_glossary(const std::filesystem::path& path);
void save_glossary(const Glossary& glossary, const std::filesystem::path& path);

}  // namespace econet
