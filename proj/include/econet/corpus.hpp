#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace econet {

using Date = std::chrono::year_month_day;

/// Parses strict ISO-8601 `YYYY-MM-DD`; nullopt for anything else or an
/// invalid calendar date.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& date);
/// Days since 1970-01-01.
long long day_number(const Date& date);

struct Document {
  std::string id;
  Date date;
  std::string speaker;
  std::string category;
  std::vector<std::string> tokens;

  std::size_t raw_length() const noexcept { return tokens.size(); }
};

struct Corpus {
  /// Sorted by id; ids are unique.
  std::vector<Document> documents;
  std::string source;
  std::string ingested_at;
  /// Ids of documents whose normalized body is empty.
  std::vector<std::string> empty_documents;

  const Document* find(std::string_view id) const;
};

/// Lowercases, maps every punctuation character (hyphens included) and
/// whitespace to a separator and splits. When `cut_marker` is non-empty,
/// everything from its first occurrence on is discarded first.
std::vector<std::string> normalize(std::string_view text,
                                   std::optional<std::string_view> cut_marker = std::nullopt);

struct MetadataRow {
  std::string id;
  std::string date;
  std::string speaker;
  std::string category;
};

/// Reads `id,date,speaker,category` CSV.
std::vector<MetadataRow> read_metadata(const std::filesystem::path& path);

/// Reads every `<id>.txt` under `corpus_dir` and pairs it with its
/// metadata row. All problems (unmatched files or rows, bad dates,
/// duplicate ids) are collected into one ValidationError.
Corpus ingest(const std::filesystem::path& corpus_dir, const std::vector<MetadataRow>& metadata,
              std::optional<std::string> cut_marker = std::nullopt);

nlohmann::json to_json(const Corpus& corpus);
Corpus corpus_from_json(const nlohmann::json& doc);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);
Corpus load_corpus(const std::filesystem::path& path);

}  // namespace econet
