#include "econet/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "econet/csv.hpp"
#include "econet/error.hpp"
#include "econet/text.hpp"

namespace econet {
namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

}  // namespace

std::optional<Date> parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  auto parse = [](std::string_view part, auto& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    return ec == std::errc{} && ptr == part.data() + part.size();
  };
  if (!parse(s.substr(0, 4), y) || !parse(s.substr(5, 2), m) || !parse(s.substr(8, 2), d)) {
    return std::nullopt;
  }
  Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

long long day_number(const Date& date) {
  return std::chrono::sys_days(date).time_since_epoch().count();
}

const Document* Corpus::find(std::string_view id) const {
  auto it = std::lower_bound(documents.begin(), documents.end(), id,
                             [](const Document& d, std::string_view key) { return d.id < key; });
  return it != documents.end() && it->id == id ? &*it : nullptr;
}

std::vector<std::string> normalize(std::string_view text,
                                   std::optional<std::string_view> cut_marker) {
  if (cut_marker && !cut_marker->empty()) {
    const auto pos = text.find(*cut_marker);
    if (pos != std::string_view::npos) text = text.substr(0, pos);
  }
  return text::split_tokens(text);
}

std::vector<MetadataRow> read_metadata(const std::filesystem::path& path) {
  const auto table = csv::read(path);
  csv::require_header(table, {"id", "date", "speaker", "category"}, path.string());
  std::vector<MetadataRow> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) rows.push_back({r[0], r[1], r[2], r[3]});
  return rows;
}

Corpus ingest(const std::filesystem::path& corpus_dir, const std::vector<MetadataRow>& metadata,
              std::optional<std::string> cut_marker) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(corpus_dir)) {
    throw ValidationError("corpus directory " + corpus_dir.string() + " does not exist");
  }
  std::vector<std::string> problems;

  std::map<std::string, const MetadataRow*> rows;
  for (const auto& row : metadata) {
    if (row.id.empty()) {
      problems.push_back("metadata row with empty id");
      continue;
    }
    if (!rows.emplace(row.id, &row).second) problems.push_back("duplicate id '" + row.id + "'");
    if (!parse_date(row.date)) {
      problems.push_back("unparseable date '" + row.date + "' for id '" + row.id + "'");
    }
  }

  std::map<std::string, fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    files.emplace(entry.path().stem().string(), entry.path());
  }
  for (const auto& [id, path] : files) {
    if (!rows.contains(id)) problems.push_back("file '" + path.filename().string() + "' has no metadata row");
  }
  for (const auto& [id, row] : rows) {
    if (!files.contains(id)) problems.push_back("metadata id '" + id + "' has no file " + id + ".txt");
  }
  if (files.empty() && problems.empty()) problems.push_back("no .txt documents found");

  if (!problems.empty()) {
    std::string message = "ingestion failed:";
    for (const auto& p : problems) message += "\n  " + p;
    throw ValidationError(message);
  }

  Corpus corpus;
  corpus.source = fs::absolute(corpus_dir).string();
  corpus.ingested_at = utc_timestamp();
  for (const auto& [id, path] : files) {
    const MetadataRow& row = *rows.at(id);
    Document doc;
    doc.id = id;
    doc.date = *parse_date(row.date);
    doc.speaker = row.speaker;
    doc.category = row.category;
    const std::string body = slurp(path);
    doc.tokens = cut_marker ? normalize(body, *cut_marker) : normalize(body);
    if (doc.tokens.empty()) corpus.empty_documents.push_back(id);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

nlohmann::json to_json(const Corpus& corpus) {
  nlohmann::json docs = nlohmann::json::array();
  for (const auto& d : corpus.documents) {
    docs.push_back({{"id", d.id},
                    {"date", format_date(d.date)},
                    {"speaker", d.speaker},
                    {"category", d.category},
                    {"raw_length", d.raw_length()},
                    {"text", text::join(d.tokens)}});
  }
  return {{"source", corpus.source},
          {"ingested_at", corpus.ingested_at},
          {"empty_documents", corpus.empty_documents},
          {"documents", std::move(docs)}};
}

Corpus corpus_from_json(const nlohmann::json& doc) {
  Corpus corpus;
  try {
    corpus.source = doc.value("source", "");
    corpus.ingested_at = doc.value("ingested_at", "");
    if (doc.contains("empty_documents")) {
      corpus.empty_documents = doc["empty_documents"].get<std::vector<std::string>>();
    }
    std::set<std::string> seen;
    for (const auto& item : doc.at("documents")) {
      Document d;
      d.id = item.at("id").get<std::string>();
      auto date = parse_date(item.at("date").get<std::string>());
      if (!date) throw ValidationError("corpus file: bad date for '" + d.id + "'");
      if (!seen.insert(d.id).second) throw ValidationError("corpus file: duplicate id '" + d.id + "'");
      d.date = *date;
      d.speaker = item.value("speaker", "");
      d.category = item.value("category", "");
      d.tokens = text::split_tokens(item.at("text").get<std::string>());
      corpus.documents.push_back(std::move(d));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("corpus file: ") + e.what());
  }
  std::sort(corpus.documents.begin(), corpus.documents.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(corpus).dump() << '\n';
}

Corpus load_corpus(const std::filesystem::path& path) {
  try {
    return corpus_from_json(nlohmann::json::parse(slurp(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("corpus file " + path.string() + ": " + e.what());
  }
}

}  // namespace econet
