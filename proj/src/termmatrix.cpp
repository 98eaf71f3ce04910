#include "econet/termmatrix.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "econet/csv.hpp"
#include "econet/error.hpp"
#include "econet/parallel.hpp"
#include "econet/text.hpp"

namespace econet {
namespace {

std::vector<std::string> split_words(const std::string& joined) {
  std::vector<std::string> words;
  std::istringstream in(joined);
  for (std::string w; in >> w;) words.push_back(std::move(w));
  return words;
}

}  // namespace

LongestMatchCounter::LongestMatchCounter(const Glossary& glossary)
    : buckets_(glossary.max_length()), terms_(glossary.size()) {
  for (std::size_t len = 1; len <= glossary.max_length(); ++len) {
    for (const auto& [variant, index] : glossary.bucket(len)) {
      std::u32string key;
      for (const auto& word : split_words(variant)) {
        auto [it, _] = vocabulary_.emplace(word, static_cast<std::int32_t>(vocabulary_.size()));
        key.push_back(static_cast<char32_t>(it->second));
      }
      buckets_[len - 1].emplace(std::move(key), index);
    }
  }
}

std::vector<std::uint32_t> LongestMatchCounter::count(std::span<const std::string> tokens) const {
  std::vector<std::uint32_t> counts(terms_, 0);
  const std::size_t n = tokens.size();
  std::vector<std::int32_t> ids(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (auto it = vocabulary_.find(tokens[i]); it != vocabulary_.end()) ids[i] = it->second;
  }
  std::vector<bool> consumed(n, false);
  std::u32string key;
  for (std::size_t len = buckets_.size(); len >= 1; --len) {
    const auto& bucket = buckets_[len - 1];
    if (bucket.empty() || len > n) continue;
    std::size_t i = 0;
    while (i + len <= n) {
      bool usable = true;
      for (std::size_t k = 0; k < len && usable; ++k) usable = ids[i + k] >= 0 && !consumed[i + k];
      if (!usable) {
        ++i;
        continue;
      }
      key.assign(len, U'\0');
      for (std::size_t k = 0; k < len; ++k) key[k] = static_cast<char32_t>(ids[i + k]);
      if (auto it = bucket.find(key); it != bucket.end()) {
        ++counts[it->second];
        for (std::size_t k = 0; k < len; ++k) consumed[i + k] = true;
        i += len;
      } else {
        ++i;
      }
    }
  }
  return counts;
}

std::map<std::string, std::uint32_t> count_occurrences(std::span<const std::string> tokens,
                                                       const Glossary& glossary) {
  const auto counts = LongestMatchCounter(glossary).count(tokens);
  std::map<std::string, std::uint32_t> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) out.emplace(glossary.locutions()[i].canonical, counts[i]);
  }
  return out;
}

void DocTermMatrix::recompute_relative() {
  rel = Matrix<double>(abs.rows(), abs.cols(), 0.0);
  for (std::size_t r = 0; r < abs.rows(); ++r) {
    const double len = static_cast<double>(doc_lengths[r]);
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < abs.cols(); ++c) {
      total += abs(r, c);
      if (doc_lengths[r] > 0) rel(r, c) = abs(r, c) / len;
    }
    if (total > doc_lengths[r]) {
      throw ValidationError("document '" + doc_ids[r] + "' has more matched occurrences than tokens");
    }
  }
}

MatrixBuild build_matrix(const Corpus& corpus, const Glossary& glossary, unsigned workers) {
  if (corpus.documents.empty()) throw ValidationError("corpus is empty");
  const LongestMatchCounter counter(glossary);
  std::vector<std::vector<std::uint32_t>> counts(corpus.documents.size());
  parallel_for(corpus.documents.size(), workers, [&](unsigned, std::size_t d) {
    counts[d] = counter.count(corpus.documents[d].tokens);
  });

  std::vector<bool> keep_col(glossary.size(), false);
  MatrixBuild out;
  std::vector<std::size_t> kept_rows;
  for (std::size_t d = 0; d < counts.size(); ++d) {
    bool any = false;
    for (std::size_t t = 0; t < counts[d].size(); ++t) {
      if (counts[d][t] > 0) {
        any = true;
        keep_col[t] = true;
      }
    }
    if (any) {
      kept_rows.push_back(d);
    } else {
      out.removed_docs.push_back(corpus.documents[d].id);
    }
  }
  if (kept_rows.empty()) throw ValidationError("no glossary occurrences in corpus");

  std::vector<std::size_t> kept_cols;
  for (std::size_t t = 0; t < keep_col.size(); ++t) {
    if (keep_col[t]) kept_cols.push_back(t);
  }

  DocTermMatrix& m = out.matrix;
  m.abs = Matrix<std::uint32_t>(kept_rows.size(), kept_cols.size());
  for (std::size_t c : kept_cols) m.terms.push_back(glossary.locutions()[c].canonical);
  for (std::size_t r = 0; r < kept_rows.size(); ++r) {
    const auto& doc = corpus.documents[kept_rows[r]];
    m.doc_ids.push_back(doc.id);
    m.doc_lengths.push_back(doc.raw_length());
    for (std::size_t c = 0; c < kept_cols.size(); ++c) m.abs(r, c) = counts[kept_rows[r]][kept_cols[c]];
  }
  m.recompute_relative();
  return out;
}

double economic_content(std::span<const double> rel_row) {
  double total = 0.0;
  for (double v : rel_row) total += v;
  return total;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".json");
  return p;
}

void save_matrix(const MatrixBuild& build, const std::filesystem::path& csv_path) {
  const auto& m = build.matrix;
  {
    std::ofstream out(csv_path);
    if (!out) throw Error("cannot write " + csv_path.string());
    csv::Row header{"doc_id"};
    header.insert(header.end(), m.terms.begin(), m.terms.end());
    csv::write_row(out, header);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      csv::Row row{m.doc_ids[r]};
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(std::to_string(m.abs(r, c)));
      csv::write_row(out, row);
    }
  }
  nlohmann::json lengths = nlohmann::json::object();
  for (std::size_t r = 0; r < m.rows(); ++r) lengths[m.doc_ids[r]] = m.doc_lengths[r];
  nlohmann::json side{{"doc_lengths", std::move(lengths)},
                      {"removed_docs", build.removed_docs},
                      {"rows", m.rows()},
                      {"terms", m.cols()}};
  std::ofstream out(sidecar_path(csv_path));
  if (!out) throw Error("cannot write " + sidecar_path(csv_path).string());
  out << side.dump(2) << '\n';
}

MatrixBuild load_matrix(const std::filesystem::path& csv_path) {
  const auto table = csv::read(csv_path);
  if (table.header.empty() || table.header[0] != "doc_id") {
    throw ValidationError(csv_path.string() + ": first column must be doc_id");
  }
  csv::require_header(table, {"doc_id"}, csv_path.string());

  nlohmann::json side;
  {
    std::ifstream in(sidecar_path(csv_path));
    if (!in) throw ValidationError("missing matrix sidecar " + sidecar_path(csv_path).string());
    try {
      side = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(sidecar_path(csv_path).string() + ": " + e.what());
    }
  }

  MatrixBuild out;
  auto& m = out.matrix;
  m.terms.assign(table.header.begin() + 1, table.header.end());
  m.abs = Matrix<std::uint32_t>(table.rows.size(), m.terms.size());
  const auto& lengths = side.at("doc_lengths");
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    m.doc_ids.push_back(row[0]);
    if (!lengths.contains(row[0])) {
      throw ValidationError("matrix sidecar has no length for '" + row[0] + "'");
    }
    m.doc_lengths.push_back(lengths[row[0]].get<std::size_t>());
    for (std::size_t c = 0; c < m.terms.size(); ++c) {
      try {
        const long long v = std::stoll(row[c + 1]);
        if (v < 0) throw std::out_of_range("negative");
        m.abs(r, c) = static_cast<std::uint32_t>(v);
      } catch (const std::exception&) {
        throw ValidationError(csv_path.string() + ": bad count '" + row[c + 1] + "' for '" + row[0] + "'");
      }
    }
  }
  out.removed_docs = side.value("removed_docs", std::vector<std::string>{});
  m.recompute_relative();
  return out;
}

}  // namespace econet
