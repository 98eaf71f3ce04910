#include "econet/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>

#include "econet/csv.hpp"
#include "econet/error.hpp"

namespace econet {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

PeriodConfig::PeriodConfig(std::vector<Period> periods) : periods_(std::move(periods)) {
  for (const auto& p : periods_) {
    if (p.label != "recession" && p.label != "normal") {
      throw ValidationError("period label must be 'recession' or 'normal', got '" + p.label + "'");
    }
    if (p.end < p.start) {
      throw ValidationError("period " + format_date(p.start) + ".." + format_date(p.end) + " ends before it starts");
    }
  }
}

std::string PeriodConfig::label_for(const Date& date) const {
  for (const auto& p : periods_) {
    if (p.label == "recession" && p.start <= date && date <= p.end) return "recession";
  }
  return "normal";
}

PeriodConfig read_periods(const std::filesystem::path& path) {
  const auto table = csv::read(path);
  csv::require_header(table, {"start", "end", "label"}, path.string());
  std::vector<Period> periods;
  for (const auto& r : table.rows) {
    const auto start = parse_date(r[0]);
    const auto end = parse_date(r[1]);
    if (!start || !end) throw ValidationError(path.string() + ": bad date in row '" + r[0] + "," + r[1] + "'");
    periods.push_back({*start, *end, r[2]});
  }
  return PeriodConfig(std::move(periods));
}

std::vector<ContentRow> content_timeseries(const Corpus& corpus, const DocTermMatrix& matrix,
                                           const PeriodConfig& periods) {
  std::unordered_map<std::string, std::size_t> row_of;
  for (std::size_t r = 0; r < matrix.rows(); ++r) row_of.emplace(matrix.doc_ids[r], r);
  for (const auto& id : matrix.doc_ids) {
    if (!corpus.find(id)) throw ValidationError("matrix row '" + id + "' is not in the corpus");
  }

  std::vector<const Document*> docs;
  for (const auto& d : corpus.documents) docs.push_back(&d);
  std::stable_sort(docs.begin(), docs.end(), [](const Document* a, const Document* b) { return a->date < b->date; });

  std::vector<ContentRow> rows;
  for (const Document* d : docs) {
    ContentRow row{d->id, format_date(d->date), 0.0, periods.label_for(d->date)};
    if (auto it = row_of.find(d->id); it != row_of.end()) row.score = economic_content(matrix.rel.row(it->second));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<PeriodSummary> summarize_periods(std::span<const ContentRow> rows) {
  std::map<std::string, PeriodSummary> by;
  for (const auto& r : rows) {
    auto& s = by[r.period];
    s.period = r.period;
    ++s.documents;
    s.mean_score += r.score;
  }
  std::vector<PeriodSummary> out;
  for (auto& [label, s] : by) {
    s.mean_score /= static_cast<double>(s.documents);
    out.push_back(s);
  }
  return out;
}

void write_timeseries(std::span<const ContentRow> rows, const std::filesystem::path& path) {
  auto out = open_out(path);
  csv::write_row(out, {"doc_id", "date", "score", "percentage", "period"});
  for (const auto& r : rows) {
    csv::write_row(out, {r.id, r.date, csv::format_double(r.score), csv::format_double(r.percentage()), r.period});
  }
}

std::vector<std::uint64_t> column_sums(const DocTermMatrix& matrix) {
  std::vector<std::uint64_t> sums(matrix.cols(), 0);
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    const auto row = matrix.abs.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) sums[c] += row[c];
  }
  return sums;
}

std::vector<std::string> high_frequency_terms(const DocTermMatrix& matrix, double mass) {
  if (!(mass > 0.0 && mass < 1.0)) throw ValidationError("cutoff must lie strictly between 0 and 1");
  const auto sums = column_sums(matrix);
  std::vector<std::size_t> order(sums.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sums[a] != sums[b] ? sums[a] > sums[b] : matrix.terms[a] < matrix.terms[b];
  });
  const double total = static_cast<double>(std::accumulate(sums.begin(), sums.end(), std::uint64_t{0}));
  std::vector<std::string> out;
  std::uint64_t running = 0;
  for (std::size_t c : order) {
    out.push_back(matrix.terms[c]);
    running += sums[c];
    if (static_cast<double>(running) >= mass * total) break;
  }
  return out;
}

GroupTerms group_terms(const DocTermMatrix& matrix, const std::unordered_map<std::string, bool>& in_core,
                       std::optional<double> cutoff) {
  std::vector<std::uint64_t> core(matrix.cols(), 0), periphery(matrix.cols(), 0);
  std::size_t core_docs = 0, periphery_docs = 0;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    const auto it = in_core.find(matrix.doc_ids[r]);
    if (it == in_core.end()) continue;
    auto& target = it->second ? core : periphery;
    ++(it->second ? core_docs : periphery_docs);
    const auto row = matrix.abs.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) target[c] += row[c];
  }
  if (core_docs == 0) throw ValidationError("core group is empty");
  if (periphery_docs == 0) throw ValidationError("periphery group is empty");

  std::vector<bool> dropped(matrix.cols(), false);
  if (cutoff) {
    const auto high = high_frequency_terms(matrix, *cutoff);
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      dropped[c] = std::find(high.begin(), high.end(), matrix.terms[c]) != high.end();
    }
  }
  auto table = [&](std::string group, const std::vector<std::uint64_t>& sums) {
    GroupTermTable t{std::move(group), cutoff.has_value(), {}};
    for (std::size_t c = 0; c < sums.size(); ++c) {
      if (sums[c] > 0 && !dropped[c]) t.terms.push_back({matrix.terms[c], sums[c]});
    }
    std::sort(t.terms.begin(), t.terms.end(), [](const TermFrequency& a, const TermFrequency& b) {
      return a.frequency != b.frequency ? a.frequency > b.frequency : a.term < b.term;
    });
    return t;
  };
  return {table("core", core), table("periphery", periphery)};
}

std::unordered_map<std::string, bool> read_core_flags(const std::filesystem::path& path) {
  const auto table = csv::read(path);
  csv::require_header(table, {"node_id", "rank", "in_core"}, path.string());
  std::unordered_map<std::string, bool> flags;
  for (const auto& r : table.rows) {
    if (r[2] != "0" && r[2] != "1") throw ValidationError(path.string() + ": in_core must be 0 or 1");
    if (!flags.emplace(r[0], r[2] == "1").second) {
      throw ValidationError(path.string() + ": node '" + r[0] + "' listed twice");
    }
  }
  return flags;
}

void write_term_table(const GroupTermTable& table, const std::filesystem::path& path) {
  auto out = open_out(path);
  csv::write_row(out, {"term", "frequency"});
  for (const auto& t : table.terms) csv::write_row(out, {t.term, std::to_string(t.frequency)});
}

void write_histogram(const Histogram& histogram, const std::filesystem::path& path) {
  auto out = open_out(path);
  csv::write_row(out, {"bin_lo", "bin_hi", "count"});
  const double w = histogram.bin_width();
  for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
    const double lo = histogram.lo + w * static_cast<double>(b);
    const double hi = b + 1 == histogram.counts.size() ? histogram.hi : lo + w;
    csv::write_row(out, {csv::format_double(lo), csv::format_double(hi), std::to_string(histogram.counts[b])});
  }
}

void write_ccdf(const CcdfCurve& curve, const std::filesystem::path& path) {
  auto out = open_out(path);
  csv::write_row(out, {"value", "ccdf"});
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    csv::write_row(out, {csv::format_double(curve.values[i]), csv::format_double(curve.exceed[i])});
  }
}

void write_labeled_matrix(const Matrix<double>& m, std::span<const std::string> labels,
                          const std::filesystem::path& path) {
  auto out = open_out(path);
  csv::Row header{""};
  header.insert(header.end(), labels.begin(), labels.end());
  csv::write_row(out, header);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    csv::Row row{labels[i]};
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(csv::format_double(m(i, j)));
    csv::write_row(out, row);
  }
}

}  // namespace econet
