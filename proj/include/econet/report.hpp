#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "econet/corpus.hpp"
#include "econet/matrix.hpp"
#include "econet/netmetrics.hpp"
#include "econet/termmatrix.hpp"

namespace econet {

struct Period {
  Date start;
  Date end;
  std::string label;  // "recession" or "normal"
};

/// Labeled date ranges (inclusive). A date inside any recession range is
/// "recession"; every other date is "normal".
class PeriodConfig {
 public:
  PeriodConfig() = default;
  /// Throws ValidationError on start > end or an unknown label.
  explicit PeriodConfig(std::vector<Period> periods);

  const std::vector<Period>& periods() const noexcept { return periods_; }
  std::string label_for(const Date& date) const;

 private:
  std::vector<Period> periods_;
};

/// CSV `start,end,label` with YYYY-MM-DD dates.
PeriodConfig read_periods(const std::filesystem::path& path);

struct ContentRow {
  std::string id;
  std::string date;
  /// Sum of relative term frequencies; 0 for documents dropped from the
  /// matrix for having no glossary occurrence.
  double score = 0.0;
  std::string period;

  double percentage() const { return score * 100.0; }
};

/// One row per corpus document, ordered by date then id.
std::vector<ContentRow> content_timeseries(const Corpus& corpus, const DocTermMatrix& matrix,
                                           const PeriodConfig& periods);

struct PeriodSummary {
  std::string period;
  std::size_t documents = 0;
  double mean_score = 0.0;
};

/// Mean score per period label, labels in ascending order.
std::vector<PeriodSummary> summarize_periods(std::span<const ContentRow> rows);

/// CSV `doc_id,date,score,percentage,period`.
void write_timeseries(std::span<const ContentRow> rows, const std::filesystem::path& path);

struct TermFrequency {
  std::string term;
  std::uint64_t frequency = 0;
};

struct GroupTermTable {
  std::string group;
  bool cutoff_applied = false;
  /// Nonzero terms, by descending frequency then term.
  std::vector<TermFrequency> terms;
};

/// Column sums of the absolute counts.
std::vector<std::uint64_t> column_sums(const DocTermMatrix& matrix);

/// The most frequent terms that together hold at least a fraction `mass`
/// of all occurrences (at least one term). Terms are ranked by global
/// frequency, ties by name. Throws ValidationError unless 0 < mass < 1.
std::vector<std::string> high_frequency_terms(const DocTermMatrix& matrix, double mass);

struct GroupTerms {
  GroupTermTable core;
  GroupTermTable periphery;
};

/// Per-group column sums over the matrix rows listed in `in_core` (doc id
/// -> core flag); rows not listed are ignored. With `cutoff`, the terms
/// returned by high_frequency_terms(matrix, *cutoff) are left out. Throws
/// ValidationError when either group has no document.
GroupTerms group_terms(const DocTermMatrix& matrix, const std::unordered_map<std::string, bool>& in_core,
                       std::optional<double> cutoff);

/// Reads a membership CSV `node_id,rank,in_core` into doc id -> core flag.
std::unordered_map<std::string, bool> read_core_flags(const std::filesystem::path& path);

/// CSV `term,frequency`.
void write_term_table(const GroupTermTable& table, const std::filesystem::path& path);
/// CSV `bin_lo,bin_hi,count`.
void write_histogram(const Histogram& histogram, const std::filesystem::path& path);
/// CSV `value,ccdf`.
void write_ccdf(const CcdfCurve& curve, const std::filesystem::path& path);
/// Square matrix CSV with `labels` as header and first column.
void write_labeled_matrix(const Matrix<double>& m, std::span<const std::string> labels,
                          const std::filesystem::path& path);

}  // namespace econet
