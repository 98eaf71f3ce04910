#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "econet/corpus.hpp"
#include "econet/glossary.hpp"
#include "econet/matrix.hpp"

namespace econet {

/// Counts glossary occurrences with longest-match-first consumption: for
/// lengths L..1, scan left to right; a window of unconsumed tokens that
/// equals a variant of that length counts for the variant's canonical and
/// consumes its positions. Reusable across documents.
class LongestMatchCounter {
 public:
  explicit LongestMatchCounter(const Glossary& glossary);

  /// Counts indexed like glossary.locutions().
  std::vector<std::uint32_t> count(std::span<const std::string> tokens) const;

  std::size_t term_count() const noexcept { return terms_; }

 private:
  std::unordered_map<std::string, std::int32_t> vocabulary_;
  // Index l-1 holds variants of l tokens keyed by their token-id sequence.
  std::vector<std::unordered_map<std::u32string, std::size_t>> buckets_;
  std::size_t terms_ = 0;
};

/// Canonical -> count, nonzero entries only.
std::map<std::string, std::uint32_t> count_occurrences(std::span<const std::string> tokens,
                                                       const Glossary& glossary);

/// Documents x canonical terms.
struct DocTermMatrix {
  std::vector<std::string> doc_ids;
  std::vector<std::string> terms;
  std::vector<std::size_t> doc_lengths;
  Matrix<std::uint32_t> abs;
  /// abs / doc_length per row.
  Matrix<double> rel;

  std::size_t rows() const noexcept { return doc_ids.size(); }
  std::size_t cols() const noexcept { return terms.size(); }

  /// Rebuilds `rel` from `abs` and `doc_lengths`; throws ValidationError if
  /// a row has more matched occurrences than tokens.
  void recompute_relative();

  friend bool operator==(const DocTermMatrix&, const DocTermMatrix&) = default;
};

struct MatrixBuild {
  DocTermMatrix matrix;
  /// Documents without any glossary occurrence, in corpus order.
  std::vector<std::string> removed_docs;
};

/// Counts every document, drops all-zero rows (reported) and all-zero
/// columns. Throws ValidationError "no glossary occurrences in corpus" when
/// nothing matches at all. `workers` > 1 counts documents concurrently.
MatrixBuild build_matrix(const Corpus& corpus, const Glossary& glossary, unsigned workers = 1);

/// Sum of a document's relative frequencies.
double economic_content(std::span<const double> rel_row);

/// Writes `<stem>.csv` (doc_id then one column per term, absolute counts)
/// and `<stem>.json` (doc_lengths, removed_docs).
void save_matrix(const MatrixBuild& build, const std::filesystem::path& csv_path);
MatrixBuild load_matrix(const std::filesystem::path& csv_path);
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

}  // namespace econet
