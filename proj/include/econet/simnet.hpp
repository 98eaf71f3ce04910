#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "econet/graph.hpp"
#include "econet/matrix.hpp"
#include "econet/termmatrix.hpp"

namespace econet {

/// Cosine similarity of two non-negative vectors. Throws ValidationError on
/// a dimension mismatch or an all-zero vector.
double cosine(std::span<const double> x, std::span<const double> y);

/// Symmetric n x n cosine matrix with a zero diagonal.
struct SimilarityMatrix {
  Matrix<double> w;

  std::size_t size() const noexcept { return w.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return w(i, j); }
};

enum class FrequencyInput { absolute, relative };

/// Rows of the document-term matrix as doubles. Cosine is invariant under
/// per-row positive scaling, so both choices give the same similarities up
/// to rounding; absolute counts keep the permutation test's dot products
/// exact.
Matrix<double> frequency_rows(const DocTermMatrix& matrix, FrequencyInput input = FrequencyInput::absolute);

/// Throws ValidationError if fewer than 2 rows or a row is all zero.
SimilarityMatrix similarity_matrix(const Matrix<double>& rows);

/// Index of pair (i, j), i < j, in a packed strict upper triangle.
constexpr std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) noexcept {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Permutation-test exceedance counts for every document pair.
class PValueMatrix {
 public:
  PValueMatrix() = default;
  PValueMatrix(std::size_t n, std::size_t permutations, std::uint64_t seed,
               std::vector<std::uint32_t> exceedances);

  std::size_t size() const noexcept { return n_; }
  std::size_t permutations() const noexcept { return permutations_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Instances whose randomized similarity was >= the observed one.
  std::uint32_t exceedances(std::size_t i, std::size_t j) const;

  /// exceedances / permutations, or (exceedances + 1) / (permutations + 1)
  /// when `smoothed`. Diagonal is 1.
  double p(std::size_t i, std::size_t j, bool smoothed = false) const;

  const std::vector<std::uint32_t>& packed() const noexcept { return counts_; }

  friend bool operator==(const PValueMatrix&, const PValueMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t permutations_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::uint32_t> counts_;
};

struct PermutationOptions {
  std::size_t permutations = 1000;
  std::uint64_t seed = 0;
  /// 0 = hardware concurrency.
  unsigned workers = 1;
};

/// Row-reshuffle permutation test. Instance t shuffles every row
/// independently (Fisher-Yates) with the stream seeded by (seed, t), then
/// counts, for every pair, whether the randomized cosine is >= the observed
/// one. Row norms are invariant under shuffling, so the comparison is done
/// on dot products with one fixed summation order. Exceedance counts are
/// accumulated instance by instance and merged per worker; the result is
/// identical for any worker count.
PValueMatrix permutation_pvalues(const Matrix<double>& rows, const PermutationOptions& options);

/// The row shuffle used by instance `instance`: shuffles a copy of each row
/// in row order with one stream. Exposed so tests can replay instances.
Matrix<double> shuffled_instance(const Matrix<double>& rows, std::uint64_t seed, std::size_t instance);

/// alpha / C(n, 2). Throws ValidationError unless 0 < alpha < 1 and n >= 2.
double bonferroni_threshold(double alpha, std::size_t n);

struct FilterOptions {
  double threshold = 0.0;
  bool smoothed_pvalues = false;
};

/// Keeps edge (i, j, w_ij) iff p_ij < threshold and w_ij > 0.
WeightedGraph filter_network(const SimilarityMatrix& w, const PValueMatrix& p, const FilterOptions& options,
                             std::vector<NodeAttributes> nodes);

/// Induced subgraph on the largest connected component; ties go to the
/// component containing the smallest node index.
WeightedGraph largest_component(const WeightedGraph& graph);

/// Connected components as ascending node lists, ordered by smallest member.
std::vector<std::vector<std::size_t>> connected_components(const WeightedGraph& graph);

/// 2m / (n(n-1)). Throws ValidationError if n < 2.
double density(const WeightedGraph& graph);

/// Node attributes for the matrix rows, taken from the corpus.
std::vector<NodeAttributes> node_attributes(const DocTermMatrix& matrix, const Corpus& corpus);

struct NetworkOptions {
  double alpha = 0.001;
  /// Threshold alpha / C(n, 2) when set, alpha otherwise.
  bool bonferroni = true;
  bool smoothed_pvalues = false;
  FrequencyInput input = FrequencyInput::absolute;
  PermutationOptions permutation;
};

struct NetworkBuild {
  SimilarityMatrix similarity;
  PValueMatrix pvalues;
  double threshold = 0.0;
  /// All matrix rows as nodes.
  WeightedGraph filtered;
  WeightedGraph component;
};

/// Similarity, permutation test, filtering and largest component.
NetworkBuild build_network(const DocTermMatrix& matrix, std::vector<NodeAttributes> nodes,
                           const NetworkOptions& options);

}  // namespace econet
