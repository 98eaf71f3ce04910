#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "econet/graph.hpp"

namespace econet {

/// Per-node degree, strength and local clustering. Clustering is undefined
/// (nullopt) for nodes with fewer than two neighbors.
struct NodeStats {
  std::size_t degree = 0;
  double strength = 0.0;
  std::optional<double> weighted_clustering;
  std::optional<double> unweighted_clustering;
};

/// 3 * triangles / connected triples on the binary topology; nullopt when
/// the graph has no connected triple.
std::optional<double> global_clustering(const WeightedGraph& graph);

/// Weighted local clustering
///   c_i = 1 / (s_i (k_i - 1)) * sum_{j != h} (w_ij + w_ih) / 2 * a_ij a_ih a_jh
/// over ordered neighbor pairs. Equals the unweighted coefficient when all
/// weights are equal.
std::optional<double> local_weighted_clustering(const WeightedGraph& graph, std::size_t node);

/// Closed neighbor pairs / all neighbor pairs.
std::optional<double> local_unweighted_clustering(const WeightedGraph& graph, std::size_t node);

std::vector<NodeStats> node_stats(const WeightedGraph& graph);

/// Mean over defined values; nullopt if none is defined.
std::optional<double> mean_defined(std::span<const std::optional<double>> values);

/// Complementary CDF: for each distinct sample value X (ascending), the
/// fraction of samples strictly greater than X.
struct CcdfCurve {
  std::vector<double> values;
  std::vector<double> exceed;
};

CcdfCurve ccdf(std::vector<double> samples);

/// Fixed-topology null model: instance t carries a uniform random
/// permutation of the original edge weights, drawn from stream (seed, t).
/// Instances are generated on demand.
class NullEnsemble {
 public:
  NullEnsemble(const WeightedGraph& graph, std::size_t instances, std::uint64_t seed);

  std::size_t size() const noexcept { return instances_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::vector<double> instance_weights(std::size_t t) const;
  WeightedGraph instance(std::size_t t) const;

 private:
  const WeightedGraph* graph_;
  std::vector<double> weights_;
  std::size_t instances_;
  std::uint64_t seed_;
};

struct ClusteringNull {
  /// Defined weighted c_i of the actual graph and its ccdf.
  CcdfCurve actual;
  std::optional<double> actual_mean;
  /// c_i pooled over all instances.
  CcdfCurve pooled;
  /// Mean defined c_i of each instance.
  std::vector<double> instance_means;
  /// Mean of instance_means (nullopt when no node has k >= 2).
  std::optional<double> null_mean;
  /// Fraction of ccdf evaluation points (the union of both sample sets)
  /// where the actual ccdf is at least the pooled null ccdf.
  double right_shift_fraction = 0.0;
};

ClusteringNull clustering_null(const WeightedGraph& graph, std::size_t instances, std::uint64_t seed,
                               unsigned workers = 1);

/// Newman's scalar assortativity on the binary adjacency; equals the
/// Pearson correlation of attribute values across both orientations of
/// every edge. nullopt when undefined (no edges, zero variance).
std::optional<double> assortativity_scalar(const WeightedGraph& graph, std::span<const double> x);

/// Categorical assortativity
///   r = sum_ij (a_ij - k_i k_j / 2m) d(f_i, f_j) / (2m - sum_ij k_i k_j / 2m d(f_i, f_j)).
/// nullopt when the denominator vanishes (e.g. a single category).
std::optional<double> assortativity_categorical(const WeightedGraph& graph,
                                                std::span<const std::string> categories);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts;

  double bin_width() const { return counts.empty() ? 0.0 : (hi - lo) / static_cast<double>(counts.size()); }
};

/// Equal-width bins over [min, max], last bin closed. Throws
/// ValidationError on empty input or zero bins.
Histogram histogram(std::span<const double> values, std::size_t bins);

/// Hartigan's dip statistic of a sample (distance of the empirical CDF to
/// the closest unimodal CDF). Throws ValidationError on empty input.
double dip_statistic(std::vector<double> sample);

/// Sarle's bimodality coefficient (g^2 + 1) / (k + 3 (n-1)^2 / ((n-2)(n-3)))
/// with sample skewness g and excess kurtosis k; nullopt for n < 4 or zero
/// variance. Values above 5/9 suggest bimodality.
std::optional<double> bimodality_coefficient(std::span<const double> sample);

}  // namespace econet
