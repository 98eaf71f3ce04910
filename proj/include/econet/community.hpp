#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "econet/graph.hpp"
#include "econet/matrix.hpp"

namespace econet {

/// Assignment of every node to a community. `nodes` holds node ids in graph
/// order and `community[i]` the community of nodes[i]; ids are dense
/// (0..count-1) and numbered by first appearance.
struct Partition {
  std::string method;
  std::vector<std::string> nodes;
  std::vector<std::size_t> community;

  std::size_t community_count() const;
};

/// Builds a partition over the graph's nodes from arbitrary labels,
/// renumbering them densely by first appearance.
Partition make_partition(const WeightedGraph& graph, std::string method,
                         std::span<const std::size_t> labels);

/// Throws ValidationError unless the partition covers exactly the graph's
/// nodes in graph order with dense community ids.
void validate_partition(const Partition& partition, const WeightedGraph& graph);

/// Newman modularity. With `weighted` false the binary adjacency is used.
double modularity(const WeightedGraph& graph, const Partition& partition, bool weighted = false);

/// Largest modularity change (times m) available by moving a single node
/// to a neighboring community or to a community of its own. Non-positive
/// at a local optimum.
double best_single_move_gain(const WeightedGraph& graph, const Partition& partition,
                             bool weighted = true);

/// Multilevel local moving and aggregation, node order shuffled from
/// `seed`. Ends with single-node moves on the original graph until no
/// move raises modularity.
Partition louvain(const WeightedGraph& graph, std::uint64_t seed, bool weighted = true);

/// Asynchronous label propagation. Each node takes the label with the
/// largest incident weight, keeping its own label when that label is among
/// the maxima and otherwise choosing among them at random. Stops after a
/// sweep without changes or `max_sweeps` sweeps.
Partition label_propagation(const WeightedGraph& graph, std::uint64_t seed, bool weighted = true,
                            std::size_t max_sweeps = 1000);

/// Clauset-Newman-Moore agglomeration: repeatedly merges the adjacent pair
/// with the largest modularity gain (lowest ids on ties) while the gain is
/// positive.
Partition greedy_modularity(const WeightedGraph& graph, bool weighted = true);

/// Contingency-table adjusted Rand index. Throws ValidationError when the
/// partitions cover different node lists. Returns 1 when both partitions
/// are trivially identical (the index is 0/0).
double adjusted_rand_index(const Partition& a, const Partition& b);

Matrix<double> ari_matrix(std::span<const Partition> partitions);

/// CSV `node_id,community_id`.
void write_partition(const Partition& partition, const std::filesystem::path& path);

/// Reads a partition for `graph`; rows may come in any order and community
/// ids may be any non-negative integers. Throws ValidationError on missing,
/// duplicate or unknown nodes.
Partition read_partition(const WeightedGraph& graph, const std::filesystem::path& path,
                         std::string method);

}  // namespace econet
