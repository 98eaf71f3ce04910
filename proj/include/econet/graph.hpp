#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace econet {

struct NodeAttributes {
  std::string id;
  std::string date;
  std::string speaker;
  std::string category;

  friend bool operator==(const NodeAttributes&, const NodeAttributes&) = default;
};

/// Undirected edge with u < v.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  std::size_t node = 0;
  double weight = 0.0;
  std::size_t edge = 0;
};

/// Simple undirected graph with positive edge weights. Edges are kept sorted
/// by (u, v); neighbor lists are sorted by node index.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Throws ValidationError on self-loops, duplicate edges, out-of-range
  /// endpoints or weights that are not finite and positive.
  WeightedGraph(std::vector<NodeAttributes> nodes, std::vector<Edge> edges);

  /// Nodes 0..n-1 with ids "0".."n-1" and no other attributes.
  static WeightedGraph from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<NodeAttributes>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(std::size_t node) const { return adjacency_[node]; }
  std::size_t degree(std::size_t node) const { return adjacency_[node].size(); }
  double strength(std::size_t node) const { return strengths_[node]; }

  bool has_edge(std::size_t a, std::size_t b) const;

  /// Edge weights in edge order.
  std::vector<double> weights() const;

  /// Same nodes and edges with `weights[e]` on edge e.
  WeightedGraph with_weights(std::span<const double> weights) const;

  /// Same topology with every weight set to `value`.
  WeightedGraph with_constant_weight(double value) const;

  /// Subgraph induced by `keep` (ascending node indices), renumbered.
  WeightedGraph induced(std::span<const std::size_t> keep) const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  void index();

  std::vector<NodeAttributes> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> strengths_;
};

/// Edge list CSV `src,dst,weight` with node ids.
void write_edges(const WeightedGraph& graph, const std::filesystem::path& path);
/// Node table CSV `id,date,speaker,category`.
void write_nodes(const WeightedGraph& graph, const std::filesystem::path& path);
/// Reads both files; node order follows the node table.
WeightedGraph read_graph(const std::filesystem::path& edges_path,
                         const std::filesystem::path& nodes_path);

}  // namespace econet
