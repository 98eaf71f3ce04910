#include "econet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "econet/csv.hpp"
#include "econet/error.hpp"

namespace econet {

WeightedGraph::WeightedGraph(std::vector<NodeAttributes> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.u == e.v) throw ValidationError("self-loop on node " + std::to_string(e.u));
    if (e.u >= nodes_.size() || e.v >= nodes_.size()) throw ValidationError("edge endpoint out of range");
    if (!std::isfinite(e.weight) || e.weight <= 0.0) {
      throw ValidationError("edge weight must be finite and positive");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw ValidationError("duplicate edge " + std::to_string(edges_[i].u) + "-" +
                            std::to_string(edges_[i].v));
    }
  }
  index();
}

WeightedGraph WeightedGraph::from_edges(std::size_t n, std::vector<Edge> edges) {
  std::vector<NodeAttributes> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i].id = std::to_string(i);
  return WeightedGraph(std::move(nodes), std::move(edges));
}

void WeightedGraph::index() {
  adjacency_.assign(nodes_.size(), {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    adjacency_[edges_[e].u].push_back({edges_[e].v, edges_[e].weight, e});
    adjacency_[edges_[e].v].push_back({edges_[e].u, edges_[e].weight, e});
  }
  strengths_.assign(nodes_.size(), 0.0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    auto& adj = adjacency_[i];
    std::sort(adj.begin(), adj.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    for (const auto& nb : adj) strengths_[i] += nb.weight;
  }
}

bool WeightedGraph::has_edge(std::size_t a, std::size_t b) const {
  const auto& adj = adjacency_[a];
  auto it = std::lower_bound(adj.begin(), adj.end(), b,
                             [](const Neighbor& nb, std::size_t key) { return nb.node < key; });
  return it != adj.end() && it->node == b;
}

std::vector<double> WeightedGraph::weights() const {
  std::vector<double> w;
  w.reserve(edges_.size());
  for (const auto& e : edges_) w.push_back(e.weight);
  return w;
}

WeightedGraph WeightedGraph::with_weights(std::span<const double> weights) const {
  if (weights.size() != edges_.size()) throw Error("with_weights: size mismatch");
  WeightedGraph g = *this;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!std::isfinite(weights[e]) || weights[e] <= 0.0) {
      throw ValidationError("edge weight must be finite and positive");
    }
    g.edges_[e].weight = weights[e];
  }
  g.index();
  return g;
}

WeightedGraph WeightedGraph::with_constant_weight(double value) const {
  const std::vector<double> w(edges_.size(), value);
  return with_weights(w);
}

WeightedGraph WeightedGraph::induced(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> remap(nodes_.size(), static_cast<std::size_t>(-1));
  std::vector<NodeAttributes> nodes;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    remap[keep[k]] = k;
    nodes.push_back(nodes_[keep[k]]);
  }
  std::vector<Edge> edges;
  for (const auto& e : edges_) {
    if (remap[e.u] != static_cast<std::size_t>(-1) && remap[e.v] != static_cast<std::size_t>(-1)) {
      edges.push_back({remap[e.u], remap[e.v], e.weight});
    }
  }
  return WeightedGraph(std::move(nodes), std::move(edges));
}

void write_edges(const WeightedGraph& graph, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  csv::write_row(out, {"src", "dst", "weight"});
  for (const auto& e : graph.edges()) {
    csv::write_row(out, {graph.nodes()[e.u].id, graph.nodes()[e.v].id, csv::format_double(e.weight)});
  }
}

void write_nodes(const WeightedGraph& graph, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  csv::write_row(out, {"id", "date", "speaker", "category"});
  for (const auto& n : graph.nodes()) csv::write_row(out, {n.id, n.date, n.speaker, n.category});
}

WeightedGraph read_graph(const std::filesystem::path& edges_path,
                         const std::filesystem::path& nodes_path) {
  const auto node_table = csv::read(nodes_path);
  csv::require_header(node_table, {"id", "date", "speaker", "category"}, nodes_path.string());
  std::vector<NodeAttributes> nodes;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& r : node_table.rows) {
    if (!index.emplace(r[0], nodes.size()).second) {
      throw ValidationError(nodes_path.string() + ": duplicate node id '" + r[0] + "'");
    }
    nodes.push_back({r[0], r[1], r[2], r[3]});
  }
  const auto edge_table = csv::read(edges_path);
  csv::require_header(edge_table, {"src", "dst", "weight"}, edges_path.string());
  std::vector<Edge> edges;
  for (const auto& r : edge_table.rows) {
    auto a = index.find(r[0]);
    auto b = index.find(r[1]);
    if (a == index.end() || b == index.end()) {
      throw ValidationError(edges_path.string() + ": edge " + r[0] + "-" + r[1] + " names an unknown node");
    }
    double w = 0.0;
    try {
      w = std::stod(r[2]);
    } catch (const std::exception&) {
      throw ValidationError(edges_path.string() + ": bad weight '" + r[2] + "'");
    }
    edges.push_back({a->second, b->second, w});
  }
  return WeightedGraph(std::move(nodes), std::move(edges));
}

}  // namespace econet
