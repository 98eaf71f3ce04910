#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "econet/graph.hpp"
#include "econet/rng.hpp"

namespace econet::testing {

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

/// One representative of every isomorphism class of simple graphs on n
/// nodes (n <= 8), grown vertex by vertex and deduplicated by canonical
/// adjacency code.
std::vector<EdgeList> nonisomorphic_graphs(std::size_t n);

/// G(n, p) edge list.
EdgeList random_edges(std::size_t n, double p, Rng& rng);

/// Weights uniform in (0, 1], rounded to multiples of 1/64 when `coarse`
/// so that ties occur.
WeightedGraph with_random_weights(std::size_t n, const EdgeList& edges, Rng& rng, bool coarse = false);

WeightedGraph unit_graph(std::size_t n, const EdgeList& edges);

/// Two k-cliques joined by a single edge between node 0 and node k.
WeightedGraph two_cliques(std::size_t k);

/// `blocks` blocks of `size` nodes; intra-block weight 1.0 on every pair,
/// inter-block weight 0.05 on a seeded fraction `inter` of cross pairs.
WeightedGraph planted_blocks(std::size_t blocks, std::size_t size, double inter, std::uint64_t seed);

}  // namespace econet::testing
