#include <doctest.h>

#include <cmath>

#include "econet/community.hpp"
#include "econet/error.hpp"
#include "graphs.hpp"
#include "oracles.hpp"
#include "tempdir.hpp"

using namespace econet;
using econet::testing::planted_blocks;
using econet::testing::two_cliques;

namespace {

Partition truth(const WeightedGraph& g, std::size_t size) {
  std::vector<std::size_t> labels(g.node_count());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i / size;
  return make_partition(g, "truth", labels);
}

// Best modularity over every set partition (restricted growth strings).
double exhaustive_best_modularity(const WeightedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> a(n, 0), max_prefix(n, 0);
  double two_m = 0.0;
  for (const auto& e : g.edges()) two_m += 2.0 * e.weight;
  double best = -1.0;
  std::vector<double> in(n), tot(n);
  for (;;) {
    std::fill(in.begin(), in.end(), 0.0);
    std::fill(tot.begin(), tot.end(), 0.0);
    for (const auto& e : g.edges()) {
      tot[a[e.u]] += e.weight;
      tot[a[e.v]] += e.weight;
      if (a[e.u] == a[e.v]) in[a[e.u]] += 2.0 * e.weight;
    }
    double q = 0.0;
    for (std::size_t c = 0; c < n; ++c) q += in[c] / two_m - (tot[c] / two_m) * (tot[c] / two_m);
    best = std::max(best, q);
    std::size_t i = n - 1;
    while (i > 0 && a[i] == max_prefix[i - 1] + 1) --i;
    if (i == 0) return best;
    ++a[i];
    max_prefix[i] = std::max(max_prefix[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      max_prefix[j] = max_prefix[j - 1];
    }
  }
}

}  // namespace

TEST_CASE("two cliques are recovered by every method") {
  const auto g = two_cliques(5);
  const Partition t = truth(g, 5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(adjusted_rand_index(louvain(g, seed), t) == 1.0);
    CHECK(adjusted_rand_index(label_propagation(g, seed), t) == 1.0);
  }
  CHECK(adjusted_rand_index(greedy_modularity(g), t) == 1.0);
}

TEST_CASE("complete graph stays whole") {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) e.push_back({i, j, 1.0});
  }
  const auto g = WeightedGraph::from_edges(6, e);
  CHECK(louvain(g, 1).community_count() == 1);
  CHECK(label_propagation(g, 1).community_count() == 1);
  CHECK(greedy_modularity(g).community_count() == 1);
}

TEST_CASE("planted blocks reach the exhaustive optimum") {
  const auto g = planted_blocks(3, 4, 0.3, 5);
  const double best = exhaustive_best_modularity(g);
  const Partition t = truth(g, 4);
  CHECK(modularity(g, t, true) == doctest::Approx(best).epsilon(1e-12));
  const Partition l = louvain(g, 3);
  CHECK(adjusted_rand_index(l, t) == 1.0);
  CHECK(modularity(g, l, true) == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("methods agree on a larger planted graph") {
  const auto g = planted_blocks(3, 10, 0.2, 8);
  const Partition t = truth(g, 10);
  const std::vector<Partition> parts{louvain(g, 1), label_propagation(g, 1), greedy_modularity(g), t};
  const auto m = ari_matrix(parts);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < parts.size(); ++j) CHECK(m(i, j) >= 0.9);
  }
}

TEST_CASE("modularity values") {
  const auto g = two_cliques(5);
  CHECK(modularity(g, truth(g, 5)) == doctest::Approx(19.0 / 42.0).epsilon(1e-15));
  CHECK(modularity(g, truth(g, 10)) == doctest::Approx(0.0));
  const auto single = WeightedGraph::from_edges(3, {{0, 1, 1.0}});
  CHECK(modularity(single, truth(single, 1)) == doctest::Approx(-0.5));
  CHECK(modularity(WeightedGraph::from_edges(3, {}), truth(single, 1)) == 0.0);
}

TEST_CASE("modularity matches the double sum") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = econet::testing::with_random_weights(14, econet::testing::random_edges(14, 0.35, rng), rng);
    std::vector<std::size_t> labels(14);
    for (auto& l : labels) l = rng.below(4);
    const Partition p = make_partition(g, "random", labels);
    const auto d = econet::testing::dense(g);
    CHECK(std::abs(modularity(g, p, false) - econet::testing::naive_modularity(d, labels, false)) < 1e-12);
    CHECK(std::abs(modularity(g, p, true) - econet::testing::naive_modularity(d, labels, true)) < 1e-12);
  }
}

TEST_CASE("louvain ends at a local optimum") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = econet::testing::with_random_weights(25, econet::testing::random_edges(25, 0.15, rng), rng);
    CHECK(best_single_move_gain(g, louvain(g, trial)) <= 1e-12);
    CHECK(best_single_move_gain(g, louvain(g, trial, false), false) <= 1e-12);
  }
}

TEST_CASE("same seed, same partition") {
  const auto g = planted_blocks(4, 8, 0.3, 2);
  CHECK(louvain(g, 5).community == louvain(g, 5).community);
  CHECK(label_propagation(g, 5).community == label_propagation(g, 5).community);
}

TEST_CASE("adjusted rand index") {
  const auto g = WeightedGraph::from_edges(6, {});
  const std::vector<std::size_t> a{0, 0, 0, 1, 1, 1}, b{0, 0, 1, 0, 1, 1}, relabeled{7, 7, 7, 2, 2, 2};
  const Partition pa = make_partition(g, "a", a), pb = make_partition(g, "b", b);
  CHECK(adjusted_rand_index(pa, make_partition(g, "r", relabeled)) == 1.0);
  CHECK(adjusted_rand_index(pa, pb) == doctest::Approx(-1.0 / 9.0).epsilon(1e-15));
  CHECK(adjusted_rand_index(pa, pb) == doctest::Approx(econet::testing::pair_counting_ari(a, b)));

  const auto g5 = WeightedGraph::from_edges(5, {});
  const std::vector<std::size_t> singles{0, 1, 2, 3, 4}, block(5, 0);
  CHECK(adjusted_rand_index(make_partition(g5, "s", singles), make_partition(g5, "b", block)) == 0.0);
  CHECK_THROWS_AS(adjusted_rand_index(pa, make_partition(g5, "b", block)), ValidationError);

  const auto m = ari_matrix(std::vector<Partition>{pa, pa});
  CHECK(m(0, 1) == 1.0);
  CHECK(m(1, 0) == 1.0);
  CHECK(m(0, 0) == 1.0);
}

TEST_CASE("partition files") {
  econet::testing::TempDir dir;
  const auto g = two_cliques(3);
  const Partition p = louvain(g, 1);
  write_partition(p, dir / "p.csv");
  const Partition back = read_partition(g, dir / "p.csv", "copy");
  CHECK(back.community == p.community);
  CHECK(back.method == "copy");

  dir.write("sparse.csv", "node_id,community_id\n5,40\n4,40\n3,40\n2,9\n1,9\n0,9\n");
  CHECK(read_partition(g, dir / "sparse.csv", "x").community == std::vector<std::size_t>{0, 0, 0, 1, 1, 1});
  dir.write("missing.csv", "node_id,community_id\n0,1\n1,1\n");
  CHECK_THROWS_AS(read_partition(g, dir / "missing.csv", "x"), ValidationError);
  dir.write("dup.csv", "node_id,community_id\n0,1\n0,1\n1,1\n2,1\n3,1\n4,1\n5,1\n");
  CHECK_THROWS_AS(read_partition(g, dir / "dup.csv", "x"), ValidationError);
  dir.write("unknown.csv", "node_id,community_id\n0,1\n1,1\n2,1\n3,1\n4,1\n5,1\nzz,1\n");
  CHECK_THROWS_AS(read_partition(g, dir / "unknown.csv", "x"), ValidationError);
}
