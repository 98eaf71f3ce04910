#include <doctest.h>

#include <cmath>

#include "econet/error.hpp"
#include "econet/simnet.hpp"
#include "oracles.hpp"

using namespace econet;

namespace {

Matrix<double> rows_of(std::vector<std::vector<double>> data) {
  Matrix<double> m(data.size(), data[0].size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data[i].size(); ++j) m(i, j) = data[i][j];
  }
  return m;
}

std::vector<NodeAttributes> nodes(std::size_t n) {
  std::vector<NodeAttributes> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({"n" + std::to_string(i), "", "", ""});
  return out;
}

PValueMatrix uniform_counts(std::size_t n, std::uint32_t count, std::size_t perms) {
  return PValueMatrix(n, perms, 0, std::vector<std::uint32_t>(n * (n - 1) / 2, count));
}

const Matrix<double> kFixture = rows_of({{3, 0, 1, 4, 0, 2, 0, 1},
                                         {2, 1, 0, 5, 0, 1, 0, 2},
                                         {0, 4, 0, 0, 3, 0, 2, 0},
                                         {1, 3, 1, 0, 2, 0, 3, 1},
                                         {3, 0, 2, 3, 1, 2, 0, 0}});

}  // namespace

TEST_CASE("cosine") {
  const std::vector<double> a{1, 2, 0}, b{2, 1, 0}, x{1, 0}, y{0, 1};
  CHECK(cosine(a, b) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(cosine(a, a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cosine(x, y) == 0.0);
  const std::vector<double> zero{0, 0, 0};
  CHECK_THROWS_AS(cosine(a, zero), ValidationError);
  CHECK_THROWS_AS(cosine(a, x), ValidationError);
}

TEST_CASE("similarity matrix") {
  const auto s = similarity_matrix(rows_of({{1, 2, 0}, {1, 2, 0}, {0, 0, 5}}));
  CHECK(s(0, 1) == doctest::Approx(1.0));
  CHECK(s(0, 2) == 0.0);
  CHECK(s(1, 1) == 0.0);
  CHECK(s(2, 1) == s(1, 2));
  CHECK_THROWS_AS(similarity_matrix(rows_of({{1, 2}})), ValidationError);
}

TEST_CASE("constant rows are never beaten by chance") {
  const auto p = permutation_pvalues(rows_of({{2, 2, 2, 2}, {2, 2, 2, 2}, {1, 0, 0, 3}}), {200, 5, 1});
  CHECK(p.exceedances(0, 1) == 200);
  CHECK(p.p(0, 1) == 1.0);
  CHECK(p.p(1, 1) == 1.0);
  CHECK(p.p(0, 1, true) == 1.0);
}

TEST_CASE("p-values equal an independent replay") {
  for (std::uint64_t seed : {1u, 42u}) {
    const auto p = permutation_pvalues(kFixture, {1000, seed, 1});
    CHECK(p.packed() == econet::testing::naive_exceedances(kFixture, seed, 1000));
    CHECK(p.permutations() == 1000);
  }
}

TEST_CASE("p-values do not depend on the worker count") {
  const auto one = permutation_pvalues(kFixture, {500, 9, 1});
  CHECK(permutation_pvalues(kFixture, {500, 9, 3}) == one);
  CHECK(permutation_pvalues(kFixture, {500, 9, 8}) == one);
  CHECK_FALSE(permutation_pvalues(kFixture, {500, 10, 1}) == one);
}

TEST_CASE("replayed instance is a row-wise permutation") {
  const auto s = shuffled_instance(kFixture, 3, 17);
  for (std::size_t i = 0; i < kFixture.rows(); ++i) {
    std::vector<double> a(kFixture.row(i).begin(), kFixture.row(i).end()), b(s.row(i).begin(), s.row(i).end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("bonferroni threshold") {
  CHECK(bonferroni_threshold(0.001, 948) == doctest::Approx(0.001 / 448878.0).epsilon(1e-14));
  CHECK(bonferroni_threshold(0.001, 948) == doctest::Approx(2.2278e-9).epsilon(1e-4));
  CHECK(bonferroni_threshold(0.5, 2) == 0.5);
  CHECK_THROWS_AS(bonferroni_threshold(0.001, 1), ValidationError);
  CHECK_THROWS_AS(bonferroni_threshold(0.0, 10), ValidationError);
  CHECK_THROWS_AS(bonferroni_threshold(1.0, 10), ValidationError);
}

TEST_CASE("filtering extremes") {
  const auto s = similarity_matrix(kFixture);
  const auto none = filter_network(s, uniform_counts(5, 100, 100), {0.01, false}, nodes(5));
  CHECK(none.edge_count() == 0);
  CHECK(none.node_count() == 5);
  const auto all = filter_network(s, uniform_counts(5, 0, 100), {0.01, false}, nodes(5));
  std::size_t positive = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) positive += s(i, j) > 0 ? 1 : 0;
  }
  CHECK(all.edge_count() == positive);
  for (const auto& e : all.edges()) CHECK(e.weight == s(e.u, e.v));
}

TEST_CASE("filtering is monotone in the threshold") {
  const auto s = similarity_matrix(kFixture);
  const auto p = permutation_pvalues(kFixture, {400, 2, 1});
  std::size_t previous = 0;
  for (double tau = 0.0; tau <= 1.0; tau += 0.0125) {
    const auto g = filter_network(s, p, {tau, false}, nodes(5));
    CHECK(g.edge_count() >= previous);
    if (previous > 0) {
      const auto smaller = filter_network(s, p, {tau - 0.0125, false}, nodes(5));
      for (const auto& e : smaller.edges()) CHECK(g.has_edge(e.u, e.v));
    }
    previous = g.edge_count();
  }
}

TEST_CASE("largest component") {
  std::vector<Edge> e{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {5, 6, 1}, {6, 7, 1}};
  const auto g = WeightedGraph::from_edges(8, e);
  const auto c = largest_component(g);
  CHECK(c.node_count() == 5);
  CHECK(c.edge_count() == 4);
  CHECK(connected_components(g).size() == 2);
  const auto k = WeightedGraph::from_edges(3, {{0, 1, 1}, {1, 2, 1}});
  CHECK(largest_component(k) == k);
  const auto tie = WeightedGraph::from_edges(4, {{2, 3, 1}, {0, 1, 1}});
  CHECK(largest_component(tie).nodes()[0].id == "0");
}

TEST_CASE("density") {
  std::vector<Edge> k4;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) k4.push_back({i, j, 0.5});
  }
  CHECK(density(WeightedGraph::from_edges(4, k4)) == 1.0);
  CHECK(density(WeightedGraph::from_edges(4, {})) == 0.0);
  CHECK_THROWS_AS(density(WeightedGraph::from_edges(1, {})), ValidationError);
}
