#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "reccs/dcsbm.hpp"
#include "support/fixtures.hpp"

using namespace reccs;

namespace {

BlockParams two_node_block(std::uint32_t d0, std::uint32_t d1, std::uint64_t edges) {
  BlockParams p;
  p.n = 2;
  p.degree_target = {d0, d1};
  p.block_of = {0, 0};
  p.cluster_labels = {"c0"};
  p.connectivity_req = {0};
  p.edge_counts[{0, 0}] = edges;
  return p;
}

}  // namespace

TEST_CASE("draws are micro-canonical per block pair") {
  BlockParams p;
  p.n = 6;
  p.degree_target = {2, 1, 1, 2, 1, 1};
  p.block_of = {0, 0, 1, 1, 2, 2};
  p.cluster_labels = {"a", "b", "c"};
  p.connectivity_req = {0, 0, 0};
  p.edge_counts[{0, 0}] = 1;
  p.edge_counts[{0, 1}] = 2;
  p.edge_counts[{1, 2}] = 1;
  p.edge_counts[{2, 2}] = 3;

  for (int trial = 0; trial < 50; ++trial) {
    const auto draw = sample_dcsbm(p, RngStream(500 + trial, "draw"));
    std::map<BlockPair, std::uint64_t> counts;
    for (const auto& [u, v] : draw.edges) {
      ++counts[block_pair(static_cast<ClusterId>(p.block_of[u]),
                          static_cast<ClusterId>(p.block_of[v]))];
    }
    REQUIRE(counts == p.edge_counts);
  }
}

TEST_CASE("single-block single-edge draw matches the multinomial oracle") {
  // Degrees (1,1): endpoints are independent coin flips, so
  // P{(0,1)} = 1/2 and P{(0,0)} = P{(1,1)} = 1/4.
  const auto p = two_node_block(1, 1, 1);
  const int trials = 10000;
  int mixed = 0, loop0 = 0, loop1 = 0;
  for (int t = 0; t < trials; ++t) {
    const auto draw = sample_dcsbm(p, RngStream(9000, "multinomial" + std::to_string(t)));
    REQUIRE(draw.edges.size() == 1);
    const auto [u, v] = draw.edges[0];
    if (u != v) {
      ++mixed;
    } else if (u == 0) {
      ++loop0;
    } else {
      ++loop1;
    }
  }
  const double sigma_half = std::sqrt(trials * 0.25);          // p = 1/2
  const double sigma_quarter = std::sqrt(trials * 0.25 * 0.75);  // p = 1/4
  REQUIRE(std::abs(mixed - trials * 0.5) <= 3 * sigma_half);
  REQUIRE(std::abs(loop0 - trials * 0.25) <= 3 * sigma_quarter);
  REQUIRE(std::abs(loop1 - trials * 0.25) <= 3 * sigma_quarter);
}

TEST_CASE("endpoint choice is degree-proportional") {
  // Degrees (2,1): each endpoint lands on node 0 with probability 2/3.
  const auto p = two_node_block(2, 1, 1);
  const int trials = 20000;
  long long node0_endpoints = 0;
  for (int t = 0; t < trials; ++t) {
    const auto draw = sample_dcsbm(p, RngStream(41, "prop" + std::to_string(t)));
    const auto [u, v] = draw.edges[0];
    node0_endpoints += (u == 0) + (v == 0);
  }
  const double samples = 2.0 * trials;
  const double sigma = std::sqrt(samples * (2.0 / 3.0) * (1.0 / 3.0));
  REQUIRE(std::abs(node0_endpoints - samples * 2.0 / 3.0) <= 4 * sigma);
}

TEST_CASE("degenerate draws") {
  SECTION("all-zero matrix yields an empty multigraph") {
    auto p = two_node_block(1, 1, 0);
    p.edge_counts.clear();
    REQUIRE(sample_dcsbm(p, RngStream(1, "s")).edges.empty());
  }
  SECTION("two singleton blocks force parallel copies") {
    BlockParams p;
    p.n = 2;
    p.degree_target = {5, 5};
    p.block_of = {0, 1};
    p.cluster_labels = {"a", "b"};
    p.connectivity_req = {0, 0};
    p.edge_counts[{0, 1}] = 5;
    const auto draw = sample_dcsbm(p, RngStream(2, "s"));
    REQUIRE(draw.edges.size() == 5);
    for (const auto& [u, v] : draw.edges) {
      REQUIRE(u == 0);
      REQUIRE(v == 1);
    }
  }
  SECTION("zero-degree block with incident edges is infeasible") {
    auto p = two_node_block(0, 0, 1);
    REQUIRE_THROWS_WITH(sample_dcsbm(p, RngStream(3, "s")),
                        Catch::Matchers::ContainsSubstring("infeasible"));
  }
  SECTION("same stream reproduces the draw bit for bit") {
    BlockParams p;
    p.n = 4;
    p.degree_target = {2, 2, 1, 1};
    p.block_of = {0, 0, 1, 1};
    p.cluster_labels = {"a", "b"};
    p.connectivity_req = {0, 0};
    p.edge_counts[{0, 0}] = 2;
    p.edge_counts[{0, 1}] = 3;
    const auto a = sample_dcsbm(p, RngStream(77, "same"));
    const auto b = sample_dcsbm(p, RngStream(77, "same"));
    REQUIRE(a.edges == b.edges);
  }
}

TEST_CASE("simplify") {
  SECTION("removes self-loops and collapses parallels") {
    MultigraphDraw draw;
    draw.edges = {{0, 0}, {0, 1}, {0, 1}};
    SimplifyStats stats;
    const Graph g = simplify(draw, 2, &stats);
    REQUIRE(g.edge_count() == 1);
    REQUIRE(g.has_edge(0, 1));
    REQUIRE(stats.self_loops == 1);
    REQUIRE(stats.parallels == 1);
  }
  SECTION("already-simple draws pass through") {
    MultigraphDraw draw;
    draw.edges = {{0, 1}, {1, 2}};
    SimplifyStats stats;
    const Graph g = simplify(draw, 3, &stats);
    REQUIRE(g.edge_count() == 2);
    REQUIRE(stats.self_loops + stats.parallels == 0);
  }
  SECTION("a bundle of five keeps one edge") {
    MultigraphDraw draw;
    draw.edges.assign(5, {0, 1});
    SimplifyStats stats;
    const Graph g = simplify(draw, 2, &stats);
    REQUIRE(g.edge_count() == 1);
    REQUIRE(stats.parallels == 4);
  }
}

TEST_CASE("outlier network sampling") {
  SECTION("outlier-outlier edges are reproduced verbatim") {
    OutlierParams p;
    p.outlier_ids = {4, 5};
    p.outlier_outlier_edges = {{4, 5}};
    const auto clustering = test::make_clustering(6, {{0, 1, 2}});
    const Graph g = sample_outlier_network(p, clustering, RngStream(1, "o"));
    REQUIRE(g.edge_count() == 1);
    REQUIRE(g.has_edge(4, 5));
  }
  SECTION("cluster draws respect counts modulo collisions") {
    OutlierParams p;
    p.outlier_ids = {4};
    p.outlier_block_counts[{4, 0}] = 2;
    p.clustered_outlier_degree = {{0, 1}, {1, 1}, {2, 1}};
    const auto clustering = test::make_clustering(5, {{0, 1, 2}});
    OutlierDrawStats stats;
    const Graph g = sample_outlier_network(p, clustering, RngStream(2, "o"), &stats);
    REQUIRE(stats.drawn_edges == 2);
    REQUIRE(g.degree(4) >= 1);
    REQUIRE(g.degree(4) <= 2);
    REQUIRE(g.edge_count() + stats.collisions == 2);
  }
  SECTION("empty params yield an empty graph") {
    const auto clustering = test::make_clustering(3, {{0, 1}});
    const Graph g = sample_outlier_network(OutlierParams{}, clustering, RngStream(3, "o"));
    REQUIRE(g.edge_count() == 0);
  }
  SECTION("unknown cluster id errors") {
    OutlierParams p;
    p.outlier_block_counts[{4, 9}] = 1;
    const auto clustering = test::make_clustering(5, {{0, 1, 2}});
    REQUIRE_THROWS_WITH(sample_outlier_network(p, clustering, RngStream(4, "o")),
                        Catch::Matchers::ContainsSubstring("unknown cluster"));
  }
}
