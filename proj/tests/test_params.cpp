#include <catch2/catch_amalgamated.hpp>

#include "reccs/params.hpp"
#include "reccs/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace reccs;

TEST_CASE("block params of two disjoint triangles") {
  const Graph g = test::make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  const auto clustering = test::make_clustering(6, {{0, 1, 2}, {3, 4, 5}});
  const auto params = extract_block_params(g, clustering);

  REQUIRE(params.edge_counts.at({0, 0}) == 3);
  REQUIRE(params.edge_counts.at({1, 1}) == 3);
  REQUIRE(params.edge_counts.count({0, 1}) == 0);
  for (NodeId v = 0; v < 6; ++v) REQUIRE(params.degree_target[v] == 2);
  REQUIRE(params.connectivity_req == std::vector<std::uint32_t>{2, 2});
}

TEST_CASE("block params of a single-edge cluster") {
  const Graph g = test::make_graph(2, {{0, 1}});
  const auto clustering = test::make_clustering(2, {{0, 1}});
  const auto params = extract_block_params(g, clustering);
  REQUIRE(params.edge_counts.at({0, 0}) == 1);
  REQUIRE(params.degree_target[0] == 1);
  REQUIRE(params.degree_target[1] == 1);
  REQUIRE(params.connectivity_req == std::vector<std::uint32_t>{1});
}

TEST_CASE("inter-cluster edges land in the off-diagonal") {
  // triangle cluster c0 plus the 2-cluster {3,4} with edge (3,4); edge (2,3) crosses
  const Graph g = test::make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {2, 3}});
  const auto clustering = test::make_clustering(5, {{0, 1, 2}, {3, 4}});
  const auto params = extract_block_params(g, clustering);
  REQUIRE(params.edge_counts.at({0, 1}) == 1);
  REQUIRE(params.edge_counts.at({0, 0}) == 3);
  REQUIRE(params.edge_counts.at({1, 1}) == 1);
}

TEST_CASE("extraction without clusters is an error") {
  const Graph g = test::make_graph(3, {{0, 1}});
  const Clustering empty = Clustering::from_blocks(3, {});
  REQUIRE_THROWS_WITH(extract_block_params(g, empty),
                      Catch::Matchers::ContainsSubstring("nothing to model"));
}

TEST_CASE("degree targets exclude outlier-incident edges") {
  // node 2 is clustered but also touches outlier 4
  const Graph g = test::make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 4}, {3, 4}});
  const auto clustering = test::make_clustering(5, {{0, 1, 2}});
  const auto params = extract_block_params(g, clustering);
  REQUIRE(params.degree_target[2] == 2);  // only the triangle edges count in G_c
  REQUIRE(params.degree_target[4] == 0);
  REQUIRE(params.block_of[3] == BlockParams::kNoBlock);
}

TEST_CASE("outlier params") {
  SECTION("worked example") {
    const Graph g = test::make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {4, 5}, {4, 0}});
    const auto clustering = test::make_clustering(6, {{0, 1, 2}});
    const auto params = extract_outlier_params(g, clustering);
    REQUIRE(params.outlier_outlier_edges == std::vector<std::pair<NodeId, NodeId>>{{4, 5}});
    REQUIRE(params.outlier_block_counts.at({4, 0}) == 1);
    REQUIRE(params.outlier_degree_target.at(4) == 2);
    REQUIRE(params.outlier_degree_target.at(5) == 1);
    REQUIRE(params.clustered_outlier_degree.at(0) == 1);
  }
  SECTION("no outliers yields empty params") {
    const Graph g = test::make_graph(3, {{0, 1}, {1, 2}});
    const auto clustering = test::make_clustering(3, {{0, 1, 2}});
    const auto params = extract_outlier_params(g, clustering);
    REQUIRE(params.outlier_ids.empty());
    REQUIRE(params.outlier_outlier_edges.empty());
    REQUIRE(params.outlier_block_counts.empty());
  }
  SECTION("multiple edges into one cluster accumulate") {
    const Graph g = test::make_graph(5, {{0, 1}, {1, 2}, {4, 0}, {4, 1}});
    const auto clustering = test::make_clustering(5, {{0, 1, 2}});
    const auto params = extract_outlier_params(g, clustering);
    REQUIRE(params.outlier_block_counts.at({4, 0}) == 2);
  }
}

TEST_CASE("reconstruction identity on random fixtures") {
  RngStream rng(77, "params-reconstruction");
  test::FixtureOptions opt;
  opt.min_clusters = 4;
  opt.max_clusters = 20;
  opt.max_size = 25;
  for (int trial = 0; trial < 20; ++trial) {
    RngStream frng = rng.fork("f" + std::to_string(trial));
    const auto fixture = test::random_clustered_fixture(frng, opt);
    const auto block = extract_block_params(fixture.graph, fixture.clustering);
    const auto outlier = extract_outlier_params(fixture.graph, fixture.clustering);
    REQUIRE(block.total_edges() + outlier.total_edges() == fixture.graph.edge_count());

    std::uint64_t degree_sum = 0;
    for (auto d : block.degree_target) degree_sum += d;
    REQUIRE(degree_sum == 2 * block.total_edges());

    // k(C) values reproduce when the cuts are re-run independently.
    const Graph gc = induced_subgraph(fixture.graph, fixture.clustering.clustered_nodes());
    for (ClusterId c = 0; c < fixture.clustering.cluster_count(); ++c) {
      const auto cut = min_edge_cut_within(gc, fixture.clustering.members(c));
      REQUIRE(cut.cut_size == block.connectivity_req[c]);
    }
  }
}

TEST_CASE("extraction is deterministic") {
  RngStream rng(31, "params-determinism");
  const auto fixture = test::random_clustered_fixture(rng, {.min_clusters = 4, .max_clusters = 8, .max_size = 12});
  const auto a = extract_block_params(fixture.graph, fixture.clustering);
  const auto b = extract_block_params(fixture.graph, fixture.clustering);
  REQUIRE(to_json(a) == to_json(b));
}

TEST_CASE("params survive a JSON round trip") {
  RngStream rng(13, "params-json");
  const auto fixture = test::random_clustered_fixture(rng, {.min_clusters = 3, .max_clusters = 6, .max_size = 10});
  const auto block = extract_block_params(fixture.graph, fixture.clustering);
  const auto outlier = extract_outlier_params(fixture.graph, fixture.clustering);
  REQUIRE(to_json(block_params_from_json(to_json(block))) == to_json(block));
  REQUIRE(to_json(outlier_params_from_json(to_json(outlier))) == to_json(outlier));
}
