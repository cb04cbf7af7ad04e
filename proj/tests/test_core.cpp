#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "reccs/graph.hpp"
#include "reccs/io.hpp"
#include "reccs/rng.hpp"
#include "support/fixtures.hpp"

using namespace reccs;

TEST_CASE("rng streams are reproducible and name-separated") {
  RngStream a(42, "stage1");
  RngStream b(42, "stage1");
  for (int i = 0; i < 16; ++i) REQUIRE(a.next() == b.next());

  RngStream c(42, "stage2");
  RngStream d(43, "stage1");
  bool differs_name = false;
  bool differs_seed = false;
  RngStream a2(42, "stage1");
  for (int i = 0; i < 16; ++i) {
    const auto base = a2.next();
    differs_name |= base != c.next();
    differs_seed |= base != d.next();
  }
  REQUIRE(differs_name);
  REQUIRE(differs_seed);

  RngStream parent(7, "root");
  RngStream f1 = parent.fork("child");
  RngStream f2 = RngStream(7, "root").fork("child");
  REQUIRE(f1.next() == f2.next());
}

TEST_CASE("rng bounded draws stay in range") {
  RngStream rng(1, "bounds");
  for (std::uint64_t bound : {1ull, 2ull, 3ull, 7ull, 8ull, 1000ull}) {
    for (int i = 0; i < 200; ++i) REQUIRE(rng.below(bound) < bound);
  }
  REQUIRE_THROWS_AS(rng.below(0), std::invalid_argument);
}

TEST_CASE("graph stays simple under any insertion sequence") {
  Graph g(3);
  REQUIRE(g.add_edge(0, 1));
  REQUIRE_FALSE(g.add_edge(1, 0));  // duplicate via reversed order
  REQUIRE_FALSE(g.add_edge(2, 2));  // self-loop
  REQUIRE(g.add_edge(1, 2));
  REQUIRE(g.edge_count() == 2);
  REQUIRE(g.has_edge(0, 1));
  REQUIRE(g.has_edge(1, 0));
  REQUIRE_FALSE(g.has_edge(0, 2));
  REQUIRE(g.degree(1) == 2);
  REQUIRE(validate_graph(g).empty());
  REQUIRE_THROWS_AS(g.add_edge(0, 5), std::out_of_range);
}

TEST_CASE("induced subgraph keeps ids and filters edges") {
  const Graph triangle = test::make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  const Graph sub = induced_subgraph(triangle, {0, 1});
  REQUIRE(sub.node_count() == 3);
  REQUIRE(sub.edge_count() == 1);
  REQUIRE(sub.has_edge(0, 1));

  const Graph all = induced_subgraph(triangle, {0, 1, 2});
  REQUIRE(all.edges() == triangle.edges());

  const Graph star = test::make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
  const Graph leaves = induced_subgraph(star, {1, 2, 3});
  REQUIRE(leaves.edge_count() == 0);

  REQUIRE_THROWS_AS(induced_subgraph(triangle, {0, 9}), std::out_of_range);
}

TEST_CASE("edge list loading") {
  SECTION("triangle") {
    std::istringstream in("0 1\n1 2\n2 0\n");
    const auto loaded = load_edge_list(in);
    REQUIRE(loaded.graph.node_count() == 3);
    REQUIRE(loaded.graph.edge_count() == 3);
  }
  SECTION("duplicates and self-loops are dropped and counted") {
    std::istringstream in("0 1\n0 1\n0 0\n");
    const auto loaded = load_edge_list(in);
    REQUIRE(loaded.graph.edge_count() == 1);
    REQUIRE(loaded.report.duplicate_edges == 1);
    REQUIRE(loaded.report.self_loops == 1);
  }
  SECTION("string labels are remapped with the table retained") {
    std::istringstream in("a b\nb c\n");
    const auto loaded = load_edge_list(in);
    REQUIRE(loaded.graph.node_count() == 3);
    REQUIRE(loaded.graph.edge_count() == 2);
    REQUIRE(loaded.graph.labels() == std::vector<std::string>{"a", "b", "c"});
  }
  SECTION("malformed line reports its number") {
    std::istringstream in("0 1\n0 1 2\n");
    REQUIRE_THROWS_WITH(load_edge_list(in), Catch::Matchers::ContainsSubstring("line 2"));
  }
  SECTION("empty file is an empty graph") {
    std::istringstream in("");
    const auto loaded = load_edge_list(in);
    REQUIRE(loaded.graph.node_count() == 0);
    REQUIRE(loaded.graph.edge_count() == 0);
  }
  SECTION("comments are skipped") {
    std::istringstream in("# header\n0 1\n");
    REQUIRE(load_edge_list(in).graph.edge_count() == 1);
  }
}

TEST_CASE("canonical edge list writing") {
  const Graph triangle = test::make_graph(3, {{2, 0}, {1, 2}, {0, 1}});
  REQUIRE(canonical_edge_list(triangle) == "0\t1\n0\t2\n1\t2\n");
  REQUIRE(canonical_edge_list(Graph(0)).empty());
}

TEST_CASE("edge list round-trips through write and load") {
  RngStream rng(99, "roundtrip");
  for (int trial = 0; trial < 25; ++trial) {
    const Graph g = test::random_small_graph(rng, 2, 16);
    const std::string once = canonical_edge_list(g);
    std::istringstream in(once);
    const auto back = load_edge_list(in);
    REQUIRE(canonical_edge_list(back.graph) == once);
    REQUIRE(back.report.duplicate_edges == 0);
    REQUIRE(back.report.self_loops == 0);
  }
}

TEST_CASE("bound edge list loading keeps the reference universe") {
  std::istringstream real_in("a b\nb c\nc d\n");
  const auto real = load_edge_list(real_in).graph;

  std::istringstream synth_in("a c\n");
  const auto synth = load_edge_list_bound(synth_in, real);
  REQUIRE(synth.graph.node_count() == 4);  // d kept even though isolated here
  REQUIRE(synth.graph.edge_count() == 1);

  std::istringstream bad_in("a z\n");
  REQUIRE_THROWS_WITH(load_edge_list_bound(bad_in, real), Catch::Matchers::ContainsSubstring("'z'"));
}

TEST_CASE("clustering loading") {
  std::istringstream graph_in("0 1\n1 2\n3 4\n");
  const auto graph = load_edge_list(graph_in).graph;  // nodes 0..4

  SECTION("singleton assignments demote to outliers") {
    std::istringstream in("0 c1\n1 c1\n2 c1\n3 c2\n");
    const auto c = load_clustering(in, graph);
    REQUIRE(c.cluster_count() == 1);
    REQUIRE(c.members(0) == std::vector<NodeId>{0, 1, 2});
    REQUIRE(c.outliers() == std::vector<NodeId>{3, 4});
    REQUIRE(c.demoted_singletons() == 1);
  }
  SECTION("empty file leaves every node an outlier") {
    std::istringstream in("");
    const auto c = load_clustering(in, graph);
    REQUIRE(c.cluster_count() == 0);
    REQUIRE(c.outliers().size() == 5);
  }
  SECTION("conflicting assignment is an error") {
    std::istringstream in("0 c1\n1 c1\n0 c2\n");
    REQUIRE_THROWS_WITH(load_clustering(in, graph), Catch::Matchers::ContainsSubstring("c2"));
  }
  SECTION("unknown node label is an error naming the label") {
    std::istringstream in("9 c1\n");
    REQUIRE_THROWS_WITH(load_clustering(in, graph), Catch::Matchers::ContainsSubstring("'9'"));
  }
  SECTION("canonical clustering output") {
    std::istringstream in("1 c1\n0 c1\n");
    const auto c = load_clustering(in, graph);
    REQUIRE(canonical_clustering(c, graph) == "0\tc1\n1\tc1\n");
  }
}

TEST_CASE("fixture clusters are connected and valid") {
  RngStream rng(5, "fixture-sanity");
  test::FixtureOptions opt;
  opt.min_clusters = 4;
  opt.max_clusters = 10;
  opt.max_size = 20;
  const auto fixture = test::random_clustered_fixture(rng, opt);
  REQUIRE(validate_graph(fixture.graph).empty());
  REQUIRE(fixture.clustering.cluster_count() >= 4);
  for (ClusterId c = 0; c < fixture.clustering.cluster_count(); ++c) {
    REQUIRE(fixture.clustering.members(c).size() >= 2);
  }
}
