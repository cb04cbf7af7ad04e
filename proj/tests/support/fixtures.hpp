#pragma once

// Test fixture generators: planted-partition graphs with connected clusters,
// sparse inter-cluster edges, and optional outliers. Everything is driven by
// a named RngStream so fixtures are reproducible.

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "reccs/clustering.hpp"
#include "reccs/graph.hpp"
#include "reccs/rng.hpp"

namespace reccs::test {

inline Graph make_graph(std::size_t n,
                        std::initializer_list<std::pair<NodeId, NodeId>> edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Clustering make_clustering(std::size_t n,
                                  std::initializer_list<std::vector<NodeId>> blocks) {
  return Clustering::from_blocks(n, std::vector<std::vector<NodeId>>(blocks));
}

struct FixtureOptions {
  std::size_t min_clusters = 10;
  std::size_t max_clusters = 200;
  std::size_t min_size = 2;
  std::size_t max_size = 100;
  double extra_intra = 0.5;       // extra intra edges per node beyond the spanning tree
  double inter_fraction = 0.15;   // inter-cluster edges as a fraction of intra edges
  double outlier_fraction = 0.08; // outliers relative to clustered node count
  std::size_t max_outlier_degree = 3;
};

struct Fixture {
  Graph graph;
  Clustering clustering;
};

inline Fixture random_clustered_fixture(RngStream& rng, const FixtureOptions& opt = {}) {
  const std::size_t cluster_count =
      opt.min_clusters + rng.index(opt.max_clusters - opt.min_clusters + 1);
  std::vector<std::size_t> sizes(cluster_count);
  std::size_t clustered_total = 0;
  for (auto& s : sizes) {
    s = opt.min_size + rng.index(opt.max_size - opt.min_size + 1);
    clustered_total += s;
  }
  const auto outlier_count =
      static_cast<std::size_t>(opt.outlier_fraction * static_cast<double>(clustered_total));
  const std::size_t n = clustered_total + outlier_count;

  std::vector<NodeId> ids(n);
  for (NodeId v = 0; v < n; ++v) ids[v] = v;
  rng.shuffle(ids);

  std::vector<std::vector<NodeId>> blocks(cluster_count);
  std::size_t cursor = 0;
  for (std::size_t c = 0; c < cluster_count; ++c) {
    blocks[c].assign(ids.begin() + cursor, ids.begin() + cursor + sizes[c]);
    cursor += sizes[c];
  }
  std::vector<NodeId> outlier_ids(ids.begin() + cursor, ids.end());

  Graph g(n);
  std::uint64_t intra_edges = 0;
  for (const auto& block : blocks) {
    // Random spanning tree keeps every cluster connected.
    for (std::size_t j = 1; j < block.size(); ++j) {
      g.add_edge(block[j], block[rng.index(j)]);
      ++intra_edges;
    }
    const auto extra = static_cast<std::size_t>(opt.extra_intra * static_cast<double>(block.size()));
    for (std::size_t e = 0; e < extra; ++e) {
      const NodeId a = block[rng.index(block.size())];
      const NodeId b = block[rng.index(block.size())];
      if (a != b && g.add_edge(a, b)) ++intra_edges;
    }
  }

  const auto inter_target =
      static_cast<std::size_t>(opt.inter_fraction * static_cast<double>(intra_edges));
  for (std::size_t e = 0; e < inter_target && cluster_count > 1; ++e) {
    const std::size_t c1 = rng.index(cluster_count);
    std::size_t c2 = rng.index(cluster_count - 1);
    if (c2 >= c1) ++c2;
    g.add_edge(blocks[c1][rng.index(blocks[c1].size())], blocks[c2][rng.index(blocks[c2].size())]);
  }

  for (NodeId o : outlier_ids) {
    const std::size_t want = 1 + rng.index(opt.max_outlier_degree);
    for (std::size_t e = 0; e < want; ++e) {
      NodeId partner;
      if (outlier_ids.size() > 1 && rng.index(10) < 3) {
        partner = outlier_ids[rng.index(outlier_ids.size())];
      } else {
        const auto& block = blocks[rng.index(cluster_count)];
        partner = block[rng.index(block.size())];
      }
      if (partner != o) g.add_edge(o, partner);
    }
  }

  return Fixture{std::move(g), Clustering::from_blocks(n, blocks)};
}

// Small random graph for oracle equivalence checks.
inline Graph random_small_graph(RngStream& rng, std::size_t min_n = 2, std::size_t max_n = 12) {
  const std::size_t n = min_n + rng.index(max_n - min_n + 1);
  Graph g(n);
  const std::uint64_t density = 20 + rng.below(70);  // percent
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.below(100) < density) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace reccs::test
