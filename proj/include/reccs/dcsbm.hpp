#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "reccs/clustering.hpp"
#include "reccs/graph.hpp"
#include "reccs/params.hpp"
#include "reccs/rng.hpp"

namespace reccs {

// Raw degree-corrected SBM draw: exactly edge_counts[r][s] endpoint pairs per
// block pair, self-loops and parallels included. Simplification is a separate
// step so the removed edges can be accounted for later.
struct MultigraphDraw {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::uint64_t seed = 0;
  std::string stream;
};

struct SimplifyStats {
  std::uint64_t self_loops = 0;
  std::uint64_t parallels = 0;
  std::vector<std::pair<NodeId, NodeId>> removed;
};

struct OutlierDrawStats {
  std::uint64_t drawn_edges = 0;     // pre-simplification, incl. verbatim edges
  std::uint64_t collisions = 0;      // outlier-cluster draws lost to dedup
};

// Micro-canonical degree-corrected draw: every block pair receives exactly
// its edge count; endpoints inside a block are chosen independently with
// probability proportional to degree_target (so intra-block draws can hit
// the same node twice, which is where self-loops come from). Each block pair
// samples from its own forked stream, so results do not depend on sampling
// order.
inline MultigraphDraw sample_dcsbm(const BlockParams& params, const RngStream& rng) {
  std::size_t block_count = params.cluster_labels.size();
  std::vector<std::vector<NodeId>> stubs(block_count);
  for (NodeId v = 0; v < params.n; ++v) {
    const auto b = params.block_of[v];
    if (b == BlockParams::kNoBlock) continue;
    for (std::uint32_t i = 0; i < params.degree_target[v]; ++i) {
      stubs[static_cast<std::size_t>(b)].push_back(v);
    }
  }

  MultigraphDraw draw;
  draw.seed = rng.seed();
  draw.stream = rng.name();
  draw.edges.reserve(params.total_edges());
  for (const auto& [pair, count] : params.edge_counts) {
    if (count == 0) continue;
    const auto& stubs_r = stubs[pair.first];
    const auto& stubs_s = stubs[pair.second];
    if (stubs_r.empty() || stubs_s.empty()) {
      throw std::invalid_argument("sample_dcsbm: infeasible block parameters, block with zero total degree has incident edges");
    }
    RngStream pair_rng = rng.fork("b" + std::to_string(pair.first) + "_" + std::to_string(pair.second));
    for (std::uint64_t i = 0; i < count; ++i) {
      const NodeId u = stubs_r[pair_rng.index(stubs_r.size())];
      const NodeId v = stubs_s[pair_rng.index(stubs_s.size())];
      draw.edges.emplace_back(u, v);
    }
  }
  return draw;
}

// Drops self-loops, collapses parallel bundles, reports what was removed.
inline Graph simplify(const MultigraphDraw& draw, std::size_t n, SimplifyStats* stats = nullptr) {
  Graph g(n);
  for (const auto& [u, v] : draw.edges) {
    if (u == v) {
      if (stats) {
        ++stats->self_loops;
        stats->removed.emplace_back(u, v);
      }
      continue;
    }
    if (!g.add_edge(u, v) && stats) {
      ++stats->parallels;
      stats->removed.emplace_back(u, v);
    }
  }
  return g;
}

// The outlier network N*: outlier-outlier edges are reproduced verbatim;
// each (outlier, cluster) count is realized by drawing that many endpoints in
// the cluster, weighted by the members' outlier degrees, then simplifying.
inline Graph sample_outlier_network(const OutlierParams& params, const Clustering& clustering,
                                    const RngStream& rng, OutlierDrawStats* stats = nullptr) {
  Graph g(clustering.node_count());
  for (const auto& [u, v] : params.outlier_outlier_edges) {
    g.add_edge(u, v);
    if (stats) ++stats->drawn_edges;
  }

  std::vector<std::vector<NodeId>> cluster_stubs(clustering.cluster_count());
  std::vector<char> stubs_built(clustering.cluster_count(), 0);
  auto stubs_for = [&](ClusterId c) -> const std::vector<NodeId>& {
    if (!stubs_built[c]) {
      stubs_built[c] = 1;
      for (NodeId v : clustering.members(c)) {
        const auto it = params.clustered_outlier_degree.find(v);
        if (it == params.clustered_outlier_degree.end()) continue;
        for (std::uint32_t i = 0; i < it->second; ++i) cluster_stubs[c].push_back(v);
      }
    }
    return cluster_stubs[c];
  };

  for (const auto& [key, count] : params.outlier_block_counts) {
    const auto [outlier, cluster] = key;
    if (cluster >= clustering.cluster_count()) {
      throw std::invalid_argument("sample_outlier_network: unknown cluster id " + std::to_string(cluster));
    }
    const auto& stubs = stubs_for(cluster);
    if (stubs.empty()) {
      throw std::invalid_argument("sample_outlier_network: cluster " + std::to_string(cluster) +
                                  " has no members with outlier degree");
    }
    RngStream pair_rng = rng.fork("o" + std::to_string(outlier) + "_c" + std::to_string(cluster));
    for (std::uint64_t i = 0; i < count; ++i) {
      const NodeId partner = stubs[pair_rng.index(stubs.size())];
      if (stats) ++stats->drawn_edges;
      if (!g.add_edge(outlier, partner) && stats) ++stats->collisions;
    }
  }
  return g;
}

}  // namespace reccs
