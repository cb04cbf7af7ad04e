#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "reccs/clustering.hpp"
#include "reccs/graph.hpp"
#include "reccs/mincut.hpp"

namespace reccs {

using Json = nlohmann::ordered_json;
using BlockPair = std::pair<ClusterId, ClusterId>;

inline BlockPair block_pair(ClusterId r, ClusterId s) {
  return r <= s ? BlockPair{r, s} : BlockPair{s, r};
}

// Param(G_c, C): everything the generator and the repair stages consume about
// the clustered subnetwork. degree_target and block_of are dense over the
// full node universe (0 / -1 outside G_c); the edge count matrix is sparse
// because cluster counts can be large while most pairs never touch.
struct BlockParams {
  static constexpr std::int32_t kNoBlock = -1;

  std::size_t n = 0;
  std::vector<std::uint32_t> degree_target;                // degree within G_c
  std::vector<std::int32_t> block_of;                      // cluster index or -1
  std::map<BlockPair, std::uint64_t> edge_counts;          // keyed r <= s
  std::vector<std::uint32_t> connectivity_req;             // k(C) per cluster
  std::vector<std::string> cluster_labels;

  std::uint64_t total_edges() const {
    std::uint64_t sum = 0;
    for (const auto& [pair, count] : edge_counts) sum += count;
    return sum;
  }
};

// Parameters of the outlier subnetwork G*: the edges touching at least one
// outlier. Outlier-outlier edges are kept verbatim; edges into clusters are
// kept as per-(outlier, cluster) counts plus each clustered node's outlier
// degree, which is the weight used when those edges are re-drawn.
struct OutlierParams {
  std::vector<NodeId> outlier_ids;                                   // sorted
  std::vector<std::pair<NodeId, NodeId>> outlier_outlier_edges;      // u < v, sorted
  std::map<std::pair<NodeId, ClusterId>, std::uint64_t> outlier_block_counts;
  std::map<NodeId, std::uint32_t> outlier_degree_target;             // degree in G*
  std::map<NodeId, std::uint32_t> clustered_outlier_degree;          // clustered node -> # outlier edges

  std::uint64_t total_edges() const {
    std::uint64_t sum = outlier_outlier_edges.size();
    for (const auto& [key, count] : outlier_block_counts) sum += count;
    return sum;
  }
};

inline BlockParams extract_block_params(const Graph& g, const Clustering& clustering) {
  if (clustering.node_count() != g.node_count()) {
    throw std::invalid_argument("extract_block_params: clustering does not match graph");
  }
  if (clustering.cluster_count() == 0) {
    throw std::invalid_argument("extract_block_params: nothing to model (no non-singleton clusters)");
  }

  BlockParams params;
  params.n = g.node_count();
  params.degree_target.assign(params.n, 0);
  params.block_of.assign(params.n, BlockParams::kNoBlock);
  for (ClusterId c = 0; c < clustering.cluster_count(); ++c) {
    params.cluster_labels.push_back(clustering.cluster_label(c));
    for (NodeId v : clustering.members(c)) params.block_of[v] = static_cast<std::int32_t>(c);
  }

  const Graph gc = induced_subgraph(g, clustering.clustered_nodes());
  gc.for_each_edge([&](NodeId u, NodeId v) {
    ++params.degree_target[u];
    ++params.degree_target[v];
    const auto r = static_cast<ClusterId>(params.block_of[u]);
    const auto s = static_cast<ClusterId>(params.block_of[v]);
    ++params.edge_counts[block_pair(r, s)];
  });

  params.connectivity_req.resize(clustering.cluster_count());
  for (ClusterId c = 0; c < clustering.cluster_count(); ++c) {
    params.connectivity_req[c] =
        static_cast<std::uint32_t>(min_edge_cut_within(gc, clustering.members(c)).cut_size);
  }
  return params;
}

inline OutlierParams extract_outlier_params(const Graph& g, const Clustering& clustering) {
  if (clustering.node_count() != g.node_count()) {
    throw std::invalid_argument("extract_outlier_params: clustering does not match graph");
  }
  OutlierParams params;
  params.outlier_ids = clustering.outliers();
  g.for_each_edge([&](NodeId u, NodeId v) {
    const auto cu = clustering.cluster_of(u);
    const auto cv = clustering.cluster_of(v);
    if (cu && cv) return;  // not an outlier edge
    if (!cu && !cv) {
      params.outlier_outlier_edges.emplace_back(u, v);
      ++params.outlier_degree_target[u];
      ++params.outlier_degree_target[v];
      return;
    }
    const NodeId outlier = cu ? v : u;
    const NodeId clustered = cu ? u : v;
    ++params.outlier_block_counts[{outlier, cu ? *cu : *cv}];
    ++params.outlier_degree_target[outlier];
    ++params.clustered_outlier_degree[clustered];
  });
  std::sort(params.outlier_outlier_edges.begin(), params.outlier_outlier_edges.end());
  return params;
}

// -- JSON (de)serialization; schema documented in the README. --------------

inline Json to_json(const BlockParams& p) {
  Json j;
  j["node_count"] = p.n;
  j["cluster_labels"] = p.cluster_labels;
  j["connectivity_req"] = p.connectivity_req;
  j["degree_target"] = p.degree_target;
  j["block_of"] = p.block_of;
  Json counts = Json::array();
  for (const auto& [pair, count] : p.edge_counts) {
    counts.push_back(Json::array({pair.first, pair.second, count}));
  }
  j["edge_counts"] = std::move(counts);
  return j;
}

inline BlockParams block_params_from_json(const Json& j) {
  BlockParams p;
  p.n = j.at("node_count").get<std::size_t>();
  p.cluster_labels = j.at("cluster_labels").get<std::vector<std::string>>();
  p.connectivity_req = j.at("connectivity_req").get<std::vector<std::uint32_t>>();
  p.degree_target = j.at("degree_target").get<std::vector<std::uint32_t>>();
  p.block_of = j.at("block_of").get<std::vector<std::int32_t>>();
  for (const auto& row : j.at("edge_counts")) {
    p.edge_counts[block_pair(row.at(0).get<ClusterId>(), row.at(1).get<ClusterId>())] =
        row.at(2).get<std::uint64_t>();
  }
  if (p.degree_target.size() != p.n || p.block_of.size() != p.n ||
      p.connectivity_req.size() != p.cluster_labels.size()) {
    throw std::runtime_error("block params: inconsistent field sizes");
  }
  std::uint64_t degree_sum = 0;
  for (auto d : p.degree_target) degree_sum += d;
  if (degree_sum != 2 * p.total_edges()) {
    throw std::runtime_error("block params: degree sum does not equal twice the edge count");
  }
  return p;
}

inline Json to_json(const OutlierParams& p) {
  Json j;
  j["outlier_ids"] = p.outlier_ids;
  Json edges = Json::array();
  for (const auto& [u, v] : p.outlier_outlier_edges) edges.push_back(Json::array({u, v}));
  j["outlier_outlier_edges"] = std::move(edges);
  Json counts = Json::array();
  for (const auto& [key, count] : p.outlier_block_counts) {
    counts.push_back(Json::array({key.first, key.second, count}));
  }
  j["outlier_block_counts"] = std::move(counts);
  Json odeg = Json::array();
  for (const auto& [node, d] : p.outlier_degree_target) odeg.push_back(Json::array({node, d}));
  j["outlier_degree_target"] = std::move(odeg);
  Json cdeg = Json::array();
  for (const auto& [node, d] : p.clustered_outlier_degree) cdeg.push_back(Json::array({node, d}));
  j["clustered_outlier_degree"] = std::move(cdeg);
  return j;
}

inline OutlierParams outlier_params_from_json(const Json& j) {
  OutlierParams p;
  p.outlier_ids = j.at("outlier_ids").get<std::vector<NodeId>>();
  for (const auto& row : j.at("outlier_outlier_edges")) {
    p.outlier_outlier_edges.emplace_back(row.at(0).get<NodeId>(), row.at(1).get<NodeId>());
  }
  for (const auto& row : j.at("outlier_block_counts")) {
    p.outlier_block_counts[{row.at(0).get<NodeId>(), row.at(1).get<ClusterId>()}] =
        row.at(2).get<std::uint64_t>();
  }
  for (const auto& row : j.at("outlier_degree_target")) {
    p.outlier_degree_target[row.at(0).get<NodeId>()] = row.at(1).get<std::uint32_t>();
  }
  for (const auto& row : j.at("clustered_outlier_degree")) {
    p.clustered_outlier_degree[row.at(0).get<NodeId>()] = row.at(1).get<std::uint32_t>();
  }
  return p;
}

}  // namespace reccs
