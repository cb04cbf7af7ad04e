#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reccs/clustering.hpp"
#include "reccs/dcsbm.hpp"
#include "reccs/graph.hpp"
#include "reccs/mincut.hpp"
#include "reccs/params.hpp"
#include "reccs/rng.hpp"

namespace reccs {

// Remaining degree budget per node: max(0, target - current), decremented on
// every inserted edge. Nodes at 0 drop out of the "available" view.
class AvailableDegreeLedger {
 public:
  AvailableDegreeLedger() = default;

  AvailableDegreeLedger(const std::vector<std::uint32_t>& target, const Graph& current) {
    avail_.resize(target.size());
    for (NodeId v = 0; v < target.size(); ++v) {
      const auto deg = static_cast<std::uint32_t>(current.degree(v));
      avail_[v] = target[v] > deg ? target[v] - deg : 0;
    }
  }

  std::uint32_t available(NodeId v) const { return avail_.at(v); }
  bool has_available(NodeId v) const { return avail_.at(v) > 0; }

  void note_edge(NodeId u, NodeId v) {
    if (avail_.at(u) > 0) --avail_[u];
    if (avail_.at(v) > 0) --avail_[v];
  }

  std::vector<NodeId> available_nodes() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < avail_.size(); ++v) {
      if (avail_[v] > 0) out.push_back(v);
    }
    return out;
  }

  std::uint64_t total_available() const {
    std::uint64_t sum = 0;
    for (auto a : avail_) sum += a;
    return sum;
  }

  // Full recount; tests call this after every stage.
  bool consistent_with(const std::vector<std::uint32_t>& target, const Graph& net) const {
    if (avail_.size() != target.size() || target.size() != net.node_count()) return false;
    for (NodeId v = 0; v < target.size(); ++v) {
      const auto deg = static_cast<std::uint32_t>(net.degree(v));
      const std::uint32_t expect = target[v] > deg ? target[v] - deg : 0;
      if (avail_[v] != expect) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint32_t> avail_;
};

struct StageReport {
  std::string stage;
  std::uint64_t edges_added = 0;
  std::uint64_t clusters_repaired = 0;
  std::map<std::string, std::uint64_t> per_cluster;  // cluster label -> edges added
  std::map<std::string, std::uint64_t> details;
};

enum class Variant { kV1, kV2, kSbmOnly };

inline std::string variant_name(Variant v) {
  switch (v) {
    case Variant::kV1: return "v1";
    case Variant::kV2: return "v2";
    case Variant::kSbmOnly: return "sbm-only";
  }
  throw std::logic_error("unreachable");
}

inline std::optional<Variant> parse_variant(const std::string& name) {
  if (name == "v1") return Variant::kV1;
  if (name == "v2") return Variant::kV2;
  if (name == "sbm-only") return Variant::kSbmOnly;
  return std::nullopt;
}

namespace detail {

inline std::size_t intra_degree(const Graph& net, const BlockParams& params, NodeId v,
                                std::int32_t block) {
  std::size_t d = 0;
  for (NodeId nb : net.neighbors(v)) {
    if (params.block_of[nb] == block) ++d;
  }
  return d;
}

// Edge-partner policy: random pick among eligible in-cluster nodes with
// available degree; when none remain, random pick among all eligible nodes.
inline std::optional<NodeId> pick_partner(const Graph& net, const AvailableDegreeLedger& ledger,
                                          const std::vector<NodeId>& members, NodeId v,
                                          RngStream& rng) {
  std::vector<NodeId> eligible;
  std::vector<NodeId> eligible_avail;
  for (NodeId m : members) {
    if (m == v || net.has_edge(v, m)) continue;
    eligible.push_back(m);
    if (ledger.has_available(m)) eligible_avail.push_back(m);
  }
  if (!eligible_avail.empty()) return eligible_avail[rng.index(eligible_avail.size())];
  if (!eligible.empty()) return eligible[rng.index(eligible.size())];
  return std::nullopt;
}

// Cross pair under the same policy, preferring pairs where both endpoints
// still have available degree. Rejection sampling first, exhaustive
// enumeration as the fallback; returns nullopt only when every cross pair is
// already an edge.
inline std::optional<std::pair<NodeId, NodeId>> pick_cross_pair(
    const Graph& net, const AvailableDegreeLedger& ledger, const std::vector<NodeId>& side_a,
    const std::vector<NodeId>& side_b, RngStream& rng) {
  auto filter_avail = [&](const std::vector<NodeId>& side) {
    std::vector<NodeId> out;
    for (NodeId v : side) {
      if (ledger.has_available(v)) out.push_back(v);
    }
    return out;
  };
  const std::vector<NodeId> avail_a = filter_avail(side_a);
  const std::vector<NodeId> avail_b = filter_avail(side_b);

  const std::vector<NodeId>* tiers[2][2] = {{&avail_a, &avail_b}, {&side_a, &side_b}};
  for (const auto& tier : tiers) {
    const auto& a = *tier[0];
    const auto& b = *tier[1];
    if (a.empty() || b.empty()) continue;
    for (int attempt = 0; attempt < 32; ++attempt) {
      const NodeId x = a[rng.index(a.size())];
      const NodeId y = b[rng.index(b.size())];
      if (!net.has_edge(x, y)) return std::make_pair(x, y);
    }
    std::vector<std::pair<NodeId, NodeId>> open;
    for (NodeId x : a) {
      for (NodeId y : b) {
        if (!net.has_edge(x, y)) open.emplace_back(x, y);
      }
    }
    if (!open.empty()) return open[rng.index(open.size())];
  }
  return std::nullopt;
}

}  // namespace detail

// Stage 1: every node of cluster C ends with at least k(C) neighbors inside
// C. If k(C) exceeds |C|-1 the node saturates (connects to the whole
// cluster); extracted parameters never trigger that, hand-made ones can.
inline StageReport stage1_enforce_min_degree(Graph& net, const BlockParams& params,
                                             const Clustering& clustering,
                                             AvailableDegreeLedger& ledger, const RngStream& rng) {
  StageReport report;
  report.stage = "stage1_min_degree";
  for (ClusterId c = 0; c < clustering.cluster_count(); ++c) {
    const std::uint32_t k = params.connectivity_req[c];
    if (k == 0) continue;
    const auto& members = clustering.members(c);
    const auto block = static_cast<std::int32_t>(c);
    RngStream crng = rng.fork("c" + std::to_string(c));
    std::uint64_t added_here = 0;
    for (NodeId v : members) {
      std::size_t d = detail::intra_degree(net, params, v, block);
      const std::size_t want = std::min<std::size_t>(k, members.size() - 1);
      while (d < want) {
        const auto partner = detail::pick_partner(net, ledger, members, v, crng);
        if (!partner) break;  // v already adjacent to the whole cluster
        net.add_edge(v, *partner);
        ledger.note_edge(v, *partner);
        ++d;
        ++added_here;
      }
    }
    if (added_here > 0) {
      ++report.clusters_repaired;
      report.per_cluster[clustering.cluster_label(c)] = added_here;
      report.edges_added += added_here;
    }
  }
  return report;
}

// Stage 2: reconnect internally disconnected clusters by bridging each
// non-largest component to the largest with k(C) edges (at least one even
// when k(C) = 0, so stage 3 always sees connected clusters).
inline StageReport stage2_connect_clusters(Graph& net, const BlockParams& params,
                                           const Clustering& clustering,
                                           AvailableDegreeLedger& ledger, const RngStream& rng) {
  StageReport report;
  report.stage = "stage2_connect";
  for (ClusterId c = 0; c < clustering.cluster_count(); ++c) {
    const auto& members = clustering.members(c);
    auto comps = components_within(net, members);
    if (comps.size() <= 1) continue;
    RngStream crng = rng.fork("c" + std::to_string(c));
    const auto& largest = comps[0];
    std::uint64_t added_here = 0;
    for (std::size_t i = 1; i < comps.size(); ++i) {
      const std::uint64_t want = std::max<std::uint64_t>(1, params.connectivity_req[c]);
      const std::uint64_t feasible =
          static_cast<std::uint64_t>(comps[i].size()) * largest.size();
      const std::uint64_t bridges = std::min(want, feasible);
      for (std::uint64_t b = 0; b < bridges; ++b) {
        const auto pair = detail::pick_cross_pair(net, ledger, comps[i], largest, crng);
        if (!pair) break;
        net.add_edge(pair->first, pair->second);
        ledger.note_edge(pair->first, pair->second);
        ++added_here;
      }
    }
    ++report.clusters_repaired;
    report.per_cluster[clustering.cluster_label(c)] = added_here;
    report.edges_added += added_here;
  }
  return report;
}

// Stage 3: raise each cluster's edge connectivity to at least k(C) by
// repeatedly adding edges across its current minimum cut. Each round either
// reaches the target or inserts at least one new cross edge, so the iteration
// guard only trips on parameters no simple graph can satisfy.
inline StageReport stage3_raise_connectivity(Graph& net, const BlockParams& params,
                                             const Clustering& clustering,
                                             AvailableDegreeLedger& ledger, const RngStream& rng) {
  StageReport report;
  report.stage = "stage3_connectivity";
  for (ClusterId c = 0; c < clustering.cluster_count(); ++c) {
    const std::uint32_t k = params.connectivity_req[c];
    if (k == 0) continue;
    const auto& members = clustering.members(c);
    RngStream crng = rng.fork("c" + std::to_string(c));
    const std::size_t guard = 10 * members.size();
    std::size_t iterations = 0;
    std::uint64_t added_here = 0;
    for (;;) {
      const CutResult cut = min_edge_cut_within(net, members);
      if (cut.cut_size >= k) break;
      if (++iterations > guard) {
        throw std::runtime_error("stage3: iteration guard tripped for cluster " +
                                 clustering.cluster_label(c));
      }
      std::uint64_t added_this_round = 0;
      for (std::size_t i = cut.cut_size; i < k; ++i) {
        const auto pair = detail::pick_cross_pair(net, ledger, cut.side_a, cut.side_b, crng);
        if (!pair) break;
        net.add_edge(pair->first, pair->second);
        ledger.note_edge(pair->first, pair->second);
        ++added_this_round;
      }
      if (added_this_round == 0) {
        throw std::runtime_error("stage3: cluster " + clustering.cluster_label(c) +
                                 " cannot reach connectivity " + std::to_string(k));
      }
      added_here += added_this_round;
    }
    if (added_here > 0) {
      ++report.clusters_repaired;
      report.per_cluster[clustering.cluster_label(c)] = added_here;
      report.edges_added += added_here;
    }
  }
  return report;
}

// Stage 4, variant 1: greedy max-heap pass over nodes with available degree.
// The node with the largest remaining budget connects to up to that many
// random non-neighbors that also have budget; partners' budgets shrink, the
// node retires after its turn. Pairing is global, not per cluster. Heap
// entries go stale when a partner's budget shrinks; stale pops re-queue with
// the current value so processing order always follows current budgets.
inline StageReport stage4_v1_degree_fit(Graph& net, AvailableDegreeLedger& ledger,
                                        RngStream& rng) {
  StageReport report;
  report.stage = "stage4_v1";

  std::unordered_map<NodeId, std::uint32_t> budget;
  std::vector<NodeId> pool = ledger.available_nodes();
  std::unordered_map<NodeId, std::size_t> pos;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    budget[pool[i]] = ledger.available(pool[i]);
    pos[pool[i]] = i;
  }
  auto pool_erase = [&](NodeId v) {
    const std::size_t i = pos.at(v);
    pos[pool.back()] = i;
    std::swap(pool[i], pool.back());
    pool.pop_back();
    pos.erase(v);
  };

  // max by budget, ties to the smaller node id
  using Entry = std::pair<std::uint32_t, NodeId>;
  auto cmp = [](const Entry& a, const Entry& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  for (NodeId v : pool) heap.emplace(budget[v], v);

  while (!heap.empty()) {
    const auto [popped_budget, v] = heap.top();
    heap.pop();
    const auto it = budget.find(v);
    if (it == budget.end()) continue;
    if (it->second != popped_budget) {
      heap.emplace(it->second, v);
      continue;
    }

    // How many partners exist: pool members that are not v and not adjacent.
    std::size_t adjacent_in_pool = 0;
    for (NodeId nb : net.neighbors(v)) {
      if (budget.count(nb)) ++adjacent_in_pool;
    }
    const std::size_t open = pool.size() - 1 - adjacent_in_pool;
    const std::size_t take = std::min<std::size_t>(popped_budget, open);

    for (std::size_t i = 0; i < take; ++i) {
      NodeId partner = v;
      bool found = false;
      for (int attempt = 0; attempt < 64 && !found; ++attempt) {
        const NodeId candidate = pool[rng.index(pool.size())];
        if (candidate != v && !net.has_edge(v, candidate)) {
          partner = candidate;
          found = true;
        }
      }
      if (!found) {
        std::vector<NodeId> open_nodes;
        for (NodeId candidate : pool) {
          if (candidate != v && !net.has_edge(v, candidate)) open_nodes.push_back(candidate);
        }
        partner = open_nodes[rng.index(open_nodes.size())];
      }
      net.add_edge(v, partner);
      ledger.note_edge(v, partner);
      ++report.edges_added;
      auto pit = budget.find(partner);
      if (pit->second > 1) {
        --pit->second;
      } else {
        budget.erase(pit);
        pool_erase(partner);
      }
    }
    budget.erase(v);
    pool_erase(v);
  }
  return report;
}

// Stage 4, variant 2: measure the block-pair edge-count deficit of the
// current synthetic network against the real clustered subnetwork, clamp the
// diagonal and negatives (and pairs whose clusters have no available nodes)
// to zero, then superimpose a fresh degree-corrected draw over the available
// nodes with their residual budgets as weights.
inline StageReport stage4_v2_degree_fit(Graph& net, const Graph& real_graph,
                                        const BlockParams& params, const Clustering& clustering,
                                        AvailableDegreeLedger& ledger, const RngStream& rng) {
  StageReport report;
  report.stage = "stage4_v2";

  auto block_matrix = [&](const Graph& g) {
    std::map<BlockPair, std::uint64_t> counts;
    g.for_each_edge([&](NodeId u, NodeId v) {
      const auto bu = params.block_of[u];
      const auto bv = params.block_of[v];
      if (bu == BlockParams::kNoBlock || bv == BlockParams::kNoBlock) return;
      ++counts[block_pair(static_cast<ClusterId>(bu), static_cast<ClusterId>(bv))];
    });
    return counts;
  };
  const auto empirical = block_matrix(real_graph);
  const auto synthetic = block_matrix(net);

  std::vector<char> cluster_has_available(clustering.cluster_count(), 0);
  for (ClusterId c = 0; c < clustering.cluster_count(); ++c) {
    for (NodeId v : clustering.members(c)) {
      if (ledger.has_available(v)) {
        cluster_has_available[c] = 1;
        break;
      }
    }
  }

  BlockParams residual;
  residual.n = params.n;
  residual.cluster_labels = params.cluster_labels;
  residual.connectivity_req.assign(clustering.cluster_count(), 0);
  residual.block_of = params.block_of;
  residual.degree_target.assign(params.n, 0);
  for (NodeId v = 0; v < params.n; ++v) residual.degree_target[v] = ledger.available(v);

  std::uint64_t deficit_total = 0;
  for (const auto& [pair, emp_count] : empirical) {
    if (pair.first == pair.second) continue;  // diagonal clamped to zero
    if (!cluster_has_available[pair.first] || !cluster_has_available[pair.second]) continue;
    const auto it = synthetic.find(pair);
    const std::uint64_t syn_count = it == synthetic.end() ? 0 : it->second;
    if (emp_count <= syn_count) continue;  // negatives clamped to zero
    residual.edge_counts[pair] = emp_count - syn_count;
    deficit_total += emp_count - syn_count;
  }
  report.details["deficit_drawn"] = deficit_total;

  if (deficit_total > 0) {
    const MultigraphDraw draw = sample_dcsbm(residual, rng.fork("residual"));
    std::uint64_t duplicates = 0;
    for (const auto& [u, v] : draw.edges) {
      if (net.add_edge(u, v)) {
        ledger.note_edge(u, v);
        ++report.edges_added;
      } else {
        ++duplicates;
      }
    }
    report.details["duplicates_skipped"] = duplicates;
  }
  return report;
}

inline Graph build_outlier_step(const OutlierParams& params, const Clustering& clustering,
                                const RngStream& rng, OutlierDrawStats* stats = nullptr) {
  return sample_outlier_network(params, clustering, rng, stats);
}

// Step 3: superimpose the clustered and outlier networks. The two edge sets
// are disjoint when the preconditions hold (clustered_net touches no
// outliers, outlier_net has no clustered-clustered edges); overlap means a
// caller bug and is rejected.
inline Graph merge_networks(const Graph& clustered_net, const Graph& outlier_net) {
  if (clustered_net.node_count() != outlier_net.node_count()) {
    throw std::invalid_argument("merge: node universes differ");
  }
  Graph out(clustered_net.node_count());
  if (clustered_net.has_labels()) out.set_labels(clustered_net.labels());
  clustered_net.for_each_edge([&](NodeId u, NodeId v) { out.add_edge(u, v); });
  bool overlap = false;
  outlier_net.for_each_edge([&](NodeId u, NodeId v) {
    if (!out.add_edge(u, v)) overlap = true;
  });
  if (overlap) {
    throw std::invalid_argument("merge: overlapping edge between clustered and outlier networks");
  }
  return out;
}

struct ExtractedParams {
  BlockParams block;
  OutlierParams outlier;
};

inline ExtractedParams extract_params(const Graph& g, const Clustering& clustering) {
  return {extract_block_params(g, clustering), extract_outlier_params(g, clustering)};
}

struct PipelineResult {
  Graph network;
  std::vector<StageReport> reports;
};

struct PipelineArtifacts {
  std::optional<Graph> stage0;       // simplified SBM base
  std::optional<Graph> post_stage3;  // before the degree-fit stage
};

// Stage 0: micro-canonical draw plus simplification. The report's
// edges_added is the resulting simple edge count.
inline Graph stage0_base_network(const BlockParams& params, std::uint64_t seed,
                                 const std::string& stream_prefix, StageReport* report) {
  const MultigraphDraw draw = sample_dcsbm(params, RngStream(seed, stream_prefix + "stage0"));
  SimplifyStats stats;
  Graph net = simplify(draw, params.n, &stats);
  if (report) {
    report->stage = "stage0_sbm";
    report->edges_added = net.edge_count();
    report->details["drawn_edges"] = draw.edges.size();
    report->details["removed_self_loops"] = stats.self_loops;
    report->details["removed_parallel"] = stats.parallels;
  }
  return net;
}

// Stages 1-4 plus the outlier step and the merge, starting from an existing
// simplified base network. Used directly by the replication command, which
// shares one base across runs.
inline PipelineResult repair_and_merge(const Graph& base, const Graph& real_graph,
                                       const ExtractedParams& params, const Clustering& clustering,
                                       Variant variant, std::uint64_t seed,
                                       const std::string& stream_prefix,
                                       PipelineArtifacts* artifacts = nullptr) {
  PipelineResult result;
  Graph net = base;

  if (variant != Variant::kSbmOnly) {
    AvailableDegreeLedger ledger(params.block.degree_target, net);
    result.reports.push_back(stage1_enforce_min_degree(net, params.block, clustering, ledger,
                                                       RngStream(seed, stream_prefix + "stage1")));
    result.reports.push_back(stage2_connect_clusters(net, params.block, clustering, ledger,
                                                     RngStream(seed, stream_prefix + "stage2")));
    result.reports.push_back(stage3_raise_connectivity(net, params.block, clustering, ledger,
                                                       RngStream(seed, stream_prefix + "stage3")));
    if (artifacts) artifacts->post_stage3 = net;
    if (variant == Variant::kV1) {
      RngStream s4(seed, stream_prefix + "stage4");
      result.reports.push_back(stage4_v1_degree_fit(net, ledger, s4));
    } else {
      result.reports.push_back(stage4_v2_degree_fit(net, real_graph, params.block, clustering,
                                                    ledger, RngStream(seed, stream_prefix + "stage4")));
    }
  }

  OutlierDrawStats ostats;
  const Graph outlier_net =
      build_outlier_step(params.outlier, clustering, RngStream(seed, stream_prefix + "outliers"), &ostats);
  StageReport outlier_report;
  outlier_report.stage = "step2_outliers";
  outlier_report.edges_added = outlier_net.edge_count();
  outlier_report.details["drawn_edges"] = ostats.drawn_edges;
  outlier_report.details["collisions"] = ostats.collisions;
  result.reports.push_back(std::move(outlier_report));

  result.network = merge_networks(net, outlier_net);
  if (real_graph.has_labels()) result.network.set_labels(real_graph.labels());
  return result;
}

inline PipelineResult run_reccs(const Graph& g, const Clustering& clustering, Variant variant,
                                std::uint64_t seed, const std::string& stream_prefix = "",
                                PipelineArtifacts* artifacts = nullptr) {
  const ExtractedParams params = extract_params(g, clustering);

  StageReport stage0_report;
  Graph base = stage0_base_network(params.block, seed, stream_prefix, &stage0_report);
  if (g.has_labels()) base.set_labels(g.labels());
  if (artifacts) artifacts->stage0 = base;

  PipelineResult result =
      repair_and_merge(base, g, params, clustering, variant, seed, stream_prefix, artifacts);
  result.reports.insert(result.reports.begin(), std::move(stage0_report));
  return result;
}

// Audit: sum over clusters of max(0, k(C) - connectivity achieved in `net`).
// Zero is the repair guarantee.
inline std::uint64_t min_cut_deficit(const Graph& net, const Clustering& clustering,
                                     const std::vector<std::uint32_t>& connectivity_req) {
  std::uint64_t deficit = 0;
  for (ClusterId c = 0; c < clustering.cluster_count(); ++c) {
    const auto cut = min_edge_cut_within(net, clustering.members(c));
    if (cut.cut_size < connectivity_req[c]) deficit += connectivity_req[c] - cut.cut_size;
  }
  return deficit;
}

}  // namespace reccs
