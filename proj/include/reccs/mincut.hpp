#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "reccs/graph.hpp"

namespace reccs {

struct CutResult {
  std::size_t cut_size = 0;
  std::vector<NodeId> side_a;
  std::vector<NodeId> side_b;
};

namespace detail {

// Subgraph induced by `nodes`, relabeled to dense local ids. Cost is
// O(|nodes| + sum of their degrees), independent of the host graph size, so
// per-cluster work stays cheap on large networks.
struct LocalSubgraph {
  std::vector<NodeId> original;              // local id -> caller id (sorted)
  std::vector<std::vector<int>> adj;

  explicit LocalSubgraph(const Graph& g, const std::vector<NodeId>& nodes) {
    original = nodes;
    std::sort(original.begin(), original.end());
    std::unordered_map<NodeId, int> local;
    local.reserve(original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
      if (original[i] >= g.node_count()) {
        throw std::out_of_range("node id " + std::to_string(original[i]) + " out of range");
      }
      if (!local.emplace(original[i], static_cast<int>(i)).second) {
        throw std::invalid_argument("duplicate node id in subgraph node list");
      }
    }
    adj.resize(original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
      for (NodeId nb : g.neighbors(original[i])) {
        const auto it = local.find(nb);
        if (it != local.end()) adj[i].push_back(it->second);
      }
    }
  }

  // Components as sorted local-id lists, largest first, ties by smallest
  // contained id (BFS from ascending ids makes the stable sort keep that).
  std::vector<std::vector<int>> components() const {
    std::vector<char> seen(adj.size(), 0);
    std::vector<std::vector<int>> comps;
    std::vector<int> queue;
    for (int start = 0; start < static_cast<int>(adj.size()); ++start) {
      if (seen[start]) continue;
      seen[start] = 1;
      queue.assign(1, start);
      std::vector<int> comp;
      while (!queue.empty()) {
        const int u = queue.back();
        queue.pop_back();
        comp.push_back(u);
        for (int v : adj[u]) {
          if (!seen[v]) {
            seen[v] = 1;
            queue.push_back(v);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
    std::stable_sort(comps.begin(), comps.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return comps;
  }

  std::vector<NodeId> to_original(const std::vector<int>& local_ids) const {
    std::vector<NodeId> out;
    out.reserve(local_ids.size());
    for (int v : local_ids) out.push_back(original[v]);
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Stoer-Wagner on a connected weighted contraction graph over dense ids.
// Returns the best cut weight and one side of it.
inline std::pair<long long, std::vector<int>> stoer_wagner(
    std::vector<std::unordered_map<int, long long>> w) {
  const int n = static_cast<int>(w.size());
  std::vector<std::vector<int>> group(n);
  for (int v = 0; v < n; ++v) group[v] = {v};
  std::vector<int> active(n);
  for (int v = 0; v < n; ++v) active[v] = v;

  long long best = std::numeric_limits<long long>::max();
  std::vector<int> best_side;
  std::vector<long long> tight(n);
  std::vector<char> added(n);

  while (active.size() > 1) {
    for (int v : active) {
      tight[v] = 0;
      added[v] = 0;
    }
    int prev = -1;
    int last = active[0];
    added[last] = 1;
    for (const auto& [x, ww] : w[last]) tight[x] += ww;
    long long cut_of_phase = 0;
    for (std::size_t i = 1; i < active.size(); ++i) {
      int pick = -1;
      long long pick_w = -1;
      for (int v : active) {
        if (!added[v] && tight[v] > pick_w) {
          pick_w = tight[v];
          pick = v;
        }
      }
      prev = last;
      last = pick;
      cut_of_phase = pick_w;
      added[pick] = 1;
      for (const auto& [x, ww] : w[pick]) {
        if (!added[x]) tight[x] += ww;
      }
    }
    if (cut_of_phase < best) {
      best = cut_of_phase;
      best_side = group[last];
    }
    // Contract `last` into `prev`.
    group[prev].insert(group[prev].end(), group[last].begin(), group[last].end());
    for (const auto& [x, ww] : w[last]) {
      if (x == prev) continue;
      w[prev][x] += ww;
      w[x][prev] += ww;
      w[x].erase(last);
    }
    w[prev].erase(last);
    w[last].clear();
    active.erase(std::find(active.begin(), active.end(), last));
  }
  return {best, std::move(best_side)};
}

}  // namespace detail

inline std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  std::vector<NodeId> all(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) all[v] = v;
  const detail::LocalSubgraph sub(g, all);
  std::vector<std::vector<NodeId>> out;
  for (const auto& comp : sub.components()) out.push_back(sub.to_original(comp));
  return out;
}

// Components of the subgraph induced by `nodes`, same ordering contract.
inline std::vector<std::vector<NodeId>> components_within(const Graph& g,
                                                          const std::vector<NodeId>& nodes) {
  const detail::LocalSubgraph sub(g, nodes);
  std::vector<std::vector<NodeId>> out;
  for (const auto& comp : sub.components()) out.push_back(sub.to_original(comp));
  return out;
}

// Exact global minimum edge cut of the subgraph induced by `nodes`. A
// disconnected input has cut 0 with side_a the largest component (the set the
// reconnection stage needs). The computed cut is checked against the
// min-degree upper bound before it is returned.
inline CutResult min_edge_cut_within(const Graph& g, const std::vector<NodeId>& nodes) {
  if (nodes.size() < 2) {
    throw std::invalid_argument("min_edge_cut: need at least 2 nodes");
  }
  const detail::LocalSubgraph sub(g, nodes);
  const auto comps = sub.components();

  CutResult result;
  if (comps.size() > 1) {
    result.cut_size = 0;
    result.side_a = sub.to_original(comps[0]);
    std::vector<int> rest;
    for (std::size_t i = 1; i < comps.size(); ++i) {
      rest.insert(rest.end(), comps[i].begin(), comps[i].end());
    }
    result.side_b = sub.to_original(rest);
    return result;
  }

  const int n = static_cast<int>(sub.original.size());
  std::vector<std::unordered_map<int, long long>> w(n);
  std::size_t min_degree = std::numeric_limits<std::size_t>::max();
  for (int v = 0; v < n; ++v) {
    for (int nb : sub.adj[v]) w[v][nb] = 1;
    min_degree = std::min(min_degree, sub.adj[v].size());
  }

  auto [cut, side_local] = detail::stoer_wagner(std::move(w));
  result.cut_size = static_cast<std::size_t>(cut);
  if (result.cut_size > min_degree) {
    throw std::logic_error("min cut exceeded the minimum degree bound");
  }
  std::vector<char> in_a(sub.original.size(), 0);
  for (int v : side_local) in_a[v] = 1;
  std::vector<int> a, b;
  for (int v = 0; v < n; ++v) (in_a[v] ? a : b).push_back(v);
  result.side_a = sub.to_original(a);
  result.side_b = sub.to_original(b);
  return result;
}

inline CutResult min_edge_cut(const Graph& g) {
  if (g.node_count() < 2) {
    throw std::invalid_argument("min_edge_cut: graph has fewer than 2 nodes");
  }
  std::vector<NodeId> all(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) all[v] = v;
  return min_edge_cut_within(g, all);
}

// Exhaustive test oracle: evaluates every bipartition (node 0 pinned to side
// a). Guarded to n <= 20.
inline CutResult min_edge_cut_bruteforce(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw std::invalid_argument("min_edge_cut_bruteforce: graph has fewer than 2 nodes");
  if (n > 20) throw std::invalid_argument("min_edge_cut_bruteforce: oracle guard, n > 20");

  const auto edges = g.edges();
  const std::uint32_t masks = 1u << (n - 1);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::uint32_t best_mask = 1;
  for (std::uint32_t mask = 1; mask < masks; ++mask) {
    // Node v (>0) is on side b iff bit v-1 is set.
    std::size_t crossing = 0;
    for (const auto& [u, v] : edges) {
      const bool ub = u != 0 && ((mask >> (u - 1)) & 1u);
      const bool vb = v != 0 && ((mask >> (v - 1)) & 1u);
      if (ub != vb) ++crossing;
    }
    if (crossing < best) {
      best = crossing;
      best_mask = mask;
    }
  }
  CutResult result;
  result.cut_size = best;
  result.side_a.push_back(0);
  for (NodeId v = 1; v < n; ++v) {
    (((best_mask >> (v - 1)) & 1u) ? result.side_b : result.side_a).push_back(v);
  }
  return result;
}

}  // namespace reccs
