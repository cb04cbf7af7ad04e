#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace reccs {

using NodeId = std::uint32_t;

inline std::uint64_t edge_key(NodeId u, NodeId v) {
  const auto [a, b] = std::minmax(u, v);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Simple undirected graph over dense node ids 0..n-1. An optional label table
// maps internal ids back to the external (possibly sparse or non-numeric) ids
// of the source file. Adjacency queries are O(1) via a hashed edge-key set.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_edge(NodeId u, NodeId v) const {
    check(u);
    check(v);
    return u != v && edges_.count(edge_key(u, v)) != 0;
  }

  // Inserts an edge, keeping the graph simple: self-loops and duplicates are
  // rejected (returns false) rather than stored.
  bool add_edge(NodeId u, NodeId v) {
    check(u);
    check(v);
    if (u == v) return false;
    if (!edges_.insert(edge_key(u, v)).second) return false;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    return true;
  }

  std::size_t degree(NodeId u) const {
    check(u);
    return adj_[u].size();
  }

  const std::vector<NodeId>& neighbors(NodeId u) const {
    check(u);
    return adj_[u];
  }

  template <class F>
  void for_each_edge(F&& f) const {
    for (NodeId u = 0; u < adj_.size(); ++u) {
      for (NodeId v : adj_[u]) {
        if (u < v) f(u, v);
      }
    }
  }

  // All edges as (u, v) with u < v, sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edges_.size());
    for_each_edge([&](NodeId u, NodeId v) { out.emplace_back(u, v); });
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_labels() const { return !labels_.empty(); }

  void set_labels(std::vector<std::string> labels) {
    if (labels.size() != adj_.size()) {
      throw std::invalid_argument("Graph::set_labels: label count does not match node count");
    }
    labels_ = std::move(labels);
  }

  const std::vector<std::string>& labels() const { return labels_; }

  std::string label_of(NodeId u) const {
    check(u);
    return has_labels() ? labels_[u] : std::to_string(u);
  }

 private:
  void check(NodeId u) const {
    if (u >= adj_.size()) throw std::out_of_range("Graph: node id " + std::to_string(u) + " out of range");
  }

  std::vector<std::vector<NodeId>> adj_;
  std::unordered_set<std::uint64_t> edges_;
  std::vector<std::string> labels_;
};

// Edges of `g` with both endpoints in `nodes`; ids (and node count) are
// preserved so cross-graph comparison by id stays valid.
inline Graph induced_subgraph(const Graph& g, const std::vector<NodeId>& nodes) {
  std::vector<char> member(g.node_count(), 0);
  for (NodeId v : nodes) {
    if (v >= g.node_count()) {
      throw std::out_of_range("induced_subgraph: node id " + std::to_string(v) + " out of range");
    }
    member[v] = 1;
  }
  Graph sub(g.node_count());
  if (g.has_labels()) sub.set_labels(g.labels());
  for (NodeId u : nodes) {
    for (NodeId v : g.neighbors(u)) {
      if (u < v && member[v]) sub.add_edge(u, v);
    }
  }
  return sub;
}

// Simplicity / consistency audit; returns human-readable violations
// (empty means valid). Used by tests on every constructed network.
inline std::vector<std::string> validate_graph(const Graph& g) {
  std::vector<std::string> issues;
  std::size_t directed_count = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    std::unordered_set<NodeId> seen;
    for (NodeId v : g.neighbors(u)) {
      ++directed_count;
      if (v == u) issues.push_back("self-loop at node " + std::to_string(u));
      if (v >= g.node_count()) issues.push_back("dangling neighbor id at node " + std::to_string(u));
      if (!seen.insert(v).second) {
        issues.push_back("duplicate neighbor " + std::to_string(v) + " at node " + std::to_string(u));
      }
      if (!g.has_edge(u, v)) {
        issues.push_back("adjacency entry missing from edge set: " + std::to_string(u) + "-" + std::to_string(v));
      }
    }
  }
  if (directed_count != 2 * g.edge_count()) {
    issues.push_back("adjacency size does not equal twice the edge count");
  }
  return issues;
}

}  // namespace reccs
