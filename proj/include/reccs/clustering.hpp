#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "reccs/graph.hpp"

namespace reccs {

using ClusterId = std::uint32_t;

// Partition-with-singletons over nodes 0..n-1: every kept cluster has at
// least two members, every node belongs to at most one cluster, and nodes in
// no cluster are outliers. Size-1 assignments are demoted to outlier status
// at construction.
class Clustering {
 public:
  Clustering() = default;

  // pairs: (node, cluster label). A node may repeat only with the same label.
  static Clustering from_assignments(std::size_t n,
                                     const std::vector<std::pair<NodeId, std::string>>& pairs) {
    Clustering c;
    c.assign_.assign(n, kOutlier);
    std::map<std::string, std::vector<NodeId>> groups;
    std::vector<std::string> node_label(n);
    for (const auto& [node, cluster] : pairs) {
      if (node >= n) {
        throw std::out_of_range("Clustering: node id " + std::to_string(node) + " out of range");
      }
      if (!node_label[node].empty() && node_label[node] != cluster) {
        throw std::invalid_argument("Clustering: node " + std::to_string(node) +
                                    " assigned to both '" + node_label[node] + "' and '" + cluster + "'");
      }
      if (node_label[node].empty()) {
        node_label[node] = cluster;
        groups[cluster].push_back(node);
      }
    }
    for (auto& [label, members] : groups) {
      if (members.size() < 2) {
        ++c.demoted_singletons_;
        continue;
      }
      std::sort(members.begin(), members.end());
      const auto id = static_cast<ClusterId>(c.members_.size());
      for (NodeId v : members) c.assign_[v] = static_cast<std::int64_t>(id);
      c.members_.push_back(std::move(members));
      c.labels_.push_back(label);
    }
    return c;
  }

  static Clustering from_blocks(std::size_t n, const std::vector<std::vector<NodeId>>& blocks) {
    std::vector<std::pair<NodeId, std::string>> pairs;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      for (NodeId v : blocks[i]) pairs.emplace_back(v, "c" + std::to_string(i));
    }
    return from_assignments(n, pairs);
  }

  std::size_t node_count() const { return assign_.size(); }
  std::size_t cluster_count() const { return members_.size(); }
  std::size_t demoted_singletons() const { return demoted_singletons_; }

  bool is_clustered(NodeId v) const { return assign_.at(v) != kOutlier; }

  std::optional<ClusterId> cluster_of(NodeId v) const {
    const std::int64_t a = assign_.at(v);
    if (a == kOutlier) return std::nullopt;
    return static_cast<ClusterId>(a);
  }

  const std::vector<NodeId>& members(ClusterId c) const { return members_.at(c); }
  const std::string& cluster_label(ClusterId c) const { return labels_.at(c); }

  std::vector<NodeId> clustered_nodes() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < assign_.size(); ++v) {
      if (assign_[v] != kOutlier) out.push_back(v);
    }
    return out;
  }

  std::vector<NodeId> outliers() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < assign_.size(); ++v) {
      if (assign_[v] == kOutlier) out.push_back(v);
    }
    return out;
  }

 private:
  static constexpr std::int64_t kOutlier = -1;

  std::vector<std::int64_t> assign_;
  std::vector<std::vector<NodeId>> members_;
  std::vector<std::string> labels_;
  std::size_t demoted_singletons_ = 0;
};

}  // namespace reccs
