#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "reccs/clustering.hpp"
#include "reccs/graph.hpp"
#include "reccs/io.hpp"
#include "reccs/mincut.hpp"
#include "reccs/rng.hpp"

namespace reccs {

inline double simple_difference(double s, double s_prime) { return s - s_prime; }

inline double relative_difference(double s, double s_prime) {
  if (s == 0.0) throw std::invalid_argument("relative difference undefined for s = 0");
  return (s - s_prime) / s;
}

inline double rmse(const std::vector<double>& s, const std::vector<double>& s_prime) {
  if (s.size() != s_prime.size()) throw std::invalid_argument("rmse: sequence length mismatch");
  if (s.empty()) throw std::invalid_argument("rmse: sequences must be non-empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double d = s[i] - s_prime[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(s.size()));
}

enum class Scope { kAll, kClustered, kOutlier };
enum class Pairing { kById, kSorted };

namespace detail {

inline double rmse_paired(std::vector<double> a, std::vector<double> b, Pairing pairing) {
  if (pairing == Pairing::kSorted) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
  }
  return rmse(a, b);
}

}  // namespace detail

inline double degree_sequence_rmse(const Graph& real, const Graph& synth,
                                   const Clustering& clustering, Scope scope,
                                   Pairing pairing = Pairing::kById) {
  if (real.node_count() != synth.node_count()) {
    throw std::invalid_argument("degree_sequence_rmse: node sets differ");
  }
  std::vector<double> a, b;
  for (NodeId v = 0; v < real.node_count(); ++v) {
    const bool clustered = clustering.is_clustered(v);
    if (scope == Scope::kClustered && !clustered) continue;
    if (scope == Scope::kOutlier && clustered) continue;
    a.push_back(static_cast<double>(real.degree(v)));
    b.push_back(static_cast<double>(synth.degree(v)));
  }
  return detail::rmse_paired(std::move(a), std::move(b), pairing);
}

// Paired by cluster id: k(C) in the real network vs k(C) in the synthetic.
inline double min_cut_sequence_rmse(const Graph& real, const Graph& synth,
                                    const Clustering& clustering,
                                    Pairing pairing = Pairing::kById) {
  std::vector<double> a, b;
  for (ClusterId c = 0; c < clustering.cluster_count(); ++c) {
    const auto& members = clustering.members(c);
    a.push_back(static_cast<double>(min_edge_cut_within(real, members).cut_size));
    b.push_back(static_cast<double>(min_edge_cut_within(synth, members).cut_size));
  }
  return detail::rmse_paired(std::move(a), std::move(b), pairing);
}

struct ClusteringCoefficients {
  double global = 0.0;
  double mean_local = 0.0;
};

// global = 3*triangles / wedges; mean_local averages the per-node local
// coefficient with degree-<2 nodes contributing 0.
inline ClusteringCoefficients clustering_coefficients(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<NodeId>> sorted_adj(n);
  for (NodeId v = 0; v < n; ++v) {
    sorted_adj[v] = g.neighbors(v);
    std::sort(sorted_adj[v].begin(), sorted_adj[v].end());
  }
  std::vector<std::uint64_t> closed(n, 0);  // 2x triangles at each node
  std::uint64_t closed_total = 0;           // 3x total triangles
  g.for_each_edge([&](NodeId u, NodeId v) {
    const auto& a = sorted_adj[u];
    const auto& b = sorted_adj[v];
    std::size_t i = 0, j = 0, common = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) {
        ++i;
      } else if (a[i] > b[j]) {
        ++j;
      } else {
        ++common;
        ++i;
        ++j;
      }
    }
    closed[u] += common;
    closed[v] += common;
    closed_total += common;
  });

  ClusteringCoefficients out;
  std::uint64_t wedges = 0;
  double local_sum = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const std::uint64_t d = g.degree(v);
    if (d < 2) continue;
    const std::uint64_t w = d * (d - 1) / 2;
    wedges += w;
    local_sum += (static_cast<double>(closed[v]) / 2.0) / static_cast<double>(w);
  }
  out.global = wedges == 0 ? 0.0 : static_cast<double>(closed_total) / static_cast<double>(wedges);
  out.mean_local = n == 0 ? 0.0 : local_sum / static_cast<double>(n);
  return out;
}

// Fraction of edges crossing cluster boundaries, outliers counted as
// singleton clusters (so any outlier-incident edge crosses). 0 on an edgeless
// graph.
inline double mixing_parameter(const Graph& g, const Clustering& clustering) {
  if (g.edge_count() == 0) return 0.0;
  std::uint64_t inter = 0;
  g.for_each_edge([&](NodeId u, NodeId v) {
    const auto cu = clustering.cluster_of(u);
    const auto cv = clustering.cluster_of(v);
    if (!(cu && cv && *cu == *cv)) ++inter;
  });
  return static_cast<double>(inter) / static_cast<double>(g.edge_count());
}

// Exact diameter of the largest connected component.
inline std::size_t diameter(const Graph& g) {
  if (g.node_count() == 0) throw std::invalid_argument("diameter: empty graph");
  const auto comps = connected_components(g);
  const auto& comp = comps[0];
  if (comp.size() < 2) return 0;
  std::vector<char> in_comp(g.node_count(), 0);
  for (NodeId v : comp) in_comp[v] = 1;
  std::vector<std::int64_t> dist(g.node_count(), -1);
  std::size_t best = 0;
  std::vector<NodeId> frontier, next;
  for (NodeId source : comp) {
    for (NodeId v : comp) dist[v] = -1;
    dist[source] = 0;
    frontier.assign(1, source);
    std::size_t level = 0;
    while (!frontier.empty()) {
      next.clear();
      for (NodeId u : frontier) {
        for (NodeId v : g.neighbors(u)) {
          if (in_comp[v] && dist[v] < 0) {
            dist[v] = static_cast<std::int64_t>(level + 1);
            next.push_back(v);
          }
        }
      }
      if (!next.empty()) ++level;
      std::swap(frontier, next);
    }
    best = std::max(best, level);
  }
  return best;
}

inline std::uint64_t outlier_cluster_edge_count(const Graph& g, const Clustering& clustering) {
  std::uint64_t count = 0;
  g.for_each_edge([&](NodeId u, NodeId v) {
    const bool cu = clustering.is_clustered(u);
    const bool cv = clustering.is_clustered(v);
    if (cu != cv) ++count;
  });
  return count;
}

// |E(g) symdiff E(n)| / |E(g)| over a shared node universe.
inline double normalized_edit_distance(const Graph& g, const Graph& n) {
  if (g.node_count() != n.node_count()) {
    throw std::invalid_argument("normalized_edit_distance: node sets differ");
  }
  if (g.edge_count() == 0) {
    throw std::invalid_argument("normalized_edit_distance: reference graph has no edges");
  }
  std::uint64_t common = 0;
  g.for_each_edge([&](NodeId u, NodeId v) {
    if (n.has_edge(u, v)) ++common;
  });
  const std::uint64_t symdiff = g.edge_count() + n.edge_count() - 2 * common;
  return static_cast<double>(symdiff) / static_cast<double>(g.edge_count());
}

namespace detail {

// Partition labels with outliers as unique singleton labels.
inline std::vector<std::int64_t> partition_labels(const Clustering& c) {
  std::vector<std::int64_t> labels(c.node_count());
  std::int64_t next_singleton = static_cast<std::int64_t>(c.cluster_count());
  for (NodeId v = 0; v < c.node_count(); ++v) {
    const auto cl = c.cluster_of(v);
    labels[v] = cl ? static_cast<std::int64_t>(*cl) : next_singleton++;
  }
  return labels;
}

struct PartitionCounts {
  std::map<std::int64_t, std::uint64_t> a_sizes;
  std::map<std::int64_t, std::uint64_t> b_sizes;
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> joint;
  std::size_t n = 0;
};

inline PartitionCounts count_partitions(const Clustering& a, const Clustering& b) {
  if (a.node_count() != b.node_count()) {
    throw std::invalid_argument("partition comparison: node universes differ");
  }
  PartitionCounts counts;
  counts.n = a.node_count();
  const auto la = partition_labels(a);
  const auto lb = partition_labels(b);
  for (std::size_t v = 0; v < counts.n; ++v) {
    ++counts.a_sizes[la[v]];
    ++counts.b_sizes[lb[v]];
    ++counts.joint[{la[v], lb[v]}];
  }
  return counts;
}

}  // namespace detail

// Normalized mutual information with the arithmetic-mean normalizer. Two
// identical trivial partitions (zero entropy) score 1.
inline double nmi(const Clustering& a, const Clustering& b) {
  const auto counts = detail::count_partitions(a, b);
  const double n = static_cast<double>(counts.n);
  if (counts.n == 0) throw std::invalid_argument("nmi: empty universe");

  auto entropy = [&](const std::map<std::int64_t, std::uint64_t>& sizes) {
    double h = 0.0;
    for (const auto& [label, size] : sizes) {
      const double p = static_cast<double>(size) / n;
      h -= p * std::log(p);
    }
    return h;
  };
  const double ha = entropy(counts.a_sizes);
  const double hb = entropy(counts.b_sizes);
  const double norm = (ha + hb) / 2.0;
  if (norm == 0.0) return 1.0;

  double mi = 0.0;
  for (const auto& [pair, size] : counts.joint) {
    const double pab = static_cast<double>(size) / n;
    const double pa = static_cast<double>(counts.a_sizes.at(pair.first)) / n;
    const double pb = static_cast<double>(counts.b_sizes.at(pair.second)) / n;
    mi += pab * std::log(pab / (pa * pb));
  }
  const double value = mi / norm;
  return std::clamp(value, 0.0, 1.0);
}

// Hubert-Arabie adjusted Rand index. Identical trivial partitions (where the
// adjustment denominator vanishes) score 1.
inline double ari(const Clustering& a, const Clustering& b) {
  const auto counts = detail::count_partitions(a, b);
  if (counts.n < 2) return 1.0;

  auto choose2 = [](std::uint64_t x) {
    return static_cast<double>(x) * static_cast<double>(x - 1) / 2.0;
  };
  double index = 0.0;
  for (const auto& [pair, size] : counts.joint) index += choose2(size);
  double sum_a = 0.0;
  for (const auto& [label, size] : counts.a_sizes) sum_a += choose2(size);
  double sum_b = 0.0;
  for (const auto& [label, size] : counts.b_sizes) sum_b += choose2(size);

  const double pairs = choose2(counts.n);
  const double expected = sum_a * sum_b / pairs;
  const double max_index = (sum_a + sum_b) / 2.0;
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

struct MetricReport {
  double min_cut_rmse = 0.0;
  double diameter_reldiff = 0.0;
  double mixing_param_diff = 0.0;
  double degree_rmse = 0.0;
  double global_cc_diff = 0.0;
  double mean_local_cc_diff = 0.0;
  double outlier_edges_reldiff = 0.0;
  double outlier_degree_rmse = 0.0;
  double edit_distance_norm = 0.0;

  std::uint64_t seed = 0;
  std::string variant;
  std::string pairing;
  std::string real_hash;
  std::string synth_hash;
  std::string clustering_hash;
};

struct ReportOptions {
  std::uint64_t seed = 0;
  std::string variant = "unknown";
  Pairing pairing = Pairing::kById;
};

namespace detail {

inline std::string hex_hash(const std::string& bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return std::string(buf);
}

// Relative difference with the degenerate 0/0 case reported as 0 so that
// "synthetic equals real" always yields an all-zero report.
inline double relative_difference_or_zero(double s, double s_prime) {
  if (s == 0.0 && s_prime == 0.0) return 0.0;
  return relative_difference(s, s_prime);
}

}  // namespace detail

inline MetricReport full_report(const Graph& real, const Graph& synth, const Clustering& clustering,
                                const ReportOptions& options = {}) {
  if (real.node_count() != synth.node_count() || real.node_count() != clustering.node_count()) {
    throw std::invalid_argument("full_report: node universes differ");
  }
  MetricReport report;
  report.seed = options.seed;
  report.variant = options.variant;
  report.pairing = options.pairing == Pairing::kById ? "by-id" : "sorted";

  report.min_cut_rmse = clustering.cluster_count() == 0
                            ? 0.0
                            : min_cut_sequence_rmse(real, synth, clustering, options.pairing);
  report.diameter_reldiff = detail::relative_difference_or_zero(
      static_cast<double>(diameter(real)), static_cast<double>(diameter(synth)));
  report.mixing_param_diff =
      simple_difference(mixing_parameter(real, clustering), mixing_parameter(synth, clustering));
  report.degree_rmse = degree_sequence_rmse(real, synth, clustering, Scope::kAll, options.pairing);

  const auto cc_real = clustering_coefficients(real);
  const auto cc_synth = clustering_coefficients(synth);
  report.global_cc_diff = simple_difference(cc_real.global, cc_synth.global);
  report.mean_local_cc_diff = simple_difference(cc_real.mean_local, cc_synth.mean_local);

  report.outlier_edges_reldiff = detail::relative_difference_or_zero(
      static_cast<double>(outlier_cluster_edge_count(real, clustering)),
      static_cast<double>(outlier_cluster_edge_count(synth, clustering)));
  report.outlier_degree_rmse =
      clustering.outliers().empty()
          ? 0.0
          : degree_sequence_rmse(real, synth, clustering, Scope::kOutlier, options.pairing);
  report.edit_distance_norm = normalized_edit_distance(real, synth);

  report.real_hash = detail::hex_hash(canonical_edge_list(real));
  report.synth_hash = detail::hex_hash(canonical_edge_list(synth));
  report.clustering_hash = detail::hex_hash(canonical_clustering(clustering, real));
  return report;
}

inline const std::vector<std::pair<std::string, double MetricReport::*>>& metric_fields() {
  static const std::vector<std::pair<std::string, double MetricReport::*>> fields = {
      {"min_cut_rmse", &MetricReport::min_cut_rmse},
      {"diameter_reldiff", &MetricReport::diameter_reldiff},
      {"mixing_param_diff", &MetricReport::mixing_param_diff},
      {"degree_rmse", &MetricReport::degree_rmse},
      {"global_cc_diff", &MetricReport::global_cc_diff},
      {"mean_local_cc_diff", &MetricReport::mean_local_cc_diff},
      {"outlier_edges_reldiff", &MetricReport::outlier_edges_reldiff},
      {"outlier_degree_rmse", &MetricReport::outlier_degree_rmse},
      {"edit_distance_norm", &MetricReport::edit_distance_norm},
  };
  return fields;
}

inline nlohmann::ordered_json to_json(const MetricReport& report) {
  nlohmann::ordered_json metrics;
  for (const auto& [name, member] : metric_fields()) metrics[name] = report.*member;
  nlohmann::ordered_json j;
  j["metrics"] = std::move(metrics);
  j["metadata"] = {{"seed", report.seed},
                   {"variant", report.variant},
                   {"pairing", report.pairing},
                   {"real_hash", report.real_hash},
                   {"synth_hash", report.synth_hash},
                   {"clustering_hash", report.clustering_hash}};
  return j;
}

inline std::string metrics_csv_header() {
  std::string out = "run,seed,variant";
  for (const auto& [name, member] : metric_fields()) {
    out += ',';
    out += name;
  }
  out += '\n';
  return out;
}

inline std::string metrics_csv_row(const std::string& run, const MetricReport& report) {
  std::string out = run + "," + std::to_string(report.seed) + "," + report.variant;
  char buf[40];
  for (const auto& [name, member] : metric_fields()) {
    std::snprintf(buf, sizeof buf, "%.12g", report.*member);
    out += ',';
    out += buf;
  }
  out += '\n';
  return out;
}

}  // namespace reccs
