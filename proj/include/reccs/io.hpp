#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reccs/clustering.hpp"
#include "reccs/graph.hpp"

namespace reccs {

struct LoadReport {
  std::uint64_t duplicate_edges = 0;
  std::uint64_t self_loops = 0;
};

struct LoadedGraph {
  Graph graph;
  LoadReport report;
};

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(std::move(tok));
  return tokens;
}

inline bool skippable(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r\n");
  return pos == std::string::npos || line[pos] == '#';
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace detail

// Whitespace-separated "u v" pairs, one edge per line; '#' lines are
// comments. External labels are remapped to dense ids in first-appearance
// order and kept as the label table. Self-loops and duplicate edges are
// dropped and counted.
inline LoadedGraph load_edge_list(std::istream& in) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> edges;
  auto intern = [&](const std::string& label) {
    auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::skippable(line)) continue;
    const auto tokens = detail::split_tokens(line);
    if (tokens.size() != 2) {
      throw std::runtime_error("edge list parse error at line " + std::to_string(lineno) +
                               ": expected 2 tokens, got " + std::to_string(tokens.size()));
    }
    // Two statements: argument evaluation order must not decide label ids.
    const NodeId u = intern(tokens[0]);
    const NodeId v = intern(tokens[1]);
    edges.emplace_back(u, v);
  }

  LoadedGraph out;
  out.graph = Graph(labels.size());
  out.graph.set_labels(labels);
  for (const auto& [u, v] : edges) {
    if (u == v) {
      ++out.report.self_loops;
    } else if (!out.graph.add_edge(u, v)) {
      ++out.report.duplicate_edges;
    }
  }
  return out;
}

inline LoadedGraph load_edge_list(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return load_edge_list(in);
}

// Loads an edge list whose labels must all exist in `universe`'s label table;
// the result shares `universe`'s node ids and count, so nodes absent from the
// file (isolated in this network) keep their identity. This is how synthetic
// networks are re-aligned with the real one for evaluation.
inline LoadedGraph load_edge_list_bound(std::istream& in, const Graph& universe) {
  std::unordered_map<std::string, NodeId> ids;
  ids.reserve(universe.node_count());
  for (NodeId v = 0; v < universe.node_count(); ++v) ids.emplace(universe.label_of(v), v);

  LoadedGraph out;
  out.graph = Graph(universe.node_count());
  if (universe.has_labels()) out.graph.set_labels(universe.labels());

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::skippable(line)) continue;
    const auto tokens = detail::split_tokens(line);
    if (tokens.size() != 2) {
      throw std::runtime_error("edge list parse error at line " + std::to_string(lineno) +
                               ": expected 2 tokens, got " + std::to_string(tokens.size()));
    }
    NodeId end[2];
    for (int i = 0; i < 2; ++i) {
      const auto it = ids.find(tokens[i]);
      if (it == ids.end()) {
        throw std::runtime_error("edge list line " + std::to_string(lineno) + ": label '" +
                                 tokens[i] + "' not present in the reference network");
      }
      end[i] = it->second;
    }
    if (end[0] == end[1]) {
      ++out.report.self_loops;
    } else if (!out.graph.add_edge(end[0], end[1])) {
      ++out.report.duplicate_edges;
    }
  }
  return out;
}

inline LoadedGraph load_edge_list_bound(const std::filesystem::path& path, const Graph& universe) {
  auto in = detail::open_input(path);
  return load_edge_list_bound(in, universe);
}

// Canonical form: one "u\tv" line per edge with u < v by label, lines sorted
// lexicographically. Canonical bytes make equal-seed runs diffable.
inline std::string canonical_edge_list(const Graph& g) {
  std::vector<std::pair<std::string, std::string>> lines;
  lines.reserve(g.edge_count());
  g.for_each_edge([&](NodeId u, NodeId v) {
    std::string a = g.label_of(u);
    std::string b = g.label_of(v);
    if (b < a) std::swap(a, b);
    lines.emplace_back(std::move(a), std::move(b));
  });
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& [a, b] : lines) {
    out += a;
    out += '\t';
    out += b;
    out += '\n';
  }
  return out;
}

inline void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << canonical_edge_list(g);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

// "node<TAB>cluster" lines against a loaded graph. Unknown node labels are
// errors; conflicting assignments are errors; size-1 clusters demote to
// outliers inside Clustering::from_assignments.
inline Clustering load_clustering(std::istream& in, const Graph& graph) {
  std::unordered_map<std::string, NodeId> ids;
  ids.reserve(graph.node_count());
  for (NodeId v = 0; v < graph.node_count(); ++v) ids.emplace(graph.label_of(v), v);

  std::vector<std::pair<NodeId, std::string>> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::skippable(line)) continue;
    const auto tokens = detail::split_tokens(line);
    if (tokens.size() != 2) {
      throw std::runtime_error("clustering parse error at line " + std::to_string(lineno) +
                               ": expected 2 tokens, got " + std::to_string(tokens.size()));
    }
    const auto it = ids.find(tokens[0]);
    if (it == ids.end()) {
      throw std::runtime_error("clustering line " + std::to_string(lineno) + ": unknown node label '" +
                               tokens[0] + "'");
    }
    pairs.emplace_back(it->second, tokens[1]);
  }
  return Clustering::from_assignments(graph.node_count(), pairs);
}

inline Clustering load_clustering(const std::filesystem::path& path, const Graph& graph) {
  auto in = detail::open_input(path);
  return load_clustering(in, graph);
}

inline std::string canonical_clustering(const Clustering& clustering, const Graph& graph) {
  std::vector<std::pair<std::string, std::string>> lines;
  for (ClusterId c = 0; c < clustering.cluster_count(); ++c) {
    for (NodeId v : clustering.members(c)) {
      lines.emplace_back(graph.label_of(v), clustering.cluster_label(c));
    }
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& [node, cluster] : lines) {
    out += node;
    out += '\t';
    out += cluster;
    out += '\n';
  }
  return out;
}

inline void write_clustering(const Clustering& clustering, const Graph& graph,
                             const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << canonical_clustering(clustering, graph);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

inline void write_text_file(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace reccs
