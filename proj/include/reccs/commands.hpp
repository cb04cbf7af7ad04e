#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "reccs/io.hpp"
#include "reccs/metrics.hpp"
#include "reccs/pipeline.hpp"

namespace reccs {

// Exit code contract: 0 success, 1 internal error, 2 usage/validation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string graph_path;
  std::string clustering_path;
  std::string synth_path;    // evaluate only
  std::string params_path;   // optional pre-extracted params for generate
  std::string out_dir = ".";
  Variant variant = Variant::kV1;
  std::string variant_label;  // evaluate metadata; defaults to "unknown"
  std::uint64_t seed = 0;
  int replicates = 1;
  bool emit_intermediates = false;
  Pairing pairing = Pairing::kById;
};

namespace detail {

inline void write_json_file(const Json& j, const std::filesystem::path& path) {
  write_text_file(j.dump(2) + "\n", path);
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Json j;
  in >> j;
  return j;
}

inline Json stage_report_json(const StageReport& report) {
  Json j;
  j["stage"] = report.stage;
  j["edges_added"] = report.edges_added;
  j["clusters_repaired"] = report.clusters_repaired;
  j["details"] = report.details;
  j["per_cluster"] = report.per_cluster;
  return j;
}

struct LoadedInputs {
  LoadedGraph graph;
  Clustering clustering;
};

inline LoadedInputs load_inputs(const RunConfig& config) {
  if (config.graph_path.empty()) throw std::runtime_error("missing --graph");
  if (config.clustering_path.empty()) throw std::runtime_error("missing --clustering");
  LoadedInputs inputs;
  inputs.graph = load_edge_list(config.graph_path);
  inputs.clustering = load_clustering(config.clustering_path, inputs.graph.graph);
  return inputs;
}

inline std::filesystem::path ensure_out_dir(const RunConfig& config) {
  std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace detail

inline Json params_file_json(const ExtractedParams& params, const RunConfig& config) {
  Json j;
  j["format"] = "reccs-params";
  j["version"] = 1;
  j["inputs"] = {{"graph", config.graph_path}, {"clustering", config.clustering_path}};
  j["block"] = to_json(params.block);
  j["outlier"] = to_json(params.outlier);
  return j;
}

inline ExtractedParams params_from_file_json(const Json& j) {
  if (j.value("format", "") != "reccs-params") {
    throw std::runtime_error("params file: unexpected format field");
  }
  ExtractedParams params;
  params.block = block_params_from_json(j.at("block"));
  params.outlier = outlier_params_from_json(j.at("outlier"));
  return params;
}

inline int cmd_extract(const RunConfig& config) {
  return detail::guarded([&] {
    const auto inputs = detail::load_inputs(config);
    const auto params = extract_params(inputs.graph.graph, inputs.clustering);
    const auto dir = detail::ensure_out_dir(config);
    detail::write_json_file(params_file_json(params, config), dir / "params.json");
    std::cout << "extracted parameters for " << params.block.cluster_labels.size() << " clusters, "
              << params.outlier.outlier_ids.size() << " outliers -> "
              << (dir / "params.json").string() << "\n";
    return kExitOk;
  });
}

namespace detail {

inline Json generate_manifest(const RunConfig& config, const LoadedInputs& inputs,
                              const PipelineResult& result, std::uint64_t deficit,
                              const std::vector<std::pair<std::string, std::string>>& outputs) {
  Json stages = Json::array();
  for (const auto& report : result.reports) stages.push_back(stage_report_json(report));
  Json j;
  j["format"] = "reccs-manifest";
  j["version"] = 1;
  j["command"] = "generate";
  j["seed"] = config.seed;
  j["variant"] = variant_name(config.variant);
  j["inputs"] = {{"graph", config.graph_path}, {"clustering", config.clustering_path}};
  j["load"] = {{"duplicate_edges", inputs.graph.report.duplicate_edges},
               {"self_loops", inputs.graph.report.self_loops},
               {"demoted_singletons", inputs.clustering.demoted_singletons()}};
  j["stages"] = std::move(stages);
  j["audit"] = {{"min_cut_deficit", deficit}};
  j["network"] = {{"nodes", result.network.node_count()}, {"edges", result.network.edge_count()}};
  Json outs;
  for (const auto& [key, value] : outputs) outs[key] = value;
  j["outputs"] = std::move(outs);
  return j;
}

}  // namespace detail

inline int cmd_generate(const RunConfig& config) {
  return detail::guarded([&] {
    const auto inputs = detail::load_inputs(config);
    ExtractedParams params;
    if (!config.params_path.empty()) {
      params = params_from_file_json(detail::read_json_file(config.params_path));
      if (params.block.n != inputs.graph.graph.node_count()) {
        throw std::runtime_error("params file does not match the graph (node counts differ)");
      }
    } else {
      params = extract_params(inputs.graph.graph, inputs.clustering);
    }

    StageReport stage0_report;
    Graph base = stage0_base_network(params.block, config.seed, "", &stage0_report);
    if (inputs.graph.graph.has_labels()) base.set_labels(inputs.graph.graph.labels());

    PipelineArtifacts artifacts;
    PipelineResult result = repair_and_merge(base, inputs.graph.graph, params, inputs.clustering,
                                             config.variant, config.seed, "",
                                             config.emit_intermediates ? &artifacts : nullptr);
    result.reports.insert(result.reports.begin(), std::move(stage0_report));

    const std::uint64_t deficit =
        min_cut_deficit(result.network, inputs.clustering, params.block.connectivity_req);

    const auto dir = detail::ensure_out_dir(config);
    std::vector<std::pair<std::string, std::string>> outputs = {
        {"network", "synthetic_edges.tsv"}, {"clustering", "synthetic_clustering.tsv"}};
    write_edge_list(result.network, dir / "synthetic_edges.tsv");
    write_clustering(inputs.clustering, inputs.graph.graph, dir / "synthetic_clustering.tsv");
    if (config.emit_intermediates) {
      write_edge_list(base, dir / "stage0_edges.tsv");
      outputs.emplace_back("stage0", "stage0_edges.tsv");
      if (artifacts.post_stage3) {
        write_edge_list(*artifacts.post_stage3, dir / "post_stage3_edges.tsv");
        outputs.emplace_back("post_stage3", "post_stage3_edges.tsv");
      }
    }
    detail::write_json_file(detail::generate_manifest(config, inputs, result, deficit, outputs),
                            dir / "manifest.json");
    std::cout << "generated " << result.network.edge_count() << " edges (variant "
              << variant_name(config.variant) << ", seed " << config.seed
              << ", min-cut deficit " << deficit << ") -> " << dir.string() << "\n";
    return kExitOk;
  });
}

inline int cmd_evaluate(const RunConfig& config) {
  return detail::guarded([&] {
    if (config.synth_path.empty()) throw std::runtime_error("missing --synth");
    const auto inputs = detail::load_inputs(config);
    const auto synth = load_edge_list_bound(config.synth_path, inputs.graph.graph);

    ReportOptions options;
    options.seed = config.seed;
    options.variant = config.variant_label.empty() ? "unknown" : config.variant_label;
    options.pairing = config.pairing;
    const MetricReport report = full_report(inputs.graph.graph, synth.graph, inputs.clustering, options);

    const auto dir = detail::ensure_out_dir(config);
    detail::write_json_file(to_json(report), dir / "metrics.json");
    write_text_file(metrics_csv_header() + metrics_csv_row("run", report), dir / "metrics.csv");
    std::cout << "metric report -> " << (dir / "metrics.json").string() << "\n";
    return kExitOk;
  });
}

inline int cmd_replicate(const RunConfig& config) {
  return detail::guarded([&] {
    if (config.replicates < 2) {
      throw std::invalid_argument("replicate requires --replicates >= 2");
    }
    const auto inputs = detail::load_inputs(config);
    const auto params = extract_params(inputs.graph.graph, inputs.clustering);

    StageReport stage0_report;
    Graph base = stage0_base_network(params.block, config.seed, "", &stage0_report);
    if (inputs.graph.graph.has_labels()) base.set_labels(inputs.graph.graph.labels());

    const auto dir = detail::ensure_out_dir(config);
    if (config.emit_intermediates) write_edge_list(base, dir / "base_edges.tsv");

    std::vector<MetricReport> reports;
    std::vector<std::uint64_t> deficits;
    std::string csv = metrics_csv_header();
    for (int rep = 1; rep <= config.replicates; ++rep) {
      const std::string prefix = "rep" + std::to_string(rep) + "/";
      PipelineResult result = repair_and_merge(base, inputs.graph.graph, params, inputs.clustering,
                                               config.variant, config.seed, prefix);
      result.reports.insert(result.reports.begin(), stage0_report);

      const std::uint64_t deficit =
          min_cut_deficit(result.network, inputs.clustering, params.block.connectivity_req);
      deficits.push_back(deficit);

      ReportOptions options;
      options.seed = config.seed;
      options.variant = variant_name(config.variant);
      options.pairing = config.pairing;
      const MetricReport report =
          full_report(inputs.graph.graph, result.network, inputs.clustering, options);
      reports.push_back(report);

      const auto rep_dir = dir / ("rep" + std::to_string(rep));
      std::filesystem::create_directories(rep_dir);
      write_edge_list(result.network, rep_dir / "synthetic_edges.tsv");
      RunConfig rep_config = config;
      detail::write_json_file(detail::generate_manifest(rep_config, inputs, result, deficit,
                                                        {{"network", "synthetic_edges.tsv"}}),
                              rep_dir / "manifest.json");
      detail::write_json_file(to_json(report), rep_dir / "metrics.json");
      csv += metrics_csv_row("rep" + std::to_string(rep), report);
    }

    // Mean +/- sample standard deviation per metric across replicates.
    Json summary_metrics;
    const double r = static_cast<double>(config.replicates);
    for (const auto& [name, member] : metric_fields()) {
      double mean = 0.0;
      for (const auto& rep : reports) mean += rep.*member;
      mean /= r;
      double var = 0.0;
      for (const auto& rep : reports) {
        const double d = rep.*member - mean;
        var += d * d;
      }
      const double std_dev = std::sqrt(var / (r - 1.0));
      Json values = Json::array();
      for (const auto& rep : reports) values.push_back(rep.*member);
      summary_metrics[name] = {{"mean", mean}, {"std", std_dev}, {"values", std::move(values)}};
    }

    Json j;
    j["format"] = "reccs-replicate-summary";
    j["version"] = 1;
    j["seed"] = config.seed;
    j["variant"] = variant_name(config.variant);
    j["replicates"] = config.replicates;
    j["base_network"] = {{"edges", base.edge_count()},
                         {"drawn_edges", stage0_report.details.at("drawn_edges")}};
    j["min_cut_deficit"] = deficits;
    j["metrics"] = std::move(summary_metrics);
    detail::write_json_file(j, dir / "summary.json");
    write_text_file(csv, dir / "replicates.csv");
    std::cout << "replicated " << config.replicates << " runs -> " << dir.string() << "\n";
    return kExitOk;
  });
}

}  // namespace reccs
