#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "reccs/commands.hpp"

namespace {

using reccs::RunConfig;

// JSON configs are expanded into ordinary long options placed before the
// user's own flags (so explicit flags win); TOML configs are handled natively
// by CLI11's --config machinery.
std::vector<std::string> expand_json_config(std::vector<std::string> args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    std::size_t remove = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      remove = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      remove = 1;
    }
    if (remove == 0 || path.size() < 5 || path.substr(path.size() - 5) != ".json") continue;

    std::ifstream in(path);
    if (!in) throw CLI::FileError("could not open config " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw CLI::FileError("bad JSON config " + path + ": " + e.what());
    }
    std::vector<std::string> injected;
    for (const auto& [key, value] : j.items()) {
      if (value.is_boolean()) {
        if (value.get<bool>()) injected.push_back("--" + key);
      } else if (value.is_string()) {
        injected.push_back("--" + key + "=" + value.get<std::string>());
      } else {
        injected.push_back("--" + key + "=" + value.dump());
      }
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
               args.begin() + static_cast<std::ptrdiff_t>(i + remove));
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(i), injected.begin(), injected.end());
    break;
  }
  return args;
}

void add_variant_option(CLI::App* sub, RunConfig& config, bool required) {
  auto* opt = sub->add_option_function<std::string>(
                     "--variant",
                     [&config](const std::string& name) {
                       const auto v = reccs::parse_variant(name);
                       if (!v) throw CLI::ValidationError("--variant", "must be v1, v2 or sbm-only");
                       config.variant = *v;
                       config.variant_label = name;
                     },
                     "pipeline variant: v1, v2 or sbm-only")
                  ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  if (required) opt->required();
}

void add_common(CLI::App* sub, RunConfig& config) {
  // --config lives on the top-level app; let it fall through from here.
  sub->fallthrough();
  sub->add_option("--out", config.out_dir, "output directory")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RECCS: cluster-connectivity-preserving synthetic network generation and evaluation"};
  app.require_subcommand(1);
  // TOML configs use one [subcommand] section per subcommand; JSON configs are
  // flat and expanded into options before parsing.
  app.set_config("--config", "", "TOML config file ([generate] etc. sections); *.json also accepted");

  RunConfig extract_cfg, generate_cfg, evaluate_cfg, replicate_cfg;

  auto* extract = app.add_subcommand("extract", "extract block and outlier parameters to JSON");
  extract->add_option("--graph", extract_cfg.graph_path, "edge list TSV")->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  extract->add_option("--clustering", extract_cfg.clustering_path, "clustering TSV")->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  add_common(extract, extract_cfg);

  auto* generate = app.add_subcommand("generate", "generate a synthetic network");
  generate->add_option("--graph", generate_cfg.graph_path, "edge list TSV")->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  generate->add_option("--clustering", generate_cfg.clustering_path, "clustering TSV")->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  generate->add_option("--params", generate_cfg.params_path, "pre-extracted params.json (skips extraction)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  generate->add_option("--seed", generate_cfg.seed, "random seed (required; runs are reproducible)")
      ->required()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  add_variant_option(generate, generate_cfg, false);
  generate->add_flag("--emit-intermediates", generate_cfg.emit_intermediates,
                     "also write the stage-0 and post-stage-3 networks");
  add_common(generate, generate_cfg);

  auto* evaluate = app.add_subcommand("evaluate", "compare a synthetic network against the real one");
  evaluate->add_option("--graph", evaluate_cfg.graph_path, "real edge list TSV")->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  evaluate->add_option("--synth", evaluate_cfg.synth_path, "synthetic edge list TSV")->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  evaluate->add_option("--clustering", evaluate_cfg.clustering_path, "clustering TSV")->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  evaluate->add_option("--seed", evaluate_cfg.seed, "seed recorded in the report metadata")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  add_variant_option(evaluate, evaluate_cfg, false);
  evaluate->add_option_function<std::string>(
              "--paired",
              [&evaluate_cfg](const std::string& mode) {
                if (mode == "by-id") {
                  evaluate_cfg.pairing = reccs::Pairing::kById;
                } else if (mode == "sorted") {
                  evaluate_cfg.pairing = reccs::Pairing::kSorted;
                } else {
                  throw CLI::ValidationError("--paired", "must be by-id or sorted");
                }
              },
              "sequence pairing: by-id (default) or sorted")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  add_common(evaluate, evaluate_cfg);

  auto* replicate = app.add_subcommand("replicate", "repair one shared SBM base several times");
  replicate->add_option("--graph", replicate_cfg.graph_path, "edge list TSV")->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  replicate->add_option("--clustering", replicate_cfg.clustering_path, "clustering TSV")->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  replicate->add_option("--seed", replicate_cfg.seed, "master seed")->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  replicate->add_option("--replicates", replicate_cfg.replicates, "number of repair runs (>= 2)")
      ->required()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  add_variant_option(replicate, replicate_cfg, false);
  replicate->add_flag("--emit-intermediates", replicate_cfg.emit_intermediates,
                      "also write the shared base network");
  add_common(replicate, replicate_cfg);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_json_config(std::move(args));
    // CLI11 parses reversed argument vectors.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return reccs::kExitUsage;
  }

  if (extract->parsed()) return reccs::cmd_extract(extract_cfg);
  if (generate->parsed()) return reccs::cmd_generate(generate_cfg);
  if (evaluate->parsed()) return reccs::cmd_evaluate(evaluate_cfg);
  if (replicate->parsed()) return reccs::cmd_replicate(replicate_cfg);
  return reccs::kExitUsage;
}
