#include "cli_main.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "vitalradar/scenario.hpp"

namespace vitalradar {

namespace {

struct CliState {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_config_options(CLI::App* cmd, const std::shared_ptr<CliState>& state) {
  cmd->add_option_function<std::string>(
      "--config", [state](const std::string& v) { state->config_path = v; },
      "scenario config file (key = value lines, # comments)");
  for (const std::string& key : config_keys()) {
    cmd->add_option_function<std::string>(
        "--" + key,
        [state, key](const std::string& v) { state->overrides.emplace_back(key, v); },
        "override config key " + key);
  }
}

void print_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return;
  std::cout << in.rdbuf();
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"baseband radar vital-sign simulator and rate-estimation pipelines"};
  app.require_subcommand(1);
  auto state = std::make_shared<CliState>();

  CLI::App* synth = app.add_subcommand("synth", "write the motion traces");
  CLI::App* map = app.add_subcommand(
      "map", "write the velocity-time maps (respiration-only, heartbeat-only, combined)");
  CLI::App* phase =
      app.add_subcommand("phase", "write the unwrapped phase, its derivative and spectrum");
  CLI::App* slice =
      app.add_subcommand("slice", "write the fixed-velocity slice series and spectra");
  CLI::App* estimate = app.add_subcommand("estimate", "write the rate estimates");
  CLI::App* scenario =
      app.add_subcommand("scenario", "run the full pipeline and write every output");
  for (CLI::App* cmd : {synth, map, phase, slice, estimate, scenario})
    add_config_options(cmd, state);

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    ScenarioConfig cfg;
    if (!state->config_path.empty()) cfg = load_config(state->config_path);
    for (const auto& [key, value] : state->overrides) apply_override(cfg, key, value);
    cfg.validate();
    std::cout << config_text(cfg);

    OutputBundle bundle;
    if (app.got_subcommand(synth))
      bundle = run_synth(cfg);
    else if (app.got_subcommand(map))
      bundle = run_maps(cfg);
    else if (app.got_subcommand(phase))
      bundle = run_phase(cfg);
    else if (app.got_subcommand(slice))
      bundle = run_slice(cfg);
    else if (app.got_subcommand(estimate))
      bundle = run_estimate(cfg);
    else
      bundle = run_scenario(cfg);

    std::cout << "\n";
    for (const ManifestEntry& entry : bundle.manifest)
      std::cout << entry.role << " -> " << entry.path << "\n";
    if (app.got_subcommand(estimate) || app.got_subcommand(scenario)) {
      std::cout << "\n";
      for (const ManifestEntry& entry : bundle.manifest) {
        if (entry.role == "estimates") print_file(entry.path);
      }
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace vitalradar
