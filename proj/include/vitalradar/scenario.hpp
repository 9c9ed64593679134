#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "vitalradar/rate_estimation.hpp"
#include "vitalradar/types.hpp"

namespace vitalradar {

/// Configuration or constraint violation; maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Failure inside a pipeline stage (message names the stage); exit code 2.
class PipelineError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StftParams {
  double window_seconds = 0.1;
  Index hop_samples = 1;
  Index fft_length = 256;

  Index window_samples(double sample_rate_hz) const {
    return static_cast<Index>(std::llround(window_seconds * sample_rate_hz));
  }
};

/// Full scenario description. Defaults reproduce the reference simulation:
/// 0.2 Hz / 1.1 Hz vitals, -10 dB heart-to-respiration ratio, 120 sps,
/// 60 GHz carrier, 1.0 cm / 0.1 mm amplitudes, 60 s recording, 0.1 s
/// analysis window, 0.147 m/s slice.
struct ScenarioConfig {
  RadarConfig radar;
  VitalSignParams vitals;
  ScattererModel model = ScattererModel::kTwoPoint;
  StftParams stft;
  double slice_velocity_mps = 0.147;
  EstimationParams estimation;
  std::string output_dir = "out";

  void validate() const;  // throws ConfigError naming the offending field
};

/// Flat key-value config file: one `key = value` per line, `#` comments.
/// Unknown keys are rejected with the line number; absent keys keep their
/// defaults.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Apply one textual override (same keys as the config file).
void apply_override(ScenarioConfig& config, const std::string& key, const std::string& value);

/// Write the resolved configuration in the same format load_config reads.
void save_config(const ScenarioConfig& config, const std::filesystem::path& path);

/// Render the resolved configuration as config-file lines.
std::string config_text(const ScenarioConfig& config);

/// All recognized config keys, in file order.
const std::vector<std::string>& config_keys();

struct ManifestEntry {
  std::string role;
  std::string path;
};

struct OutputBundle {
  std::vector<ManifestEntry> manifest;
  ScenarioConfig run_parameters;
};

// Pipeline runners. Each validates the config, creates the output directory
// and writes its slice of the scenario outputs; run_scenario produces
// everything plus the manifest and the resolved-parameter echo. Outputs are
// deterministic: identical configs give byte-identical files.
OutputBundle run_synth(const ScenarioConfig& config);
OutputBundle run_maps(const ScenarioConfig& config);
OutputBundle run_phase(const ScenarioConfig& config);
OutputBundle run_slice(const ScenarioConfig& config);
OutputBundle run_estimate(const ScenarioConfig& config);
OutputBundle run_scenario(const ScenarioConfig& config);

}  // namespace vitalradar
