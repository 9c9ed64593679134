#include "vitalradar/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <utility>

#include "vitalradar/fft.hpp"
#include "vitalradar/io.hpp"
#include "vitalradar/phase.hpp"
#include "vitalradar/signal_model.hpp"
#include "vitalradar/slice.hpp"
#include "vitalradar/spectral.hpp"

namespace vitalradar {

namespace {

namespace fs = std::filesystem;

template <class F>
decltype(auto) with_stage(const char* name, F&& fn) {
  try {
    return std::forward<F>(fn)();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(std::string("stage '") + name + "': " + e.what());
  }
}

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trimmed(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + value + "'");
  }
  if (pos != value.size()) throw ConfigError(key + ": not a number: '" + value + "'");
  return v;
}

Index parse_index(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an integer: '" + value + "'");
  }
  if (pos != value.size()) throw ConfigError(key + ": not an integer: '" + value + "'");
  return static_cast<Index>(v);
}

const char* model_name(ScattererModel model) {
  return model == ScattererModel::kSinglePoint ? "single_point" : "two_point";
}

struct Traces {
  MotionTrace rb;
  MotionTrace rh;
  MotionTrace combined;
};

Traces make_traces(const ScenarioConfig& cfg) {
  Traces t;
  t.rb = synth_respiration(cfg.vitals, cfg.radar);
  t.rh = synth_heartbeat(cfg.vitals, cfg.radar);
  t.combined = combined_trace(t.rb, t.rh);
  return t;
}

// unit-magnitude reflection of a single motion component
BasebandSignal isolated_signal(const MotionTrace& trace, const RadarConfig& radar) {
  MotionTrace zero{ArrayXd::Zero(trace.samples.size()), trace.sample_rate_hz, trace.label};
  return single_point_signal(trace, zero, ScattererMagnitudes{}, radar);
}

BasebandSignal model_signal(const ScenarioConfig& cfg, const Traces& t) {
  const ScattererMagnitudes mags = ScattererMagnitudes::from_params(cfg.vitals);
  if (cfg.model == ScattererModel::kSinglePoint)
    return single_point_signal(t.rb, t.rh, mags, cfg.radar);
  return two_point_signal(t.rb, t.rh, mags, cfg.radar);
}

VelocityTimeMap make_map(const ScenarioConfig& cfg, const BasebandSignal& signal) {
  return velocity_time_map(signal, cfg.radar, cfg.stft.window_samples(cfg.radar.sample_rate_hz),
                           cfg.stft.hop_samples, cfg.stft.fft_length);
}

ArrayXd sample_times(Index n, double sample_rate_hz) {
  ArrayXd t(n);
  for (Index i = 0; i < n; ++i) t[i] = static_cast<double>(i) / sample_rate_hz;
  return t;
}

struct PhaseOutputs {
  PhaseSeries unwrapped;
  ArrayXd derivative;
  Spectrum spectrum;
};

PhaseOutputs phase_pipeline(const BasebandSignal& signal) {
  PhaseOutputs out;
  out.unwrapped = unwrap_phase(extract_phase(signal));
  out.derivative = phase_derivative(out.unwrapped);
  out.spectrum = spectrum_of_series(out.unwrapped.values, out.unwrapped.sample_rate_hz);
  return out;
}

struct SliceOutputs {
  VelocitySlice linear;
  VelocitySlice compressed;
  Spectrum linear_spectrum;
  Spectrum compressed_spectrum;
};

SliceOutputs slice_pipeline(const VelocityTimeMap& map, double requested_velocity_mps) {
  SliceOutputs out;
  out.linear = extract_slice(map, requested_velocity_mps);
  out.compressed = log_compress(out.linear);
  out.linear_spectrum = slice_spectrum(out.linear);
  out.compressed_spectrum = slice_spectrum(out.compressed);
  return out;
}

struct EstimateReport {
  RateEstimate phase_estimate;
  RateEstimate slice_estimate;
  double slice_velocity_mps = 0.0;
  std::optional<double> heart_score_uncompressed;
  std::optional<double> heart_score_compressed;
  std::optional<double> suppression_db;  // two-point model only
};

EstimateReport make_report(const ScenarioConfig& cfg, const Traces& traces,
                           const PhaseOutputs& phase, const SliceOutputs& slices) {
  EstimateReport rep;
  rep.phase_estimate =
      estimate_rates(phase.spectrum, cfg.estimation, SpectrumSource::kPhaseSpectrum);
  rep.slice_estimate = estimate_rates(slices.compressed_spectrum, cfg.estimation,
                                      SpectrumSource::kSliceSpectrum);
  rep.slice_velocity_mps = slices.linear.slice_velocity_mps;
  if (rep.slice_estimate.heart) {
    const double f0 = rep.slice_estimate.heart->frequency_hz;
    const double tol = cfg.estimation.tolerance_bins * slices.compressed_spectrum.bin_width();
    rep.heart_score_uncompressed =
        harmonic_group_score(slices.linear_spectrum, f0, cfg.estimation.k_max, tol).score;
    rep.heart_score_compressed =
        harmonic_group_score(slices.compressed_spectrum, f0, cfg.estimation.k_max, tol).score;
    if (cfg.model == ScattererModel::kTwoPoint) {
      // identical processing on a single-scatterer reference exposes how much
      // the mixed two-scatterer phase hides the heart line
      const ScattererMagnitudes mags = ScattererMagnitudes::from_params(cfg.vitals);
      const PhaseOutputs reference =
          phase_pipeline(single_point_signal(traces.rb, traces.rh, mags, cfg.radar));
      Index bin = 0;
      for (Index i = 1; i < reference.spectrum.frequencies.size(); ++i) {
        if (std::abs(reference.spectrum.frequencies[i] - f0) <
            std::abs(reference.spectrum.frequencies[bin] - f0))
          bin = i;
      }
      rep.suppression_db =
          reference.spectrum.magnitude_db[bin] - phase.spectrum.magnitude_db[bin];
    }
  }
  return rep;
}

void append_band(std::string& text, const std::string& prefix, const char* band,
                 const std::optional<BandEstimate>& est) {
  if (est) {
    text += prefix + "." + band + "_status = ok\n";
    text += prefix + "." + band + "_hz = " + fmt_double(est->frequency_hz) + "\n";
    text += prefix + "." + band + "_score = " + fmt_double(est->group.score) + "\n";
    text += prefix + "." + band +
            "_harmonics = " + std::to_string(est->group.harmonic_count) + "\n";
  } else {
    text += prefix + "." + band + "_status = absent\n";
  }
}

std::string render_report(const ScenarioConfig& cfg, const EstimateReport& rep) {
  std::string text;
  text += std::string("model = ") + model_name(cfg.model) + "\n";
  append_band(text, "phase_spectrum", "respiration", rep.phase_estimate.respiration);
  append_band(text, "phase_spectrum", "heart", rep.phase_estimate.heart);
  text += "slice_spectrum.slice_velocity_mps = " + fmt_double(rep.slice_velocity_mps) + "\n";
  append_band(text, "slice_spectrum", "respiration", rep.slice_estimate.respiration);
  append_band(text, "slice_spectrum", "heart", rep.slice_estimate.heart);
  if (rep.heart_score_uncompressed)
    text += "slice.heart_score_uncompressed = " + fmt_double(*rep.heart_score_uncompressed) +
            "\n";
  if (rep.heart_score_compressed)
    text += "slice.heart_score_log_compressed = " + fmt_double(*rep.heart_score_compressed) +
            "\n";
  if (rep.suppression_db)
    text += "phase_spectrum.heart_suppression_db_vs_single_point = " +
            fmt_double(*rep.suppression_db) + "\n";
  return text;
}

void emit_series(OutputBundle& bundle, const fs::path& dir, const std::string& role,
                 const std::string& file, const Eigen::Ref<const ArrayXd>& axis,
                 const Eigen::Ref<const ArrayXd>& values) {
  const fs::path path = dir / file;
  write_csv_series(axis, values, path);
  bundle.manifest.push_back(ManifestEntry{role, path.string()});
}

void emit_map(OutputBundle& bundle, const fs::path& dir, const std::string& role,
              const std::string& base, const VelocityTimeMap& map) {
  const fs::path csv = dir / (base + ".csv");
  write_csv_matrix(map.magnitude_db, map.velocity_axis, map.time_axis, csv);
  bundle.manifest.push_back(ManifestEntry{role + "_csv", csv.string()});
  const fs::path pgm = dir / (base + ".pgm");
  write_pgm_heatmap(map.magnitude_db, pgm);
  bundle.manifest.push_back(ManifestEntry{role + "_pgm", pgm.string()});
}

void emit_text(OutputBundle& bundle, const fs::path& dir, const std::string& role,
               const std::string& file, const std::string& text) {
  const fs::path path = dir / file;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
  bundle.manifest.push_back(ManifestEntry{role, path.string()});
}

OutputBundle begin_bundle(const ScenarioConfig& cfg) {
  cfg.validate();  // nothing is written for an invalid config
  OutputBundle bundle;
  bundle.run_parameters = cfg;
  with_stage("output setup", [&] { fs::create_directories(fs::path(cfg.output_dir)); });
  return bundle;
}

void emit_traces(OutputBundle& bundle, const ScenarioConfig& cfg, const Traces& t) {
  const ArrayXd times = sample_times(t.rb.samples.size(), cfg.radar.sample_rate_hz);
  const fs::path dir = cfg.output_dir;
  emit_series(bundle, dir, "respiration_trace", "respiration_trace.csv", times, t.rb.samples);
  emit_series(bundle, dir, "heartbeat_trace", "heartbeat_trace.csv", times, t.rh.samples);
  emit_series(bundle, dir, "combined_trace", "combined_trace.csv", times, t.combined.samples);
}

void emit_phase(OutputBundle& bundle, const ScenarioConfig& cfg, const PhaseOutputs& ph) {
  const ArrayXd times = sample_times(ph.unwrapped.values.size(), ph.unwrapped.sample_rate_hz);
  const fs::path dir = cfg.output_dir;
  emit_series(bundle, dir, "unwrapped_phase", "unwrapped_phase.csv", times,
              ph.unwrapped.values);
  emit_series(bundle, dir, "phase_derivative", "phase_derivative.csv", times, ph.derivative);
  emit_series(bundle, dir, "phase_spectrum", "phase_spectrum.csv", ph.spectrum.frequencies,
              ph.spectrum.magnitude_db);
}

void emit_slices(OutputBundle& bundle, const ScenarioConfig& cfg, const VelocityTimeMap& map,
                 const SliceOutputs& sl) {
  const fs::path dir = cfg.output_dir;
  emit_series(bundle, dir, "slice_linear", "slice_linear.csv", map.time_axis,
              sl.linear.values);
  emit_series(bundle, dir, "slice_log", "slice_log.csv", map.time_axis,
              sl.compressed.values);
  emit_series(bundle, dir, "slice_spectrum_linear", "slice_spectrum_linear.csv",
              sl.linear_spectrum.frequencies, sl.linear_spectrum.magnitude_db);
  emit_series(bundle, dir, "slice_spectrum_log", "slice_spectrum_log.csv",
              sl.compressed_spectrum.frequencies, sl.compressed_spectrum.magnitude_db);
}

}  // namespace

void ScenarioConfig::validate() const {
  try {
    radar.validate();
    vitals.validate();
    estimation.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(stft.window_seconds > 0.0)) throw ConfigError("window_seconds must be > 0");
  const Index window = stft.window_samples(radar.sample_rate_hz);
  if (window < 2) throw ConfigError("window_seconds: window must span at least 2 samples");
  if (window > radar.sample_count())
    throw ConfigError("window_seconds: window longer than the recording");
  if (stft.hop_samples < 1) throw ConfigError("hop_samples must be >= 1");
  if (!fft::is_power_of_two(stft.fft_length) || stft.fft_length < window)
    throw ConfigError("fft_length: must be a power of two and >= the window length");
  if (!std::isfinite(slice_velocity_mps))
    throw ConfigError("slice_velocity_mps must be finite");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "carrier_frequency_hz", "sample_rate_hz",    "duration_s",
      "standoff_range_m",     "respiration_rate_hz", "heart_rate_hz",
      "respiration_amplitude_m", "heart_amplitude_m", "hr_ratio_db",
      "model",                "window_seconds",    "hop_samples",
      "fft_length",           "slice_velocity_mps", "resp_band_low_hz",
      "resp_band_high_hz",    "heart_band_low_hz", "heart_band_high_hz",
      "k_max",                "tolerance_bins",    "mask_width_hz",
      "min_prominence_db",    "output_dir"};
  return keys;
}

void apply_override(ScenarioConfig& c, const std::string& key, const std::string& value) {
  if (key == "carrier_frequency_hz")
    c.radar.carrier_frequency_hz = parse_double(key, value);
  else if (key == "sample_rate_hz")
    c.radar.sample_rate_hz = parse_double(key, value);
  else if (key == "duration_s")
    c.radar.duration_s = parse_double(key, value);
  else if (key == "standoff_range_m")
    c.radar.standoff_range_m = parse_double(key, value);
  else if (key == "respiration_rate_hz")
    c.vitals.respiration_rate_hz = parse_double(key, value);
  else if (key == "heart_rate_hz")
    c.vitals.heart_rate_hz = parse_double(key, value);
  else if (key == "respiration_amplitude_m")
    c.vitals.respiration_amplitude_m = parse_double(key, value);
  else if (key == "heart_amplitude_m")
    c.vitals.heart_amplitude_m = parse_double(key, value);
  else if (key == "hr_ratio_db")
    c.vitals.hr_ratio_db = parse_double(key, value);
  else if (key == "model") {
    if (value == "single_point")
      c.model = ScattererModel::kSinglePoint;
    else if (value == "two_point")
      c.model = ScattererModel::kTwoPoint;
    else
      throw ConfigError("model: expected single_point or two_point, got '" + value + "'");
  } else if (key == "window_seconds")
    c.stft.window_seconds = parse_double(key, value);
  else if (key == "hop_samples")
    c.stft.hop_samples = parse_index(key, value);
  else if (key == "fft_length")
    c.stft.fft_length = parse_index(key, value);
  else if (key == "slice_velocity_mps")
    c.slice_velocity_mps = parse_double(key, value);
  else if (key == "resp_band_low_hz")
    c.estimation.respiration_band.low_hz = parse_double(key, value);
  else if (key == "resp_band_high_hz")
    c.estimation.respiration_band.high_hz = parse_double(key, value);
  else if (key == "heart_band_low_hz")
    c.estimation.heart_band.low_hz = parse_double(key, value);
  else if (key == "heart_band_high_hz")
    c.estimation.heart_band.high_hz = parse_double(key, value);
  else if (key == "k_max")
    c.estimation.k_max = static_cast<int>(parse_index(key, value));
  else if (key == "tolerance_bins")
    c.estimation.tolerance_bins = parse_double(key, value);
  else if (key == "mask_width_hz")
    c.estimation.mask_width_hz = parse_double(key, value);
  else if (key == "min_prominence_db")
    c.estimation.min_prominence_db = parse_double(key, value);
  else if (key == "output_dir")
    c.output_dir = value;
  else
    throw ConfigError("unknown key '" + key + "'");
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  ScenarioConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trimmed(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key = trimmed(stripped.substr(0, eq));
    const std::string value = trimmed(stripped.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": missing key");
    try {
      apply_override(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

std::string config_text(const ScenarioConfig& c) {
  std::string text = "# resolved scenario configuration\n";
  text += "carrier_frequency_hz = " + fmt_double(c.radar.carrier_frequency_hz) + "\n";
  text += "sample_rate_hz = " + fmt_double(c.radar.sample_rate_hz) + "\n";
  text += "duration_s = " + fmt_double(c.radar.duration_s) + "\n";
  text += "standoff_range_m = " + fmt_double(c.radar.standoff_range_m) + "\n";
  text += "respiration_rate_hz = " + fmt_double(c.vitals.respiration_rate_hz) + "\n";
  text += "heart_rate_hz = " + fmt_double(c.vitals.heart_rate_hz) + "\n";
  text += "respiration_amplitude_m = " + fmt_double(c.vitals.respiration_amplitude_m) + "\n";
  text += "heart_amplitude_m = " + fmt_double(c.vitals.heart_amplitude_m) + "\n";
  text += "hr_ratio_db = " + fmt_double(c.vitals.hr_ratio_db) + "\n";
  text += std::string("model = ") + model_name(c.model) + "\n";
  text += "window_seconds = " + fmt_double(c.stft.window_seconds) + "\n";
  text += "hop_samples = " + std::to_string(c.stft.hop_samples) + "\n";
  text += "fft_length = " + std::to_string(c.stft.fft_length) + "\n";
  text += "slice_velocity_mps = " + fmt_double(c.slice_velocity_mps) + "\n";
  text += "resp_band_low_hz = " + fmt_double(c.estimation.respiration_band.low_hz) + "\n";
  text += "resp_band_high_hz = " + fmt_double(c.estimation.respiration_band.high_hz) + "\n";
  text += "heart_band_low_hz = " + fmt_double(c.estimation.heart_band.low_hz) + "\n";
  text += "heart_band_high_hz = " + fmt_double(c.estimation.heart_band.high_hz) + "\n";
  text += "k_max = " + std::to_string(c.estimation.k_max) + "\n";
  text += "tolerance_bins = " + fmt_double(c.estimation.tolerance_bins) + "\n";
  text += "mask_width_hz = " + fmt_double(c.estimation.mask_width_hz) + "\n";
  text += "min_prominence_db = " + fmt_double(c.estimation.min_prominence_db) + "\n";
  text += "output_dir = " + c.output_dir + "\n";
  return text;
}

void save_config(const ScenarioConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  const std::string text = config_text(config);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

OutputBundle run_synth(const ScenarioConfig& cfg) {
  OutputBundle bundle = begin_bundle(cfg);
  const Traces traces = with_stage("synthesis", [&] { return make_traces(cfg); });
  with_stage("trace output", [&] { emit_traces(bundle, cfg, traces); });
  return bundle;
}

OutputBundle run_maps(const ScenarioConfig& cfg) {
  OutputBundle bundle = begin_bundle(cfg);
  const Traces traces = with_stage("synthesis", [&] { return make_traces(cfg); });
  with_stage("velocity maps", [&] {
    emit_map(bundle, cfg.output_dir, "map_respiration", "map_respiration",
             make_map(cfg, isolated_signal(traces.rb, cfg.radar)));
    emit_map(bundle, cfg.output_dir, "map_heartbeat", "map_heartbeat",
             make_map(cfg, isolated_signal(traces.rh, cfg.radar)));
    emit_map(bundle, cfg.output_dir, "map_combined", "map_combined",
             make_map(cfg, model_signal(cfg, traces)));
  });
  return bundle;
}

OutputBundle run_phase(const ScenarioConfig& cfg) {
  OutputBundle bundle = begin_bundle(cfg);
  const Traces traces = with_stage("synthesis", [&] { return make_traces(cfg); });
  const PhaseOutputs ph =
      with_stage("phase extraction", [&] { return phase_pipeline(model_signal(cfg, traces)); });
  with_stage("phase output", [&] { emit_phase(bundle, cfg, ph); });
  return bundle;
}

OutputBundle run_slice(const ScenarioConfig& cfg) {
  OutputBundle bundle = begin_bundle(cfg);
  const Traces traces = with_stage("synthesis", [&] { return make_traces(cfg); });
  const VelocityTimeMap map =
      with_stage("velocity maps", [&] { return make_map(cfg, model_signal(cfg, traces)); });
  const SliceOutputs sl =
      with_stage("slice analysis", [&] { return slice_pipeline(map, cfg.slice_velocity_mps); });
  with_stage("slice output", [&] { emit_slices(bundle, cfg, map, sl); });
  return bundle;
}

OutputBundle run_estimate(const ScenarioConfig& cfg) {
  OutputBundle bundle = begin_bundle(cfg);
  const Traces traces = with_stage("synthesis", [&] { return make_traces(cfg); });
  const PhaseOutputs ph =
      with_stage("phase extraction", [&] { return phase_pipeline(model_signal(cfg, traces)); });
  const VelocityTimeMap map =
      with_stage("velocity maps", [&] { return make_map(cfg, model_signal(cfg, traces)); });
  const SliceOutputs sl =
      with_stage("slice analysis", [&] { return slice_pipeline(map, cfg.slice_velocity_mps); });
  const EstimateReport rep =
      with_stage("rate estimation", [&] { return make_report(cfg, traces, ph, sl); });
  with_stage("estimate output", [&] {
    emit_text(bundle, cfg.output_dir, "estimates", "estimates.txt", render_report(cfg, rep));
  });
  return bundle;
}

OutputBundle run_scenario(const ScenarioConfig& cfg) {
  OutputBundle bundle = begin_bundle(cfg);
  const Traces traces = with_stage("synthesis", [&] { return make_traces(cfg); });
  const BasebandSignal signal =
      with_stage("baseband modelling", [&] { return model_signal(cfg, traces); });
  const PhaseOutputs ph = with_stage("phase extraction", [&] { return phase_pipeline(signal); });
  VelocityTimeMap resp_map, heart_map, combined_map;
  with_stage("velocity maps", [&] {
    resp_map = make_map(cfg, isolated_signal(traces.rb, cfg.radar));
    heart_map = make_map(cfg, isolated_signal(traces.rh, cfg.radar));
    combined_map = make_map(cfg, signal);
  });
  const SliceOutputs sl = with_stage(
      "slice analysis", [&] { return slice_pipeline(combined_map, cfg.slice_velocity_mps); });
  const EstimateReport rep =
      with_stage("rate estimation", [&] { return make_report(cfg, traces, ph, sl); });
  with_stage("output", [&] {
    emit_traces(bundle, cfg, traces);
    emit_map(bundle, cfg.output_dir, "map_respiration", "map_respiration", resp_map);
    emit_map(bundle, cfg.output_dir, "map_heartbeat", "map_heartbeat", heart_map);
    emit_map(bundle, cfg.output_dir, "map_combined", "map_combined", combined_map);
    emit_phase(bundle, cfg, ph);
    emit_slices(bundle, cfg, combined_map, sl);
    emit_text(bundle, cfg.output_dir, "estimates", "estimates.txt", render_report(cfg, rep));
    const fs::path params = fs::path(cfg.output_dir) / "run_parameters.cfg";
    save_config(cfg, params);
    bundle.manifest.push_back(ManifestEntry{"run_parameters", params.string()});
    std::string manifest_text = "role,path\n";
    for (const ManifestEntry& entry : bundle.manifest)
      manifest_text += entry.role + "," + entry.path + "\n";
    const fs::path manifest_path = fs::path(cfg.output_dir) / "manifest.csv";
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw std::runtime_error(manifest_path.string() + ": cannot open for writing");
    out.write(manifest_text.data(), static_cast<std::streamsize>(manifest_text.size()));
    out.flush();
    if (!out) throw std::runtime_error(manifest_path.string() + ": write failed");
  });
  return bundle;
}

}  // namespace vitalradar
