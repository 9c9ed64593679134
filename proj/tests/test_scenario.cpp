#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli_main.hpp"
#include "vitalradar/scenario.hpp"

using namespace vitalradar;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("vitalradar_test_" + name);
  fs::remove_all(p);
  return p;
}

fs::path write_temp_config(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("vitalradar_cfg_" + name);
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::map<std::string, std::string> parse_kv(const fs::path& p) {
  std::map<std::string, std::string> kv;
  std::ifstream in(p);
  REQUIRE(in);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
      return s;
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

// small but fully valid setup so unit runs stay fast
ScenarioConfig reduced_config(const std::string& dir_name) {
  ScenarioConfig cfg;
  cfg.radar.duration_s = 10.0;
  cfg.stft.fft_length = 64;
  cfg.output_dir = temp_dir(dir_name).string();
  return cfg;
}

int run_cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"vitalradar"};
  argv.insert(argv.end(), args.begin(), args.end());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("defaults reproduce the reference simulation settings") {
  const ScenarioConfig cfg;
  CHECK(cfg.radar.carrier_frequency_hz == 60e9);
  CHECK(cfg.radar.sample_rate_hz == 120.0);
  CHECK(cfg.radar.duration_s == 60.0);
  CHECK(cfg.radar.standoff_range_m == 0.0);
  CHECK(cfg.vitals.respiration_rate_hz == 0.2);
  CHECK(cfg.vitals.heart_rate_hz == 1.1);
  CHECK(cfg.vitals.respiration_amplitude_m == 0.01);
  CHECK(cfg.vitals.heart_amplitude_m == 1e-4);
  CHECK(cfg.vitals.hr_ratio_db == -10.0);
  CHECK(cfg.model == ScattererModel::kTwoPoint);
  CHECK(cfg.stft.window_seconds == 0.1);
  CHECK(cfg.stft.hop_samples == 1);
  CHECK(cfg.stft.fft_length == 256);
  CHECK(cfg.slice_velocity_mps == 0.147);
  CHECK(cfg.radar.wavelength() == doctest::Approx(4.9965e-3).epsilon(1e-4));
  CHECK(cfg.stft.window_samples(cfg.radar.sample_rate_hz) == 12);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("an empty config file yields the defaults") {
  const fs::path p = write_temp_config("empty.cfg", "");
  const ScenarioConfig cfg = load_config(p);
  const ScenarioConfig defaults;
  CHECK(cfg.radar.carrier_frequency_hz == defaults.radar.carrier_frequency_hz);
  CHECK(cfg.vitals.respiration_rate_hz == defaults.vitals.respiration_rate_hz);
  CHECK(cfg.stft.fft_length == defaults.stft.fft_length);
  CHECK(cfg.model == defaults.model);
  CHECK(cfg.output_dir == defaults.output_dir);
  fs::remove(p);
}

TEST_CASE("config files accept comments, blanks and overrides") {
  const fs::path p = write_temp_config("full.cfg",
                                       "# scenario\n"
                                       "\n"
                                       "heart_rate_hz = 1.3   # beats\n"
                                       "model = single_point\n"
                                       "fft_length = 128\n"
                                       "output_dir = some/dir\n");
  const ScenarioConfig cfg = load_config(p);
  CHECK(cfg.vitals.heart_rate_hz == 1.3);
  CHECK(cfg.model == ScattererModel::kSinglePoint);
  CHECK(cfg.stft.fft_length == 128);
  CHECK(cfg.output_dir == "some/dir");
  fs::remove(p);
}

TEST_CASE("unknown keys are rejected with their line number") {
  const fs::path p = write_temp_config("unknown.cfg", "sample_rate_hz = 120\nfoo = 1\n");
  try {
    load_config(p);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find(":2") != std::string::npos);
    CHECK(msg.find("unknown key 'foo'") != std::string::npos);
  }
  fs::remove(p);
}

TEST_CASE("malformed lines are rejected") {
  const fs::path p = write_temp_config("broken.cfg", "just words\n");
  CHECK_THROWS_AS(load_config(p), ConfigError);
  fs::remove(p);
  const fs::path q = write_temp_config("notnum.cfg", "sample_rate_hz = fast\n");
  CHECK_THROWS_AS(load_config(q), ConfigError);
  fs::remove(q);
  CHECK_THROWS_AS(load_config("/nonexistent_vitalradar.cfg"), ConfigError);
}

TEST_CASE("constraint violations name the field") {
  ScenarioConfig cfg;
  cfg.stft.fft_length = 100;
  try {
    cfg.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("power of two") != std::string::npos);
  }

  cfg = ScenarioConfig{};
  cfg.vitals.hr_ratio_db = 3.0;  // stronger heart reflection: allowed
  CHECK_NOTHROW(cfg.validate());

  cfg = ScenarioConfig{};
  cfg.radar.duration_s = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("apply_override covers every key") {
  ScenarioConfig cfg;
  for (const std::string& key : config_keys()) {
    if (key == "model")
      apply_override(cfg, key, "single_point");
    else if (key == "output_dir")
      apply_override(cfg, key, "dir");
    else if (key == "hop_samples" || key == "fft_length" || key == "k_max")
      apply_override(cfg, key, "4");
    else
      apply_override(cfg, key, "0.25");
  }
  CHECK(cfg.radar.carrier_frequency_hz == 0.25);
  CHECK(cfg.estimation.k_max == 4);
  CHECK_THROWS_AS(apply_override(cfg, "bogus", "1"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "model", "three_point"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "fft_length", "many"), ConfigError);
}

TEST_CASE("resolved config text reloads to the same configuration") {
  ScenarioConfig cfg = reduced_config("cfg_echo");
  cfg.vitals.heart_rate_hz = 1.25;
  cfg.model = ScattererModel::kSinglePoint;
  const fs::path p = write_temp_config("echo.cfg", config_text(cfg));
  const ScenarioConfig back = load_config(p);
  CHECK(back.vitals.heart_rate_hz == cfg.vitals.heart_rate_hz);
  CHECK(back.model == cfg.model);
  CHECK(back.radar.duration_s == cfg.radar.duration_s);
  CHECK(back.stft.fft_length == cfg.stft.fft_length);
  CHECK(back.output_dir == cfg.output_dir);
  fs::remove(p);
}

TEST_CASE("a rejected scenario writes nothing") {
  ScenarioConfig cfg = reduced_config("rejected");
  cfg.radar.duration_s = 0.0;
  CHECK_THROWS_AS(run_scenario(cfg), ConfigError);
  CHECK_FALSE(fs::exists(cfg.output_dir));
}

TEST_CASE("run_scenario produces a complete, reproducible bundle") {
  const ScenarioConfig cfg = reduced_config("bundle_a");
  const OutputBundle bundle = run_scenario(cfg);

  // manifest: unique roles, every file present and non-empty
  std::set<std::string> roles;
  for (const ManifestEntry& entry : bundle.manifest) {
    CHECK(roles.insert(entry.role).second);
    CHECK(fs::exists(entry.path));
    CHECK(fs::file_size(entry.path) > 0);
  }
  for (const char* role :
       {"respiration_trace", "heartbeat_trace", "combined_trace", "map_respiration_csv",
        "map_respiration_pgm", "map_heartbeat_csv", "map_heartbeat_pgm", "map_combined_csv",
        "map_combined_pgm", "unwrapped_phase", "phase_derivative", "phase_spectrum",
        "slice_linear", "slice_log", "slice_spectrum_linear", "slice_spectrum_log",
        "estimates", "run_parameters"})
    CHECK(roles.count(role) == 1);
  CHECK(fs::exists(fs::path(cfg.output_dir) / "manifest.csv"));

  // the parameter echo reloads as a valid, identical config
  const ScenarioConfig echoed = load_config(fs::path(cfg.output_dir) / "run_parameters.cfg");
  CHECK(echoed.radar.duration_s == cfg.radar.duration_s);
  CHECK(echoed.stft.fft_length == cfg.stft.fft_length);

  // byte-identical rerun
  ScenarioConfig cfg_b = cfg;
  cfg_b.output_dir = temp_dir("bundle_b").string();
  const OutputBundle second = run_scenario(cfg_b);
  REQUIRE(bundle.manifest.size() == second.manifest.size());
  for (std::size_t i = 0; i < bundle.manifest.size(); ++i) {
    const std::string& a = bundle.manifest[i].path;
    const std::string& b = second.manifest[i].path;
    if (a.size() >= 4 && a.compare(a.size() - 4, 4, ".csv") == 0)
      CHECK(read_all(a) == read_all(b));
  }
  fs::remove_all(cfg.output_dir);
  fs::remove_all(cfg_b.output_dir);
}

TEST_CASE("estimates on both scatterer models, full-length run") {
  ScenarioConfig sp;  // the estimator needs the 60 s resolution
  sp.model = ScattererModel::kSinglePoint;
  sp.output_dir = temp_dir("estimate_sp").string();
  run_estimate(sp);
  const auto sp_kv = parse_kv(fs::path(sp.output_dir) / "estimates.txt");
  CHECK(sp_kv.at("model") == "single_point");
  CHECK(sp_kv.at("phase_spectrum.respiration_status") == "ok");
  CHECK(std::abs(std::stod(sp_kv.at("phase_spectrum.respiration_hz")) - 0.2) <= 0.02);
  CHECK(sp_kv.at("phase_spectrum.heart_status") == "ok");
  CHECK(std::abs(std::stod(sp_kv.at("phase_spectrum.heart_hz")) - 1.1) <= 0.02);

  ScenarioConfig tp;
  tp.output_dir = temp_dir("estimate_tp").string();
  run_estimate(tp);
  const auto tp_kv = parse_kv(fs::path(tp.output_dir) / "estimates.txt");
  CHECK(tp_kv.at("model") == "two_point");
  CHECK(std::abs(std::stod(tp_kv.at("phase_spectrum.respiration_hz")) - 0.2) <= 0.02);
  CHECK(tp_kv.at("slice_spectrum.heart_status") == "ok");
  CHECK(std::abs(std::stod(tp_kv.at("slice_spectrum.heart_hz")) - 1.1) <= 0.02);
  CHECK(std::stod(tp_kv.at("slice.heart_score_log_compressed")) >
        std::stod(tp_kv.at("slice.heart_score_uncompressed")));
  CHECK(std::stod(tp_kv.at("phase_spectrum.heart_suppression_db_vs_single_point")) >= 6.0);

  // the two-point phase spectrum carries far less heart-band power than the
  // single-point one under identical processing
  if (tp_kv.count("phase_spectrum.heart_score") != 0) {
    CHECK(std::stod(tp_kv.at("phase_spectrum.heart_score")) <
          std::stod(sp_kv.at("phase_spectrum.heart_score")));
  }
  fs::remove_all(sp.output_dir);
  fs::remove_all(tp.output_dir);
}

TEST_CASE("cli exit codes: 0 success, 1 config error, 2 pipeline error") {
  const fs::path ok_dir = temp_dir("cli_ok");
  CHECK(run_cli({"synth", "--duration_s", "5", "--output_dir", ok_dir.c_str()}) == 0);
  CHECK(fs::exists(ok_dir / "respiration_trace.csv"));
  fs::remove_all(ok_dir);

  CHECK(run_cli({"scenario", "--duration_s", "0"}) == 1);
  CHECK(run_cli({"scenario", "--fft_length", "100"}) == 1);
  CHECK(run_cli({"scenario", "--no_such_flag", "1"}) == 1);
  CHECK(run_cli({"estimate", "--config", "/nonexistent_vitalradar.cfg"}) == 1);

  const fs::path bad_dir = temp_dir("cli_pipe");
  // a velocity far outside the map span fails in the slice stage
  CHECK(run_cli({"slice", "--duration_s", "5", "--slice_velocity_mps", "10",
                 "--output_dir", bad_dir.c_str()}) == 2);
  fs::remove_all(bad_dir);
}

TEST_CASE("cli subcommands write their advertised outputs") {
  const fs::path dir = temp_dir("cli_sub");
  CHECK(run_cli({"phase", "--duration_s", "10", "--fft_length", "64", "--output_dir",
                 dir.c_str()}) == 0);
  CHECK(fs::exists(dir / "unwrapped_phase.csv"));
  CHECK(fs::exists(dir / "phase_derivative.csv"));
  CHECK(fs::exists(dir / "phase_spectrum.csv"));
  CHECK(run_cli({"map", "--duration_s", "10", "--fft_length", "64", "--output_dir",
                 dir.c_str()}) == 0);
  CHECK(fs::exists(dir / "map_combined.pgm"));
  CHECK(run_cli({"slice", "--duration_s", "10", "--fft_length", "64", "--output_dir",
                 dir.c_str()}) == 0);
  CHECK(fs::exists(dir / "slice_spectrum_log.csv"));
  fs::remove_all(dir);
}
