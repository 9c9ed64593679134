#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "test_helpers.hpp"
#include "vitalradar/rate_estimation.hpp"
#include "vitalradar/signal_model.hpp"
#include "vitalradar/slice.hpp"

using namespace vitalradar;

namespace {

VelocityTimeMap reference_two_point_map() {
  const RadarConfig radar;
  const VitalSignParams vitals;
  const MotionTrace rb = synth_respiration(vitals, radar);
  const MotionTrace rh = synth_heartbeat(vitals, radar);
  const BasebandSignal s =
      two_point_signal(rb, rh, ScattererMagnitudes::from_params(vitals), radar);
  return velocity_time_map(s, radar, 12, 1, 256);
}

VelocityTimeMap static_map() {
  const RadarConfig radar;
  const BasebandSignal s{ArrayXcd::Constant(64, std::complex<double>(1.0, 0.0)), 120.0,
                         ScattererModel::kSinglePoint};
  return velocity_time_map(s, radar, 16, 1, 16, Window::kRectangular);
}

}  // namespace

TEST_CASE("slice of a static map at zero velocity is a constant positive series") {
  const VelocitySlice slice = extract_slice(static_map(), 0.0);
  CHECK(slice.slice_velocity_mps == 0.0);
  CHECK(slice.requested_velocity_mps == 0.0);
  CHECK_FALSE(slice.compressed);
  CHECK(slice.values.minCoeff() > 0.0);
  CHECK((slice.values - slice.values[0]).abs().maxCoeff() < 1e-12);
}

TEST_CASE("slice selection lands on the nearest velocity bin") {
  const VelocityTimeMap map = reference_two_point_map();
  const double spacing = map.velocity_bin_width();
  CHECK(spacing == doctest::Approx(RadarConfig{}.wavelength() / 2.0 * 120.0 / 256.0));
  const VelocitySlice slice = extract_slice(map, 0.147);
  CHECK(std::abs(slice.slice_velocity_mps - 0.147) <= spacing / 2.0 + 1e-15);
  // grid arithmetic: the closest grid point to the request
  const double expected = std::round(0.147 / spacing) * spacing;
  CHECK(slice.slice_velocity_mps == doctest::Approx(expected).epsilon(1e-12));
  CHECK(slice.sample_rate_hz == doctest::Approx(120.0).epsilon(1e-9));
  CHECK(slice.values.minCoeff() >= 0.0);
}

TEST_CASE("slice requests outside the velocity span are range errors") {
  const VelocityTimeMap map = reference_two_point_map();
  CHECK_THROWS_AS(extract_slice(map, 10.0), std::out_of_range);
  try {
    extract_slice(map, 10.0);
  } catch (const std::out_of_range& e) {
    CHECK(std::string(e.what()).find("span") != std::string::npos);
  }
}

TEST_CASE("slice re-lookup at the reported bin center is idempotent") {
  const VelocityTimeMap map = reference_two_point_map();
  const VelocitySlice first = extract_slice(map, 0.147);
  const VelocitySlice again = extract_slice(map, first.slice_velocity_mps);
  CHECK(again.slice_velocity_mps == first.slice_velocity_mps);
  CHECK((again.values == first.values).all());
}

TEST_CASE("log compression basics") {
  VelocitySlice slice;
  slice.values = ArrayXd::Constant(4, 1.0);
  slice.sample_rate_hz = 120.0;
  const VelocitySlice compressed = log_compress(slice);
  CHECK(compressed.compressed);
  CHECK(std::abs(compressed.values[0]) < 1e-11);  // 0 dB up to the epsilon floor

  VelocitySlice decade;
  decade.values = ArrayXd(2);
  decade.values << 1.0, 10.0;
  decade.sample_rate_hz = 120.0;
  const VelocitySlice cd = log_compress(decade);
  CHECK(cd.values[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(cd.values[1] == doctest::Approx(20.0).epsilon(1e-9));

  CHECK_THROWS_AS(log_compress(cd), std::invalid_argument);
}

TEST_CASE("log compression is monotone") {
  auto gen = testing::rng(4001);
  std::uniform_real_distribution<double> dist(0.0, 5.0);
  for (int rep = 0; rep < 200; ++rep) {
    const double a = dist(gen);
    const double b = dist(gen);
    if (a == b) continue;
    const double ca = db_from_magnitude(a);
    const double cb = db_from_magnitude(b);
    CHECK(((a < b) == (ca < cb)));
  }
}

TEST_CASE("spectrum of a constant slice sits on the floor") {
  VelocitySlice slice;
  slice.values = ArrayXd::Constant(128, 0.7);
  slice.sample_rate_hz = 120.0;
  const Spectrum spec = slice_spectrum(slice);
  CHECK(spec.magnitude_db.maxCoeff() <= -200.0);
}

TEST_CASE("scaling a slice shifts the compressed values and not the spectrum shape") {
  const VelocityTimeMap map = reference_two_point_map();
  const VelocitySlice slice = extract_slice(map, 0.147);
  VelocitySlice scaled = slice;
  const double gain = 7.5;
  scaled.values *= gain;
  const double shift = 20.0 * std::log10(gain);
  const VelocitySlice c0 = log_compress(slice);
  const VelocitySlice c1 = log_compress(scaled);
  CHECK((c1.values - c0.values - shift).abs().maxCoeff() < 1e-6);

  // spectrum-shape part on a slice whose values sit well above the dB floor,
  // where the epsilon inside the log is truly negligible
  auto gen = testing::rng(4002);
  VelocitySlice bright;
  bright.values = 1.0 + 0.3 * testing::random_real(4096, gen);
  bright.sample_rate_hz = 120.0;
  VelocitySlice bright_scaled = bright;
  bright_scaled.values *= gain;
  const Spectrum s0 = slice_spectrum(log_compress(bright));
  const Spectrum s1 = slice_spectrum(log_compress(bright_scaled));
  // mean removal absorbs the constant shift: non-DC bins agree
  for (Index k = 1; k < s0.magnitude_db.size(); ++k)
    CHECK(std::abs(s1.magnitude_db[k] - s0.magnitude_db[k]) < 1e-6);
}

TEST_CASE("uncompressed slice spectrum is topped by a respiration harmonic") {
  const VelocityTimeMap map = reference_two_point_map();
  const VelocitySlice slice = extract_slice(map, 0.147);
  const Spectrum spec = slice_spectrum(slice);
  Index best = -1;
  for (Index k = 0; k < spec.frequencies.size(); ++k) {
    if (spec.frequencies[k] <= 0.05) continue;
    if (best < 0 || spec.magnitude_db[k] > spec.magnitude_db[best]) best = k;
  }
  REQUIRE(best >= 0);
  const double f = spec.frequencies[best];
  CHECK(std::abs(f - std::round(f / 0.2) * 0.2) <= spec.bin_width() + 1e-12);
}

TEST_CASE("log compression raises the heart harmonic content of the slice") {
  const VelocityTimeMap map = reference_two_point_map();
  const VelocitySlice slice = extract_slice(map, 0.147);
  const Spectrum lin = slice_spectrum(slice);
  const Spectrum logc = slice_spectrum(log_compress(slice));
  const double tol = lin.bin_width();
  const double score_lin = harmonic_group_score(lin, 1.1, 4, tol).score;
  const double score_log = harmonic_group_score(logc, 1.1, 4, tol).score;
  CHECK(score_log > score_lin);
}
