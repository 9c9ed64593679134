#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace vitalradar {

using Eigen::ArrayXcd;
using Eigen::ArrayXd;
using Eigen::Index;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Shared floor for every magnitude -> dB conversion. Map cells, slices and
// spectra all use the same epsilon so their dB values stay interchangeable.
inline constexpr double kDbEpsilon = 1e-12;

inline double db_from_magnitude(double magnitude) {
  return 20.0 * std::log10(magnitude + kDbEpsilon);
}

/// Thrown when a sample has zero magnitude and therefore no defined phase.
class DegenerateSignalError : public std::runtime_error {
 public:
  explicit DegenerateSignalError(Index index)
      : std::runtime_error("zero-magnitude sample at index " + std::to_string(index)),
        index_(index) {}
  Index index() const { return index_; }

 private:
  Index index_;
};

/// Radar front-end description. The standoff range only contributes a
/// constant phase offset and is excluded from synthesized signals.
struct RadarConfig {
  double carrier_frequency_hz = 60e9;
  double sample_rate_hz = 120.0;
  double duration_s = 60.0;
  double standoff_range_m = 0.0;

  double wavelength() const { return kSpeedOfLight / carrier_frequency_hz; }
  double wavenumber() const { return 2.0 * kTwoPi / wavelength(); }  // 4*pi/lambda
  Index sample_count() const {
    return static_cast<Index>(std::llround(sample_rate_hz * duration_s));
  }
  void validate() const;
};

/// Physiological motion parameters. hr_ratio_db is the magnitude of the
/// heart-associated scatterer relative to the respiration-associated one,
/// expressed in amplitude dB; negative values (weaker heart reflection) are
/// the physically motivated case but positive values are accepted.
struct VitalSignParams {
  double respiration_rate_hz = 0.2;
  double heart_rate_hz = 1.1;
  double respiration_amplitude_m = 0.01;
  double heart_amplitude_m = 1e-4;
  double hr_ratio_db = -10.0;

  void validate() const;
};

/// Effective reflection magnitudes for the one- and two-scatterer models.
struct ScattererMagnitudes {
  double x0 = 1.0;  // single-point model
  double xr = 1.0;  // respiration scatterer
  double xh = 1.0;  // heart scatterer

  /// Normalization used throughout: xr = x0 = 1, xh = 10^(hr_ratio_db/20).
  static ScattererMagnitudes from_params(const VitalSignParams& params);
  void validate() const;
};

enum class MotionLabel { kRespiration, kHeartbeat, kCombined };

/// Uniformly sampled displacement series in meters.
struct MotionTrace {
  ArrayXd samples;
  double sample_rate_hz = 0.0;
  MotionLabel label = MotionLabel::kCombined;
};

enum class ScattererModel { kSinglePoint, kTwoPoint };

/// Uniformly sampled complex baseband reflection.
struct BasebandSignal {
  ArrayXcd iq;
  double sample_rate_hz = 0.0;
  ScattererModel model = ScattererModel::kSinglePoint;
};

}  // namespace vitalradar
