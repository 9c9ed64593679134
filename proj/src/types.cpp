#include "vitalradar/types.hpp"

#include <cmath>

namespace vitalradar {

void RadarConfig::validate() const {
  if (!(carrier_frequency_hz > 0.0))
    throw std::invalid_argument("carrier_frequency_hz must be > 0");
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("sample_rate_hz must be > 0");
  if (!(duration_s > 0.0)) throw std::invalid_argument("duration_s must be > 0");
  if (!std::isfinite(standoff_range_m))
    throw std::invalid_argument("standoff_range_m must be finite");
  if (sample_count() < 2)
    throw std::invalid_argument("duration_s: recording must span at least 2 samples");
}

void VitalSignParams::validate() const {
  if (!(respiration_rate_hz > 0.0))
    throw std::invalid_argument("respiration_rate_hz must be > 0");
  if (!(heart_rate_hz > 0.0)) throw std::invalid_argument("heart_rate_hz must be > 0");
  if (!(respiration_amplitude_m >= 0.0))
    throw std::invalid_argument("respiration_amplitude_m must be >= 0");
  if (!(heart_amplitude_m >= 0.0))
    throw std::invalid_argument("heart_amplitude_m must be >= 0");
  if (!std::isfinite(hr_ratio_db)) throw std::invalid_argument("hr_ratio_db must be finite");
}

ScattererMagnitudes ScattererMagnitudes::from_params(const VitalSignParams& params) {
  ScattererMagnitudes mags;
  mags.x0 = 1.0;
  mags.xr = 1.0;
  mags.xh = std::pow(10.0, params.hr_ratio_db / 20.0);
  return mags;
}

void ScattererMagnitudes::validate() const {
  if (!(x0 >= 0.0) || !(xr >= 0.0) || !(xh >= 0.0))
    throw std::invalid_argument("scatterer magnitudes must be >= 0");
}

}  // namespace vitalradar
