#include "vitalradar/slice.hpp"

#include <cmath>
#include <string>

namespace vitalradar {

VelocitySlice extract_slice(const VelocityTimeMap& map, double requested_velocity_mps) {
  const Index k = map.velocity_axis.size();
  if (k < 1 || map.time_axis.size() < 2)
    throw std::invalid_argument("extract_slice: map needs at least one bin and two frames");
  const double half_bin = 0.5 * map.velocity_bin_width();
  const double lo = map.velocity_axis[0] - half_bin;
  const double hi = map.velocity_axis[k - 1] + half_bin;
  if (!(requested_velocity_mps >= lo && requested_velocity_mps <= hi))
    throw std::out_of_range("extract_slice: requested velocity " +
                            std::to_string(requested_velocity_mps) +
                            " m/s outside the map span [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "] m/s");
  Index best = 0;
  for (Index r = 1; r < k; ++r) {
    if (std::abs(map.velocity_axis[r] - requested_velocity_mps) <
        std::abs(map.velocity_axis[best] - requested_velocity_mps))
      best = r;
  }
  VelocitySlice slice;
  slice.values = (map.magnitude_db.row(best).array() / 20.0)
                     .unaryExpr([](double d) { return std::pow(10.0, d); }) -
                 kDbEpsilon;
  slice.values = slice.values.max(0.0);
  slice.slice_velocity_mps = map.velocity_axis[best];
  slice.requested_velocity_mps = requested_velocity_mps;
  slice.sample_rate_hz = map.frame_rate_hz();
  slice.compressed = false;
  return slice;
}

VelocitySlice log_compress(const VelocitySlice& slice) {
  if (slice.compressed) throw std::invalid_argument("log_compress: slice already compressed");
  VelocitySlice out = slice;
  out.values = slice.values.unaryExpr([](double v) { return db_from_magnitude(v); });
  out.compressed = true;
  return out;
}

Spectrum slice_spectrum(const VelocitySlice& slice) {
  if (slice.values.size() == 0) throw std::invalid_argument("slice_spectrum: empty slice");
  return spectrum_of_series(slice.values, slice.sample_rate_hz, /*remove_mean=*/true);
}

}  // namespace vitalradar
