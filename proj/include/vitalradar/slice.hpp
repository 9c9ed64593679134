#pragma once

#include "vitalradar/spectral.hpp"
#include "vitalradar/types.hpp"

namespace vitalradar {

/// Time series of spectrogram magnitude at one fixed velocity bin. Values are
/// linear magnitudes until log_compress() turns them into dB.
struct VelocitySlice {
  ArrayXd values;
  double slice_velocity_mps = 0.0;      // actual bin center used
  double requested_velocity_mps = 0.0;  // what the caller asked for
  double sample_rate_hz = 0.0;          // frames per second
  bool compressed = false;
};

/// Nearest-bin row of the map as a linear-magnitude time series (the map's dB
/// floor is inverted). Requests outside the velocity span raise
/// std::out_of_range naming the valid span.
VelocitySlice extract_slice(const VelocityTimeMap& map, double requested_velocity_mps);

/// 20*log10(value + epsilon) with the shared epsilon; compressing twice is a
/// contract error.
VelocitySlice log_compress(const VelocitySlice& slice);

/// Mean-removed one-sided spectrum of the slice values.
Spectrum slice_spectrum(const VelocitySlice& slice);

}  // namespace vitalradar
