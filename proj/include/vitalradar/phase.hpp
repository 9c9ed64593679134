#pragma once

#include <Eigen/Core>

#include "vitalradar/types.hpp"

namespace vitalradar {

/// Phase samples in radians. Wrapped values lie in (-pi, pi]; an unwrapped
/// series has successive differences within (-pi, pi].
struct PhaseSeries {
  ArrayXd values;
  double sample_rate_hz = 0.0;
  bool unwrapped = false;
};

/// Reduce an angle to (-pi, pi].
double wrap_to_pi(double angle);

/// Four-quadrant arctangent of the quadrature components. A zero-magnitude
/// sample has no defined phase and raises DegenerateSignalError with its
/// index; callers decide how to proceed.
PhaseSeries extract_phase(const BasebandSignal& signal);

/// Standard 1-D unwrapping: each successive difference is corrected by the
/// multiple of 2*pi that places it in (-pi, pi]; values[0] is unchanged.
PhaseSeries unwrap_phase(const PhaseSeries& phase);

/// Displacement relative to the first sample, d[n] = lambda/(4*pi) *
/// (values[n] - values[0]). Requires an unwrapped series.
MotionTrace phase_to_displacement(const PhaseSeries& phase, const RadarConfig& config);

/// Phase derivative in rad/s: central differences, one-sided endpoints.
ArrayXd phase_derivative(const PhaseSeries& phase);

}  // namespace vitalradar
