#pragma once

#include <Eigen/Core>

#include "vitalradar/types.hpp"

namespace vitalradar {

/// Cumulative rate integral in cycles for a constant rate, evaluated in
/// closed form c[n] = rate * n / sample_rate (no summation error).
ArrayXd integrate_rate(double rate_hz, double sample_rate_hz, Index n_samples);

/// Cumulative rate integral in cycles for a sampled rate, trapezoidal rule
/// with c[0] = 0.
ArrayXd integrate_rate(const Eigen::Ref<const ArrayXd>& rate_hz, double sample_rate_hz);

/// Respiration displacement: bell-shaped periodic trace bounded by the
/// respiration amplitude, starting at its minimum (-amplitude at t = 0).
MotionTrace synth_respiration(const VitalSignParams& params, const RadarConfig& config);

/// Heartbeat displacement: impulse-like periodic trace bounded by the heart
/// amplitude, zero at t = 0, one impulse pair per heart period.
MotionTrace synth_heartbeat(const VitalSignParams& params, const RadarConfig& config);

/// Sum of two traces on the same grid, labelled Combined.
MotionTrace combined_trace(const MotionTrace& rb, const MotionTrace& rh);

/// Single-scatterer baseband reflection:
/// iq[n] = x0 * exp(j * (4*pi/lambda) * (rb[n] + rh[n])).
BasebandSignal single_point_signal(const MotionTrace& rb, const MotionTrace& rh,
                                   const ScattererMagnitudes& mags, const RadarConfig& config);

/// Two-scatterer baseband reflection:
/// iq[n] = xr * exp(j*4*pi*rb[n]/lambda) + xh * exp(j*4*pi*rh[n]/lambda).
BasebandSignal two_point_signal(const MotionTrace& rb, const MotionTrace& rh,
                                const ScattererMagnitudes& mags, const RadarConfig& config);

}  // namespace vitalradar
