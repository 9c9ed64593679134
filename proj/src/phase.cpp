#include "vitalradar/phase.hpp"

#include <cmath>

namespace vitalradar {

double wrap_to_pi(double angle) {
  // ceil form lands exactly in (-pi, pi]
  return angle - kTwoPi * std::ceil((angle - kPi) / kTwoPi);
}

PhaseSeries extract_phase(const BasebandSignal& signal) {
  const Index n = signal.iq.size();
  if (n == 0) throw std::invalid_argument("extract_phase: empty signal");
  PhaseSeries phase;
  phase.values.resize(n);
  phase.sample_rate_hz = signal.sample_rate_hz;
  phase.unwrapped = false;
  for (Index i = 0; i < n; ++i) {
    const double re = signal.iq[i].real();
    const double im = signal.iq[i].imag();
    if (re == 0.0 && im == 0.0) throw DegenerateSignalError(i);
    double v = std::atan2(im, re);
    if (v == -kPi) v = kPi;  // branch-cut convention: (-pi, pi]
    phase.values[i] = v;
  }
  return phase;
}

PhaseSeries unwrap_phase(const PhaseSeries& phase) {
  if (phase.unwrapped) throw std::invalid_argument("unwrap_phase: input already unwrapped");
  PhaseSeries out;
  out.sample_rate_hz = phase.sample_rate_hz;
  out.unwrapped = true;
  const Index n = phase.values.size();
  out.values.resize(n);
  if (n == 0) return out;
  out.values[0] = phase.values[0];
  for (Index i = 1; i < n; ++i)
    out.values[i] = out.values[i - 1] + wrap_to_pi(phase.values[i] - phase.values[i - 1]);
  return out;
}

MotionTrace phase_to_displacement(const PhaseSeries& phase, const RadarConfig& config) {
  if (!phase.unwrapped)
    throw std::invalid_argument("phase_to_displacement: input must be unwrapped");
  if (phase.values.size() == 0)
    throw std::invalid_argument("phase_to_displacement: empty series");
  config.validate();
  const double scale = config.wavelength() / (2.0 * kTwoPi);
  MotionTrace trace;
  trace.samples = scale * (phase.values - phase.values[0]);
  trace.sample_rate_hz = phase.sample_rate_hz;
  trace.label = MotionLabel::kCombined;
  return trace;
}

ArrayXd phase_derivative(const PhaseSeries& phase) {
  if (!phase.unwrapped) throw std::invalid_argument("phase_derivative: input must be unwrapped");
  const Index n = phase.values.size();
  if (n < 2) throw std::invalid_argument("phase_derivative: need at least 2 samples");
  const double fs = phase.sample_rate_hz;
  const auto& v = phase.values;
  ArrayXd deriv(n);
  deriv[0] = (v[1] - v[0]) * fs;
  for (Index i = 1; i + 1 < n; ++i) deriv[i] = (v[i + 1] - v[i - 1]) * (0.5 * fs);
  deriv[n - 1] = (v[n - 1] - v[n - 2]) * fs;
  return deriv;
}

}  // namespace vitalradar
