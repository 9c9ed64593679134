#include "vitalradar/signal_model.hpp"

#include <cmath>
#include <complex>

namespace vitalradar {

namespace {

void check_same_grid(const MotionTrace& rb, const MotionTrace& rh) {
  if (rb.samples.size() != rh.samples.size())
    throw std::invalid_argument("motion traces differ in length");
  if (rb.sample_rate_hz != rh.sample_rate_hz)
    throw std::invalid_argument("motion traces differ in sample rate");
}

}  // namespace

ArrayXd integrate_rate(double rate_hz, double sample_rate_hz, Index n_samples) {
  if (n_samples < 1) throw std::invalid_argument("integrate_rate: n_samples must be >= 1");
  if (!(sample_rate_hz > 0.0))
    throw std::invalid_argument("integrate_rate: sample_rate_hz must be > 0");
  if (!(rate_hz >= 0.0)) throw std::invalid_argument("integrate_rate: rate must be >= 0");
  ArrayXd cycles(n_samples);
  for (Index i = 0; i < n_samples; ++i)
    cycles[i] = rate_hz * (static_cast<double>(i) / sample_rate_hz);
  return cycles;
}

ArrayXd integrate_rate(const Eigen::Ref<const ArrayXd>& rate_hz, double sample_rate_hz) {
  const Index n = rate_hz.size();
  if (n < 1) throw std::invalid_argument("integrate_rate: rate sequence is empty");
  if (!(sample_rate_hz > 0.0))
    throw std::invalid_argument("integrate_rate: sample_rate_hz must be > 0");
  if (!(rate_hz >= 0.0).all())
    throw std::invalid_argument("integrate_rate: rate must be >= 0 everywhere");
  ArrayXd cycles(n);
  cycles[0] = 0.0;
  for (Index i = 1; i < n; ++i)
    cycles[i] = cycles[i - 1] + 0.5 * (rate_hz[i - 1] + rate_hz[i]) / sample_rate_hz;
  return cycles;
}

MotionTrace synth_respiration(const VitalSignParams& params, const RadarConfig& config) {
  params.validate();
  config.validate();
  const ArrayXd cycles =
      integrate_rate(params.respiration_rate_hz, config.sample_rate_hz, config.sample_count());
  // amplitude * (5 - 2^(2 + cos(2*pi*c))) / 3, bounded by [-amplitude, amplitude]
  const ArrayXd shape =
      (5.0 - (2.0 + (kTwoPi * cycles).cos()).unaryExpr([](double e) { return std::exp2(e); })) /
      3.0;
  MotionTrace trace;
  trace.samples = params.respiration_amplitude_m * shape;
  trace.sample_rate_hz = config.sample_rate_hz;
  trace.label = MotionLabel::kRespiration;
  return trace;
}

MotionTrace synth_heartbeat(const VitalSignParams& params, const RadarConfig& config) {
  params.validate();
  config.validate();
  const ArrayXd cycles =
      integrate_rate(params.heart_rate_hz, config.sample_rate_hz, config.sample_count());
  // floor-based modulo keeps the phase argument in [0, 1) for any sign
  const ArrayXd m = (-cycles).unaryExpr([](double v) { return v - std::floor(v); });
  MotionTrace trace;
  trace.samples = params.heart_amplitude_m * (kTwoPi * m.pow(10.0)).sin();
  trace.sample_rate_hz = config.sample_rate_hz;
  trace.label = MotionLabel::kHeartbeat;
  return trace;
}

MotionTrace combined_trace(const MotionTrace& rb, const MotionTrace& rh) {
  check_same_grid(rb, rh);
  return MotionTrace{rb.samples + rh.samples, rb.sample_rate_hz, MotionLabel::kCombined};
}

BasebandSignal single_point_signal(const MotionTrace& rb, const MotionTrace& rh,
                                   const ScattererMagnitudes& mags, const RadarConfig& config) {
  check_same_grid(rb, rh);
  mags.validate();
  config.validate();
  const double k = config.wavenumber();
  const Index n = rb.samples.size();
  ArrayXcd iq(n);
  for (Index i = 0; i < n; ++i)
    iq[i] = std::polar(mags.x0, k * (rb.samples[i] + rh.samples[i]));
  return BasebandSignal{std::move(iq), rb.sample_rate_hz, ScattererModel::kSinglePoint};
}

BasebandSignal two_point_signal(const MotionTrace& rb, const MotionTrace& rh,
                                const ScattererMagnitudes& mags, const RadarConfig& config) {
  check_same_grid(rb, rh);
  mags.validate();
  config.validate();
  if (!(mags.xr + mags.xh > 0.0))
    throw std::invalid_argument("two_point_signal: xr + xh must be > 0");
  const double k = config.wavenumber();
  const Index n = rb.samples.size();
  ArrayXcd iq(n);
  for (Index i = 0; i < n; ++i)
    iq[i] = std::polar(mags.xr, k * rb.samples[i]) + std::polar(mags.xh, k * rh.samples[i]);
  return BasebandSignal{std::move(iq), rb.sample_rate_hz, ScattererModel::kTwoPoint};
}

}  // namespace vitalradar
