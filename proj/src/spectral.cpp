#include "vitalradar/spectral.hpp"

#include <cmath>
#include <complex>
#include <utility>

#include "vitalradar/fft.hpp"

namespace vitalradar {

ArrayXd make_window(Window window, Index length) {
  if (length < 1) throw std::invalid_argument("make_window: length must be >= 1");
  switch (window) {
    case Window::kRectangular:
      return ArrayXd::Ones(length);
    case Window::kHann: {
      ArrayXd w(length);
      for (Index i = 0; i < length; ++i)
        w[i] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) / length));
      return w;
    }
  }
  throw std::invalid_argument("make_window: unknown window");
}

ArrayXcd dft(const Eigen::Ref<const ArrayXcd>& x, Index fft_length) {
  if (fft_length < 1) throw std::invalid_argument("dft: fft_length must be >= 1");
  if (fft_length < x.size())
    throw std::invalid_argument("dft: fft_length smaller than input length");
  fft::ComplexArray<double> padded = fft::ComplexArray<double>::Zero(fft_length);
  padded.head(x.size()) = x;
  return fft::forward(std::move(padded));
}

Spectrum spectrum_of_series(const Eigen::Ref<const ArrayXd>& x, double sample_rate_hz,
                            bool remove_mean) {
  const Index n = x.size();
  if (n < 2) throw std::invalid_argument("spectrum_of_series: need at least 2 samples");
  if (!(sample_rate_hz > 0.0))
    throw std::invalid_argument("spectrum_of_series: sample_rate_hz must be > 0");
  fft::ComplexArray<double> series(n);
  const double mean = remove_mean ? x.mean() : 0.0;
  for (Index i = 0; i < n; ++i) series[i] = std::complex<double>(x[i] - mean, 0.0);
  const fft::ComplexArray<double> transform = fft::forward(std::move(series));
  const Index bins = n / 2 + 1;
  const double df = sample_rate_hz / static_cast<double>(n);
  Spectrum spec;
  spec.frequencies.resize(bins);
  spec.magnitude_db.resize(bins);
  for (Index k = 0; k < bins; ++k) {
    spec.frequencies[k] = static_cast<double>(k) * df;
    spec.magnitude_db[k] = db_from_magnitude(std::abs(transform[k]));
  }
  return spec;
}

Spectrum peak_normalized(const Spectrum& spec) {
  if (spec.magnitude_db.size() == 0)
    throw std::invalid_argument("peak_normalized: empty spectrum");
  Spectrum out = spec;
  out.magnitude_db -= spec.magnitude_db.maxCoeff();
  out.reference = SpectrumReference::kPeakNormalized;
  return out;
}

Eigen::MatrixXcd stft(const BasebandSignal& signal, Index window_length, Index hop,
                      Index fft_length, Window window) {
  const Index n = signal.iq.size();
  if (window_length < 1) throw std::invalid_argument("stft: window_length must be >= 1");
  if (hop < 1) throw std::invalid_argument("stft: hop must be >= 1");
  if (window_length > fft_length)
    throw std::invalid_argument("stft: window_length exceeds fft_length");
  if (n < window_length)
    throw std::invalid_argument("stft: signal shorter than the analysis window");
  const ArrayXd w = make_window(window, window_length);
  const Index frames = (n - window_length) / hop + 1;
  Eigen::MatrixXcd out(fft_length, frames);
  if (fft::is_power_of_two(fft_length)) {
    fft::Radix2Plan<double> plan(fft_length);
    fft::ComplexArray<double> buffer(fft_length);
    for (Index m = 0; m < frames; ++m) {
      buffer.setZero();
      buffer.head(window_length) = signal.iq.segment(m * hop, window_length) * w;
      plan.forward(buffer);
      out.col(m) = buffer.matrix();
    }
  } else {
    for (Index m = 0; m < frames; ++m) {
      fft::ComplexArray<double> buffer = fft::ComplexArray<double>::Zero(fft_length);
      buffer.head(window_length) = signal.iq.segment(m * hop, window_length) * w;
      out.col(m) = fft::forward(std::move(buffer)).matrix();
    }
  }
  return out;
}

double doppler_to_velocity(double doppler_hz, double wavelength_m) {
  if (!(wavelength_m > 0.0))
    throw std::invalid_argument("doppler_to_velocity: wavelength must be > 0");
  return -0.5 * wavelength_m * doppler_hz;
}

VelocityTimeMap velocity_time_map(const BasebandSignal& signal, const RadarConfig& config,
                                  Index window_length, Index hop, Index fft_length,
                                  Window window) {
  config.validate();
  if (!(signal.sample_rate_hz > 0.0))
    throw std::invalid_argument("velocity_time_map: signal sample rate must be > 0");
  if (fft_length < 2 || fft_length % 2 != 0)
    throw std::invalid_argument("velocity_time_map: fft_length must be even and >= 2");
  const Eigen::MatrixXcd frames = stft(signal, window_length, hop, fft_length, window);
  const Index k = fft_length;
  const Index n_frames = frames.cols();
  const double wavelength = config.wavelength();
  const double bin_hz = signal.sample_rate_hz / static_cast<double>(k);

  VelocityTimeMap map;
  map.window_length = window_length;
  map.fft_length = k;
  map.velocity_axis.resize(k);
  map.time_axis.resize(n_frames);
  map.magnitude_db.resize(k, n_frames);
  // Row r in ascending velocity order corresponds to centered Doppler
  // frequency (k/2 - 1 - r) * bin_hz, which lives in DFT bin
  // (3k/2 - 1 - r) mod k. The sign of the Doppler equation flips the
  // ordering: the most positive Doppler bins become the most negative
  // velocities.
  for (Index r = 0; r < k; ++r) {
    const double doppler = static_cast<double>(k / 2 - 1 - r) * bin_hz;
    map.velocity_axis[r] = doppler_to_velocity(doppler, wavelength);
    const Index src = (3 * k / 2 - 1 - r) % k;
    for (Index m = 0; m < n_frames; ++m)
      map.magnitude_db(r, m) = db_from_magnitude(std::abs(frames(src, m)));
  }
  for (Index m = 0; m < n_frames; ++m)
    map.time_axis[m] = (static_cast<double>(m * hop) + window_length / 2.0) /
                       signal.sample_rate_hz;
  return map;
}

}  // namespace vitalradar
