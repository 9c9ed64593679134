#pragma once

#include <Eigen/Core>

#include "vitalradar/types.hpp"

namespace vitalradar {

enum class SpectrumReference { kAbsolute, kPeakNormalized };

/// One-sided magnitude spectrum in dB over a uniform frequency grid.
struct Spectrum {
  ArrayXd frequencies;   // Hz, ascending, uniformly spaced, starts at 0
  ArrayXd magnitude_db;  // 20*log10(|X| + epsilon), always finite
  SpectrumReference reference = SpectrumReference::kAbsolute;

  double bin_width() const {
    return frequencies.size() > 1 ? frequencies[1] - frequencies[0] : 0.0;
  }
};

/// Doppler magnitudes in dB over (velocity bin, time frame).
struct VelocityTimeMap {
  Eigen::MatrixXd magnitude_db;  // fft_length rows x frame columns
  ArrayXd velocity_axis;         // m/s, ascending; row 0 is the most negative bin
  ArrayXd time_axis;             // s, frame centers
  Index window_length = 0;       // samples
  Index fft_length = 0;          // bins

  double velocity_bin_width() const {
    return velocity_axis.size() > 1 ? velocity_axis[1] - velocity_axis[0] : 0.0;
  }
  /// Frame rate implied by the uniform time axis.
  double frame_rate_hz() const {
    const Index n = time_axis.size();
    return n > 1 ? (n - 1) / (time_axis[n - 1] - time_axis[0]) : 0.0;
  }
};

/// Analysis window. Hann is the pipeline default (keeps leakage from the
/// strong respiration component off the high-velocity bins); rectangular is
/// available for energy-conservation checks and tests.
enum class Window { kHann, kRectangular };

ArrayXd make_window(Window window, Index length);

/// Forward DFT with zero-padding: X[k] = sum_n x[n] exp(-j*2*pi*k*n/L).
ArrayXcd dft(const Eigen::Ref<const ArrayXcd>& x, Index fft_length);

/// One-sided spectrum of a real series (optionally mean-removed), frequencies
/// 0..fs/2, dB magnitude.
Spectrum spectrum_of_series(const Eigen::Ref<const ArrayXd>& x, double sample_rate_hz,
                            bool remove_mean = true);

/// Copy of a spectrum with the peak shifted to 0 dB.
Spectrum peak_normalized(const Spectrum& spec);

/// Windowed short-time transform. Column m holds the DFT of
/// window .* signal[m*hop .. m*hop+window_length-1] zero-padded to fft_length.
/// Frames are independent; they are assembled in frame order.
Eigen::MatrixXcd stft(const BasebandSignal& signal, Index window_length, Index hop,
                      Index fft_length, Window window = Window::kHann);

/// Doppler equation v = -(lambda/2) * f_D.
double doppler_to_velocity(double doppler_hz, double wavelength_m);

/// STFT magnitudes on a centered Doppler axis mapped to radial velocity and
/// reordered so the velocity axis ascends. Requires an even fft_length.
VelocityTimeMap velocity_time_map(const BasebandSignal& signal, const RadarConfig& config,
                                  Index window_length, Index hop, Index fft_length,
                                  Window window = Window::kHann);

}  // namespace vitalradar
