#pragma once

#include <optional>
#include <vector>

#include "vitalradar/spectral.hpp"
#include "vitalradar/types.hpp"

namespace vitalradar {

struct FrequencyBand {
  double low_hz = 0.0;
  double high_hz = 0.0;
};

struct Peak {
  double frequency_hz = 0.0;
  double magnitude_db = 0.0;
};

/// A candidate fundamental with the spectral bins matched to its harmonics
/// and their summed linear power.
struct HarmonicGroup {
  double fundamental_hz = 0.0;
  int harmonic_count = 0;
  double score = 0.0;  // sum of max linear power per harmonic window
  std::vector<Index> member_bins;
};

enum class SpectrumSource { kPhaseSpectrum, kSliceSpectrum };

struct BandEstimate {
  double frequency_hz = 0.0;
  HarmonicGroup group;
};

struct EstimationParams {
  FrequencyBand respiration_band{0.08, 0.6};  // Hz, physiological
  FrequencyBand heart_band{0.7, 3.0};         // Hz, physiological
  int k_max = 4;                              // harmonics per group
  double tolerance_bins = 1.0;                // harmonic window half-width, in bins
  double mask_width_hz = 0.05;                // around respiration multiples
  double min_prominence_db = 6.0;

  void validate() const;
};

/// Per-band outcome; a band with no peak above the prominence threshold (or
/// no fundamental rising above the spectral floor) is reported absent while
/// the other band may still carry an estimate.
struct RateEstimate {
  std::optional<BandEstimate> respiration;
  std::optional<BandEstimate> heart;
  SpectrumSource source = SpectrumSource::kPhaseSpectrum;
};

/// Local maxima inside the band whose prominence (height above the higher of
/// the two flanking minima) reaches the threshold, sorted by descending
/// magnitude then ascending frequency.
std::vector<Peak> find_peaks(const Spectrum& spec, double min_prominence_db,
                             const FrequencyBand& band);

/// Sum over k = 1..k_max of the max linear power within +-tolerance of
/// k*fundamental; harmonics beyond the spectrum span are skipped. A group
/// whose fundamental window does not clear the spectral floor (median dB)
/// by at least 1 dB scores zero.
HarmonicGroup harmonic_group_score(const Spectrum& spec, double fundamental_hz, int k_max,
                                   double tolerance_hz);

/// Respiration first (argmax of the harmonic-group score over band bins,
/// ties toward the lower fundamental), then its multiples are masked and the
/// heart fundamental is scored on the remaining bins.
RateEstimate estimate_rates(const Spectrum& spec, const EstimationParams& params,
                            SpectrumSource source);

}  // namespace vitalradar
