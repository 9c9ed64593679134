#include "vitalradar/rate_estimation.hpp"

#include <algorithm>
#include <cmath>

namespace vitalradar {

namespace {

constexpr double kFundamentalFloorMarginDb = 1.0;

double median(std::vector<double> values) {
  const std::size_t n = values.size();
  auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

double floor_db(const Spectrum& spec, const std::vector<char>* mask) {
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(spec.magnitude_db.size()));
  for (Index i = 0; i < spec.magnitude_db.size(); ++i) {
    if (mask == nullptr || !(*mask)[static_cast<std::size_t>(i)])
      vals.push_back(spec.magnitude_db[i]);
  }
  if (vals.empty()) return db_from_magnitude(0.0);
  return median(std::move(vals));
}

struct WindowMax {
  bool any = false;
  Index bin = -1;
  double db = 0.0;
};

WindowMax window_max(const Spectrum& spec, const std::vector<char>* mask, double center_hz,
                     double tolerance_hz) {
  const auto& f = spec.frequencies;
  const Index n = f.size();
  const double* begin = f.data();
  const double* lo = std::lower_bound(begin, begin + n, center_hz - tolerance_hz);
  WindowMax wm;
  for (const double* p = lo; p != begin + n && *p <= center_hz + tolerance_hz; ++p) {
    const Index i = static_cast<Index>(p - begin);
    if (std::abs(f[i] - center_hz) > tolerance_hz) continue;
    if (mask != nullptr && (*mask)[static_cast<std::size_t>(i)]) continue;
    if (!wm.any || spec.magnitude_db[i] > wm.db) {
      wm.any = true;
      wm.bin = i;
      wm.db = spec.magnitude_db[i];
    }
  }
  return wm;
}

HarmonicGroup scored_group(const Spectrum& spec, const std::vector<char>* mask,
                           double spectral_floor_db, double fundamental_hz, int k_max,
                           double tolerance_hz) {
  HarmonicGroup group;
  group.fundamental_hz = fundamental_hz;
  const double top_hz = spec.frequencies[spec.frequencies.size() - 1];
  for (int k = 1; k <= k_max; ++k) {
    const double fk = k * fundamental_hz;
    if (fk > top_hz + tolerance_hz) continue;  // beyond the spectrum span
    const WindowMax wm = window_max(spec, mask, fk, tolerance_hz);
    if (k == 1) {
      // a group without a detectable fundamental is no group at all
      if (!wm.any || wm.db < spectral_floor_db + kFundamentalFloorMarginDb) return group;
    }
    if (!wm.any) continue;
    group.score += std::pow(10.0, wm.db / 10.0);
    group.member_bins.push_back(wm.bin);
    ++group.harmonic_count;
  }
  return group;
}

std::vector<Index> band_bins(const Spectrum& spec, const FrequencyBand& band) {
  std::vector<Index> bins;
  for (Index i = 0; i < spec.frequencies.size(); ++i) {
    if (spec.frequencies[i] >= band.low_hz && spec.frequencies[i] <= band.high_hz)
      bins.push_back(i);
  }
  return bins;
}

// argmax of the group score over candidate bins; strict comparison keeps the
// lowest fundamental on ties
std::optional<BandEstimate> best_group(const Spectrum& spec, const std::vector<char>* mask,
                                       double spectral_floor_db, const FrequencyBand& band,
                                       int k_max, double tolerance_hz) {
  std::optional<BandEstimate> best;
  for (Index i : band_bins(spec, band)) {
    HarmonicGroup group =
        scored_group(spec, mask, spectral_floor_db, spec.frequencies[i], k_max, tolerance_hz);
    if (group.score <= 0.0) continue;
    if (!best || group.score > best->group.score)
      best = BandEstimate{spec.frequencies[i], std::move(group)};
  }
  return best;
}

}  // namespace

void EstimationParams::validate() const {
  if (!(respiration_band.low_hz > 0.0) ||
      !(respiration_band.high_hz > respiration_band.low_hz))
    throw std::invalid_argument("respiration_band: need 0 < low < high");
  if (!(heart_band.low_hz > 0.0) || !(heart_band.high_hz > heart_band.low_hz))
    throw std::invalid_argument("heart_band: need 0 < low < high");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (!(tolerance_bins > 0.0)) throw std::invalid_argument("tolerance_bins must be > 0");
  if (!(mask_width_hz >= 0.0)) throw std::invalid_argument("mask_width_hz must be >= 0");
  if (!std::isfinite(min_prominence_db))
    throw std::invalid_argument("min_prominence_db must be finite");
}

std::vector<Peak> find_peaks(const Spectrum& spec, double min_prominence_db,
                             const FrequencyBand& band) {
  const auto& f = spec.frequencies;
  const auto& mag = spec.magnitude_db;
  const Index n = f.size();
  if (n < 3) throw std::invalid_argument("find_peaks: spectrum too short");
  if (!(band.low_hz < band.high_hz)) throw std::invalid_argument("find_peaks: empty band");
  if (band.low_hz < f[0] || band.high_hz > f[n - 1])
    throw std::invalid_argument("find_peaks: band exceeds the spectrum span");

  std::vector<Peak> peaks;
  for (Index i = 1; i + 1 < n; ++i) {
    if (f[i] < band.low_hz || f[i] > band.high_hz) continue;
    if (!(mag[i] > mag[i - 1] && mag[i] > mag[i + 1])) continue;
    // nearest flanking minima: walk down each slope until it turns
    Index l = i;
    while (l > 0 && mag[l - 1] < mag[l]) --l;
    Index r = i;
    while (r + 1 < n && mag[r + 1] < mag[r]) ++r;
    const double prominence = mag[i] - std::max(mag[l], mag[r]);
    if (prominence >= min_prominence_db) peaks.push_back(Peak{f[i], mag[i]});
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.magnitude_db != b.magnitude_db) return a.magnitude_db > b.magnitude_db;
    return a.frequency_hz < b.frequency_hz;
  });
  return peaks;
}

HarmonicGroup harmonic_group_score(const Spectrum& spec, double fundamental_hz, int k_max,
                                   double tolerance_hz) {
  if (!(fundamental_hz > 0.0))
    throw std::invalid_argument("harmonic_group_score: fundamental must be > 0");
  if (k_max < 1) throw std::invalid_argument("harmonic_group_score: k_max must be >= 1");
  if (!(tolerance_hz >= 0.0))
    throw std::invalid_argument("harmonic_group_score: tolerance must be >= 0");
  if (spec.frequencies.size() == 0)
    throw std::invalid_argument("harmonic_group_score: empty spectrum");
  return scored_group(spec, nullptr, floor_db(spec, nullptr), fundamental_hz, k_max,
                      tolerance_hz);
}

RateEstimate estimate_rates(const Spectrum& spec, const EstimationParams& params,
                            SpectrumSource source) {
  params.validate();
  const Index n = spec.frequencies.size();
  if (n < 3) throw std::invalid_argument("estimate_rates: spectrum too short");
  const double df = spec.bin_width();
  if (!(df <= 0.5 * (params.respiration_band.high_hz - params.respiration_band.low_hz)))
    throw std::invalid_argument(
        "estimate_rates: spectral resolution coarser than half the respiration band");

  RateEstimate est;
  est.source = source;
  const double tolerance_hz = params.tolerance_bins * df;

  // respiration: needs at least one prominent peak in its band
  const auto resp_peaks = find_peaks(spec, params.min_prominence_db, params.respiration_band);
  if (!resp_peaks.empty()) {
    est.respiration = best_group(spec, nullptr, floor_db(spec, nullptr),
                                 params.respiration_band, params.k_max, tolerance_hz);
  }

  // exclude every multiple of the respiration fundamental before scoring the
  // heart band: respiration harmonics are the chief confounder there
  std::vector<char> mask(static_cast<std::size_t>(n), 0);
  if (est.respiration) {
    const double fr = est.respiration->frequency_hz;
    const double top_hz = spec.frequencies[n - 1];
    for (int k = 1; k * fr <= top_hz + params.mask_width_hz; ++k) {
      const double fk = k * fr;
      for (Index i = 0; i < n; ++i) {
        if (std::abs(spec.frequencies[i] - fk) <= params.mask_width_hz)
          mask[static_cast<std::size_t>(i)] = 1;
      }
    }
  }

  Spectrum masked = spec;
  for (Index i = 0; i < n; ++i) {
    if (mask[static_cast<std::size_t>(i)]) masked.magnitude_db[i] = db_from_magnitude(0.0);
  }
  const auto heart_peaks = find_peaks(masked, params.min_prominence_db, params.heart_band);
  if (!heart_peaks.empty()) {
    est.heart = best_group(spec, &mask, floor_db(spec, &mask), params.heart_band,
                           params.k_max, tolerance_hz);
  }
  return est;
}

}  // namespace vitalradar
