#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace vitalradar::fft {

template <typename Scalar>
using ComplexArray = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, 1>;

constexpr bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

inline Eigen::Index next_power_of_two(Eigen::Index n) {
  Eigen::Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// Iterative radix-2 Cooley-Tukey transform for one power-of-two length.
/// Twiddles and the bit-reversal permutation are precomputed so a plan can be
/// reused across many transforms of the same length (e.g. STFT frames).
template <typename Scalar>
class Radix2Plan {
 public:
  explicit Radix2Plan(Eigen::Index n) : n_(n) {
    if (!is_power_of_two(n))
      throw std::invalid_argument("Radix2Plan: length must be a power of two");
    Eigen::Index bits = 0;
    while ((Eigen::Index{1} << bits) < n) ++bits;
    bit_reversal_.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index r = 0;
      for (Eigen::Index b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
      bit_reversal_[static_cast<std::size_t>(i)] = r;
    }
    twiddles_.resize(static_cast<std::size_t>(n / 2));
    for (Eigen::Index k = 0; k < n / 2; ++k) {
      const long double angle = -2.0L * pi_ld() * static_cast<long double>(k) / n;
      twiddles_[static_cast<std::size_t>(k)] =
          std::polar(Scalar(1), static_cast<Scalar>(angle));
    }
  }

  Eigen::Index size() const { return n_; }

  void forward(ComplexArray<Scalar>& data) const { run(data, false); }

  /// Unscaled inverse: divide by size() afterwards to invert forward().
  void inverse_unscaled(ComplexArray<Scalar>& data) const { run(data, true); }

 private:
  static constexpr long double pi_ld() { return 3.141592653589793238462643383279502884L; }

  void run(ComplexArray<Scalar>& data, bool inverse) const {
    if (data.size() != n_) throw std::invalid_argument("Radix2Plan: data length mismatch");
    for (Eigen::Index i = 0; i < n_; ++i) {
      const Eigen::Index j = bit_reversal_[static_cast<std::size_t>(i)];
      if (i < j) std::swap(data[i], data[j]);
    }
    for (Eigen::Index len = 2; len <= n_; len <<= 1) {
      const Eigen::Index half = len / 2;
      const Eigen::Index stride = n_ / len;
      for (Eigen::Index start = 0; start < n_; start += len) {
        for (Eigen::Index j = 0; j < half; ++j) {
          std::complex<Scalar> w = twiddles_[static_cast<std::size_t>(j * stride)];
          if (inverse) w = std::conj(w);
          const std::complex<Scalar> u = data[start + j];
          const std::complex<Scalar> v = data[start + j + half] * w;
          data[start + j] = u + v;
          data[start + j + half] = u - v;
        }
      }
    }
  }

  Eigen::Index n_;
  std::vector<Eigen::Index> bit_reversal_;
  std::vector<std::complex<Scalar>> twiddles_;
};

/// Forward DFT of arbitrary length, X[k] = sum_n x[n] exp(-2*pi*i*k*n/N).
/// Radix-2 for powers of two, Bluestein's chirp-z rewrite otherwise.
template <typename Scalar>
ComplexArray<Scalar> forward(ComplexArray<Scalar> x) {
  const Eigen::Index n = x.size();
  if (n <= 1) return x;
  if (is_power_of_two(n)) {
    Radix2Plan<Scalar> plan(n);
    plan.forward(x);
    return x;
  }
  // Bluestein: X[k] = c[k] * (a (*) b)[k] with chirp c[k] = exp(-i*pi*k^2/n).
  // k^2 is reduced modulo 2n in integer arithmetic so the angle stays small.
  const Eigen::Index m = next_power_of_two(2 * n - 1);
  ComplexArray<Scalar> chirp(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const long long q = (static_cast<long long>(k) * k) % (2ll * n);
    const long double angle = -3.141592653589793238462643383279502884L * q / n;
    chirp[k] = std::polar(Scalar(1), static_cast<Scalar>(angle));
  }
  ComplexArray<Scalar> a = ComplexArray<Scalar>::Zero(m);
  for (Eigen::Index k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  ComplexArray<Scalar> b = ComplexArray<Scalar>::Zero(m);
  b[0] = std::complex<Scalar>(1, 0);
  for (Eigen::Index k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
  Radix2Plan<Scalar> plan(m);
  plan.forward(a);
  plan.forward(b);
  a *= b;
  plan.inverse_unscaled(a);
  ComplexArray<Scalar> out(n);
  const Scalar scale = Scalar(1) / static_cast<Scalar>(m);
  for (Eigen::Index k = 0; k < n; ++k) out[k] = a[k] * scale * chirp[k];
  return out;
}

}  // namespace vitalradar::fft
