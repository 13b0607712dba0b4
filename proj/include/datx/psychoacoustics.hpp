#pragma once

#include <cstddef>
#include <vector>

#include "datx/spectral.hpp"

namespace datx {

/// Zwicker-Terhardt critical-band rate: b(f) = 13 atan(0.00076 f) + 3.5 atan((f/7500)^2).
/// Strictly increasing, b(0) = 0. Negative frequencies are rejected.
double bark(double freq_hz);

/// Delta-sign convention for the spreading function: the masker-to-maskee
/// distance is b(to) - b(from), so positive deltas (upward spread) get the
/// shallower slope. Flip to -1.0 to reverse the orientation.
inline constexpr double kUpwardSpreadDeltaSign = 1.0;

/// Schroeder spreading function on the energy scale.
/// In dB: 15.81 + 7.5 (d + 0.474) - 17.5 sqrt(1 + (d + 0.474)^2), d in Bark.
double spreading_energy(double bark_from, double bark_to);

/// The M x N column-normalized amplitude spreading matrix X_{m,n},
/// M = N/2. Immutable after construction; entries in [0, 1]; every column
/// is a unit vector and X_{m,n} = X_{m,N-n}.
class SpreadingKernel {
 public:
  std::size_t frame_length() const { return n_; }     // N
  std::size_t band_count() const { return m_; }       // M = N/2
  double sample_rate_hz() const { return sample_rate_hz_; }

  double at(std::size_t band, std::size_t bin) const { return x_[band * n_ + bin]; }
  const std::vector<double>& data() const { return x_; }  // row-major, M x N

  /// L2 norm of row m; the band's amplitude gain.
  double row_norm(std::size_t band) const;

  /// Band center frequency f_m = Fs * m / N.
  double band_frequency_hz(std::size_t band) const {
    return sample_rate_hz_ * static_cast<double>(band) / static_cast<double>(n_);
  }

 private:
  friend SpreadingKernel build_kernel(std::size_t, double, double);
  SpreadingKernel() = default;

  std::vector<double> x_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  double sample_rate_hz_ = 0.0;
};

/// Builds the kernel for frame length N (power of 2, >= 4) at the given
/// sampling rate. energy_scale multiplies the spreading energies before
/// normalization; it cancels exactly and exists so tests can assert the
/// scale invariance.
SpreadingKernel build_kernel(std::size_t n, double sample_rate_hz, double energy_scale = 1.0);

/// Time-domain kernel K_{l,m} = sum_n X_{m,n} e^{i 2 pi l n / N},
/// returned row-major with l as the row index (N rows, M columns).
/// Row symmetry of X makes every column real up to roundoff.
ComplexVector kernel_time_kernel(const SpreadingKernel& kernel);

}  // namespace datx
