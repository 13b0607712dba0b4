#include "datx/psychoacoustics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace datx {

double bark(double freq_hz) {
  if (!(freq_hz >= 0.0)) {
    throw std::invalid_argument("bark: frequency must be >= 0, got " + std::to_string(freq_hz));
  }
  const double r = freq_hz / 7500.0;
  return 13.0 * std::atan(0.00076 * freq_hz) + 3.5 * std::atan(r * r);
}

double spreading_energy(double bark_from, double bark_to) {
  if (!std::isfinite(bark_from) || !std::isfinite(bark_to)) {
    throw std::invalid_argument("spreading_energy: non-finite Bark value");
  }
  const double d = kUpwardSpreadDeltaSign * (bark_to - bark_from) + 0.474;
  const double level_db = 15.81 + 7.5 * d - 17.5 * std::sqrt(1.0 + d * d);
  return std::pow(10.0, level_db / 10.0);
}

double SpreadingKernel::row_norm(std::size_t band) const {
  double acc = 0.0;
  for (std::size_t n = 0; n < n_; ++n) acc += at(band, n) * at(band, n);
  return std::sqrt(acc);
}

SpreadingKernel build_kernel(std::size_t n, double sample_rate_hz, double energy_scale) {
  if (!is_power_of_two(n) || n < 4) {
    throw std::invalid_argument("build_kernel: N must be a power of 2 and >= 4, got " +
                                std::to_string(n));
  }
  if (!(sample_rate_hz > 0.0)) {
    throw std::invalid_argument("build_kernel: sample rate must be positive");
  }
  if (!(energy_scale > 0.0)) {
    throw std::invalid_argument("build_kernel: energy scale must be positive");
  }

  const std::size_t m_count = n / 2;
  const std::size_t half = n / 2;

  // Bark values of the analysis grid f_k = Fs * k / N, k = 0..N/2.
  std::vector<double> grid_bark(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    grid_bark[k] = bark(sample_rate_hz * static_cast<double>(k) / static_cast<double>(n));
  }

  // Amplitude spreading U[m][k] = sqrt(S(b(f_m), b(f_k))) and the per-column
  // norms m_f(f_k); columns are then unit vectors by construction.
  std::vector<double> u(m_count * (half + 1));
  std::vector<double> mf(half + 1, 0.0);
  for (std::size_t k = 0; k <= half; ++k) {
    double norm_sq = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
      const double amp = std::sqrt(energy_scale * spreading_energy(grid_bark[m], grid_bark[k]));
      u[m * (half + 1) + k] = amp;
      norm_sq += amp * amp;
    }
    mf[k] = std::sqrt(norm_sq);
    if (!(mf[k] > 0.0) || !std::isfinite(mf[k])) {
      throw std::runtime_error("build_kernel: degenerate spreading function, m_f(f_" +
                               std::to_string(k) + ") is not positive");
    }
  }

  SpreadingKernel kernel;
  kernel.n_ = n;
  kernel.m_ = m_count;
  kernel.sample_rate_hz_ = sample_rate_hz;
  kernel.x_.assign(m_count * n, 0.0);

  // Three-case definition: n = 0 borrows column 1; 1 <= n <= N/2 uses its own
  // column; the upper half mirrors, X_{m,n} = X_{m,N-n}.
  for (std::size_t m = 0; m < m_count; ++m) {
    const double* urow = &u[m * (half + 1)];
    kernel.x_[m * n + 0] = urow[1] / mf[1];
    for (std::size_t k = 1; k <= half; ++k) {
      kernel.x_[m * n + k] = urow[k] / mf[k];
    }
    for (std::size_t k = half + 1; k < n; ++k) {
      kernel.x_[m * n + k] = kernel.x_[m * n + (n - k)];
    }
  }
  return kernel;
}

ComplexVector kernel_time_kernel(const SpreadingKernel& kernel) {
  const std::size_t n = kernel.frame_length();
  const std::size_t m_count = kernel.band_count();
  ComplexVector out(n * m_count);
  ComplexVector row(n);
  for (std::size_t m = 0; m < m_count; ++m) {
    for (std::size_t k = 0; k < n; ++k) row[k] = kernel.at(m, k);
    // K_{l,m} = N * inverse DFT of row m.
    const ComplexVector col = dft_inverse(row);
    for (std::size_t l = 0; l < n; ++l) out[l * m_count + m] = col[l] * static_cast<double>(n);
  }
  return out;
}

}  // namespace datx
