#include "datx/transform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace datx {
namespace {

void check_signal_matches(const RealSignal& s, const SpreadingKernel& kernel) {
  validate_signal(s.samples);
  if (s.size() != kernel.frame_length()) {
    throw std::invalid_argument("signal length " + std::to_string(s.size()) +
                                " does not match kernel frame length " +
                                std::to_string(kernel.frame_length()));
  }
}

void check_coeffs_match(const DatCoefficients& coeffs, const SpreadingKernel& kernel) {
  if (coeffs.n_time != kernel.frame_length() || coeffs.n_bands != kernel.band_count()) {
    throw std::invalid_argument("coefficient dimensions " + std::to_string(coeffs.n_time) + "x" +
                                std::to_string(coeffs.n_bands) + " do not match kernel " +
                                std::to_string(kernel.frame_length()) + "x" +
                                std::to_string(kernel.band_count()));
  }
  if (coeffs.values.size() != coeffs.n_time * coeffs.n_bands) {
    throw std::invalid_argument("coefficient storage size does not match dimensions");
  }
}

}  // namespace

DatCoefficients dat_forward_direct(const RealSignal& s, const SpreadingKernel& kernel) {
  check_signal_matches(s, kernel);
  const std::size_t n = kernel.frame_length();
  const std::size_t m_count = kernel.band_count();
  const ComplexVector k = kernel_time_kernel(kernel);  // [l * M + m]

  DatCoefficients out;
  out.n_time = n;
  out.n_bands = m_count;
  out.sample_rate_hz = kernel.sample_rate_hz();
  out.values.assign(n * m_count, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      const std::size_t shift = (j + n - l) % n;
      const double sl = s.samples[l];
      for (std::size_t m = 0; m < m_count; ++m) {
        out.values[j * m_count + m] += sl * k[shift * m_count + m];
      }
    }
  }
  return out;
}

DatCoefficients dat_forward_fast(const RealSignal& s, const SpreadingKernel& kernel) {
  check_signal_matches(s, kernel);
  const std::size_t n = kernel.frame_length();
  const std::size_t m_count = kernel.band_count();
  const ComplexSpectrum sh = dft_forward(s);

  DatCoefficients out;
  out.n_time = n;
  out.n_bands = m_count;
  out.sample_rate_hz = kernel.sample_rate_hz();
  out.values.assign(n * m_count, Complex{0.0, 0.0});

  ComplexVector weighted(n);
  for (std::size_t m = 0; m < m_count; ++m) {
    for (std::size_t k = 0; k < n; ++k) weighted[k] = sh[k] * kernel.at(m, k);
    const ComplexVector col = dft_inverse(weighted);
    for (std::size_t j = 0; j < n; ++j) {
      out.values[j * m_count + m] = col[j] * static_cast<double>(n);
    }
  }
  return out;
}

RealSignal dat_inverse(const DatCoefficients& coeffs, const SpreadingKernel& kernel) {
  check_coeffs_match(coeffs, kernel);
  const std::size_t n = coeffs.n_time;
  const std::size_t m_count = coeffs.n_bands;

  // Following the inversion proof: the inner sum over l is (1/N) times the
  // forward DFT of the band's time column, so the reconstructed spectrum is
  // yhat_n = sum_m X_{m,n} (DFT of S_{.,m})_n / N.
  ComplexVector yhat(n, Complex{0.0, 0.0});
  ComplexVector col(n);
  for (std::size_t m = 0; m < m_count; ++m) {
    for (std::size_t j = 0; j < n; ++j) col[j] = coeffs.values[j * m_count + m];
    const ComplexSpectrum g = dft_forward(col);
    for (std::size_t k = 0; k < n; ++k) {
      yhat[k] += kernel.at(m, k) * g[k] / static_cast<double>(n);
    }
  }
  const ComplexVector y = dft_inverse(yhat);

  double peak = 0.0;
  double max_imag = 0.0;
  for (const Complex& c : y) {
    peak = std::max(peak, std::abs(c));
    max_imag = std::max(max_imag, std::abs(c.imag()));
  }
  if (peak > 0.0 && max_imag > 1e-9 * peak) {
    throw std::runtime_error("dat_inverse: imaginary residual " + std::to_string(max_imag) +
                             " exceeds 1e-9 of peak " + std::to_string(peak));
  }

  RealSignal out;
  out.sample_rate_hz = coeffs.sample_rate_hz;
  out.samples.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.samples[j] = y[j].real();
  return out;
}

DatSpectrum dat_spectrum(const RealSignal& s, const SpreadingKernel& kernel) {
  check_signal_matches(s, kernel);
  const std::size_t n = kernel.frame_length();
  const std::size_t m_count = kernel.band_count();
  const ComplexSpectrum sh = dft_forward(s);

  DatSpectrum spec;
  spec.values.resize(m_count);
  spec.band_frequencies_hz.resize(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double a = std::abs(sh[k]) * kernel.at(m, k);
      acc += a * a;
    }
    spec.values[m] = std::sqrt(acc);
    spec.band_frequencies_hz[m] = kernel.band_frequency_hz(m);
  }
  return spec;
}

DatSpectrum dat_spectrum_from_coefficients(const DatCoefficients& coeffs,
                                           const SpreadingKernel& kernel) {
  check_coeffs_match(coeffs, kernel);
  const std::size_t n = coeffs.n_time;
  const std::size_t m_count = coeffs.n_bands;

  DatSpectrum spec;
  spec.values.resize(m_count);
  spec.band_frequencies_hz.resize(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += std::norm(coeffs.values[j * m_count + m]);
    spec.values[m] = std::sqrt(acc / static_cast<double>(n));
    spec.band_frequencies_hz[m] = kernel.band_frequency_hz(m);
  }
  return spec;
}

std::vector<double> basis_function(const SpreadingKernel& kernel, std::size_t m) {
  if (m >= kernel.band_count()) {
    throw std::invalid_argument("basis_function: band index " + std::to_string(m) +
                                " out of range (M = " + std::to_string(kernel.band_count()) + ")");
  }
  const std::size_t n = kernel.frame_length();
  ComplexVector row(n);
  for (std::size_t k = 0; k < n; ++k) row[k] = kernel.at(m, k);  // X is real
  const ComplexVector atom = dft_inverse(row);

  double peak = 0.0;
  for (const Complex& c : atom) peak = std::max(peak, std::abs(c));
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (peak > 0.0 && std::abs(atom[j].imag()) > 1e-10 * peak * static_cast<double>(n)) {
      throw std::runtime_error("basis_function: unexpected imaginary residual");
    }
    out[j] = atom[j].real() * static_cast<double>(n);
  }
  return out;
}

}  // namespace datx
