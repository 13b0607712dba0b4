#include "datx/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace datx {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_finite(const ComplexVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
      throw std::invalid_argument("non-finite sample at index " + std::to_string(i));
    }
  }
}

// Iterative radix-2 Cooley-Tukey, no scaling. sign = -1 forward, +1 inverse.
void fft_pow2(ComplexVector& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Complex w = std::polar(1.0, ang * static_cast<double>(j));
        const Complex u = a[i + j];
        const Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

// Direct O(N^2) transform for non-power-of-two lengths.
ComplexVector dft_direct(const ComplexVector& in, int sign) {
  const std::size_t n = in.size();
  ComplexVector out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * kTwoPi * static_cast<double>(j) * static_cast<double>(k) /
                         static_cast<double>(n);
      acc += in[j] * std::polar(1.0, ang);
    }
    out[k] = acc;
  }
  return out;
}

ComplexVector transform(ComplexVector a, int sign) {
  if (a.size() < 2) throw std::invalid_argument("transform length must be >= 2");
  check_finite(a);
  if (is_power_of_two(a.size())) {
    fft_pow2(a, sign);
    return a;
  }
  return dft_direct(a, sign);
}

}  // namespace

ComplexSpectrum dft_forward(const ComplexVector& samples) {
  return ComplexSpectrum{transform(samples, -1)};
}

ComplexSpectrum dft_forward(const std::vector<double>& samples) {
  ComplexVector a(samples.begin(), samples.end());
  return dft_forward(a);
}

ComplexSpectrum dft_forward(const RealSignal& signal) { return dft_forward(signal.samples); }

ComplexVector dft_inverse(const ComplexVector& coefficients) {
  ComplexVector out = transform(coefficients, +1);
  const double inv_n = 1.0 / static_cast<double>(out.size());
  for (Complex& c : out) c *= inv_n;
  return out;
}

ComplexVector dft_inverse(const ComplexSpectrum& spectrum) {
  return dft_inverse(spectrum.coefficients);
}

double plancherel_residual(const RealSignal& s, const RealSignal& t) {
  if (s.size() != t.size()) {
    throw std::invalid_argument("plancherel_residual: length mismatch");
  }
  const std::size_t n = s.size();
  Complex time_side{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) time_side += s.samples[i] * t.samples[i];

  const ComplexSpectrum sh = dft_forward(s);
  const ComplexSpectrum th = dft_forward(t);
  Complex freq_side{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) freq_side += sh[k] * std::conj(th[k]);
  freq_side /= static_cast<double>(n);

  const double denom = std::max(std::abs(time_side), std::abs(freq_side));
  if (denom == 0.0) return 0.0;
  return std::abs(time_side - freq_side) / denom;
}

}  // namespace datx
