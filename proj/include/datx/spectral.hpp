#pragma once

#include <complex>
#include <vector>

#include "datx/signal.hpp"

namespace datx {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Length-N complex DFT coefficient vector, unnormalized forward convention:
/// shat_k = sum_n s_n e^{-i 2 pi n k / N}.
struct ComplexSpectrum {
  ComplexVector coefficients;

  std::size_t size() const { return coefficients.size(); }
  Complex& operator[](std::size_t k) { return coefficients[k]; }
  const Complex& operator[](std::size_t k) const { return coefficients[k]; }
};

/// Unnormalized forward DFT. Power-of-two lengths take the FFT path,
/// anything else falls back to the direct sum.
ComplexSpectrum dft_forward(const std::vector<double>& samples);
ComplexSpectrum dft_forward(const ComplexVector& samples);
ComplexSpectrum dft_forward(const RealSignal& signal);

/// Inverse DFT with the 1/N factor: s_n = (1/N) sum_k shat_k e^{i 2 pi n k / N}.
ComplexVector dft_inverse(const ComplexSpectrum& spectrum);
ComplexVector dft_inverse(const ComplexVector& coefficients);

/// Relative residual of the Plancherel-Parseval equality
/// sum_n s_n t_n = (1/N) sum_k shat_k conj(that_k), normalized by the larger
/// side's magnitude; 0 when both sides vanish.
double plancherel_residual(const RealSignal& s, const RealSignal& t);

}  // namespace datx
