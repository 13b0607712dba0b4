#pragma once

#include <cstddef>
#include <vector>

#include "datx/psychoacoustics.hpp"
#include "datx/signal.hpp"
#include "datx/spectral.hpp"

namespace datx {

/// The N x M coefficient array S_{j,m} of the auditory transform
/// (j = time index, m = band index), stored row-major in j.
struct DatCoefficients {
  ComplexVector values;  // size n_time * n_bands, index [j * n_bands + m]
  std::size_t n_time = 0;
  std::size_t n_bands = 0;
  double sample_rate_hz = 0.0;

  Complex& at(std::size_t j, std::size_t m) { return values[j * n_bands + m]; }
  const Complex& at(std::size_t j, std::size_t m) const { return values[j * n_bands + m]; }
};

/// Per-band magnitudes spec(m) with their center frequencies.
struct DatSpectrum {
  std::vector<double> values;
  std::vector<double> band_frequencies_hz;
};

/// Reference transform, S_{j,m} = sum_l s_l K_{j-l,m} with the index taken
/// modulo N (the kernel is N-periodic in l). O(N^2 M); used as the oracle
/// against the fast path.
DatCoefficients dat_forward_direct(const RealSignal& s, const SpreadingKernel& kernel);

/// Fast path via the spectral representation S_{j,m} = sum_n shat_n X_{m,n}
/// e^{i 2 pi n j / N}: per band, N x inverse DFT of the weighted spectrum.
DatCoefficients dat_forward_fast(const RealSignal& s, const SpreadingKernel& kernel);

/// Closed-form inversion. For coefficients in the range of the forward
/// transform this reconstructs the signal exactly (up to roundoff); for
/// arbitrary coefficients (e.g. after thresholding) it evaluates the same
/// formula, which acts as a projection-based reconstruction.
/// Band contributions are summed in fixed m order for bitwise determinism.
RealSignal dat_inverse(const DatCoefficients& coeffs, const SpreadingKernel& kernel);

/// spec(m) = sqrt(sum_n |shat_n X_{m,n}|^2), computed from the signal.
DatSpectrum dat_spectrum(const RealSignal& s, const SpreadingKernel& kernel);

/// The equivalent route sqrt((1/N) sum_j |S_{j,m}|^2); agrees with
/// dat_spectrum to roundoff by the per-band energy identity.
DatSpectrum dat_spectrum_from_coefficients(const DatCoefficients& coeffs,
                                           const SpreadingKernel& kernel);

/// Time-domain atom of band m: N x inverse DFT of conj(X_{m,.}).
std::vector<double> basis_function(const SpreadingKernel& kernel, std::size_t m);

}  // namespace datx
