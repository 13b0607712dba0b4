#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "datx/signal.hpp"

namespace datx {

/// Mono audio clip with samples normalized to [-1, 1]; integer PCM sample x
/// maps to x / 2^(bits-1).
struct WavClip {
  std::vector<double> samples;
  double sample_rate_hz = 16000.0;
  int source_bits = 16;
};

/// Reads a PCM WAV file (8/16/24-bit integer or 32-bit float). Stereo input
/// is rejected unless downmix is set, in which case channels are averaged.
WavClip read_wav(const std::string& path, bool downmix = false);

/// Writes a 16-bit little-endian mono PCM WAV. Samples outside [-1, 1] are
/// clipped; returns the number of clipped samples.
std::size_t write_wav(const WavClip& clip, const std::string& path);

/// CSV signal format: one sample per line, optional "sample" header line.
std::vector<double> read_signal_csv(const std::string& path);
void write_signal_csv(const std::vector<double>& samples, const std::string& path);

/// +/-1 square wave, 50% duty cycle, starting high at sample 0.
RealSignal gen_square(double freq_hz, double sample_rate_hz, std::size_t n_samples);

/// Synthetic voiced segment: harmonics of a 120 Hz fundamental up to 4 kHz
/// under a two-peak formant-like envelope, seeded random phases, peak
/// normalized to 1.
RealSignal gen_voiced_surrogate(std::size_t n_samples, double sample_rate_hz, std::uint64_t seed);

/// Synthetic unvoiced segment: seeded Gaussian noise shaped by a high-pass
/// spectral envelope (energy above ~2 kHz), zero DC, peak normalized to 1.
RealSignal gen_unvoiced_surrogate(std::size_t n_samples, double sample_rate_hz,
                                  std::uint64_t seed);

}  // namespace datx
