#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace datx {

/// A finite real-valued sample sequence with its sampling rate.
struct RealSignal {
  std::vector<double> samples;
  double sample_rate_hz = 16000.0;

  std::size_t size() const { return samples.size(); }
};

inline bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

/// Rejects signals that are too short or contain NaN/Inf. The diagnostic
/// names the first offending sample index.
inline void validate_signal(const std::vector<double>& samples, std::size_t min_len = 2) {
  if (samples.size() < min_len) {
    throw std::invalid_argument("signal too short: length " + std::to_string(samples.size()) +
                                " < " + std::to_string(min_len));
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) {
      throw std::invalid_argument("non-finite sample at index " + std::to_string(i));
    }
  }
}

}  // namespace datx
