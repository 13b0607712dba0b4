#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "datx/rng.hpp"
#include "datx/signal.hpp"

namespace testutil {

inline std::vector<double> random_samples(std::size_t n, std::uint64_t seed) {
  datx::GaussianRng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.gaussian();
  return v;
}

inline datx::RealSignal random_signal(std::size_t n, std::uint64_t seed, double fs = 16000.0) {
  return datx::RealSignal{random_samples(n, seed), fs};
}

inline double rel_l2_error(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += a[i] * a[i];
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

inline double energy(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

}  // namespace testutil
