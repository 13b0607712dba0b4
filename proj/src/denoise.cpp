#include "datx/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "datx/spectral.hpp"
#include "datx/transform.hpp"

namespace datx {

FramedSignal frame_signal(const RealSignal& s, const FramePlan& plan) {
  if (plan.frame_length < 2 || !is_power_of_two(plan.frame_length)) {
    throw std::invalid_argument("frame_signal: frame length must be a power of 2, >= 2");
  }
  FramedSignal out;
  out.true_length = s.size();
  out.sample_rate_hz = s.sample_rate_hz;
  const std::size_t n = plan.frame_length;
  for (std::size_t start = 0; start < s.size(); start += n) {
    std::vector<double> frame(n, 0.0);
    const std::size_t count = std::min(n, s.size() - start);
    std::copy_n(s.samples.begin() + static_cast<std::ptrdiff_t>(start), count, frame.begin());
    out.frames.push_back(std::move(frame));
  }
  return out;
}

RealSignal reassemble(const FramedSignal& framed) {
  RealSignal out;
  out.sample_rate_hz = framed.sample_rate_hz;
  out.samples.reserve(framed.frames.size() * (framed.frames.empty() ? 0 : framed.frames[0].size()));
  for (const auto& frame : framed.frames) {
    out.samples.insert(out.samples.end(), frame.begin(), frame.end());
  }
  out.samples.resize(framed.true_length);
  return out;
}

double threshold_value(const std::vector<double>& frame, double alpha) {
  const ComplexSpectrum sh = dft_forward(frame);
  double acc = 0.0;
  for (const Complex& c : sh.coefficients) acc += std::abs(c);
  return alpha * acc / static_cast<double>(sh.size());
}

std::vector<double> denoise_frame_dft(const std::vector<double>& frame, double threshold) {
  ComplexSpectrum sh = dft_forward(frame);
  const std::size_t n = sh.size();
  std::vector<bool> keep(n);
  for (std::size_t k = 0; k < n; ++k) keep[k] = std::abs(sh[k]) >= threshold;
  for (std::size_t k = 1; k < n; ++k) {
    if (keep[k] != keep[n - k]) {
      throw std::runtime_error("denoise_frame_dft: asymmetric zero pattern at bin " +
                               std::to_string(k));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!keep[k]) sh[k] = Complex{0.0, 0.0};
  }
  const ComplexVector y = dft_inverse(sh);
  double peak = 0.0, max_imag = 0.0;
  for (const Complex& c : y) {
    peak = std::max(peak, std::abs(c));
    max_imag = std::max(max_imag, std::abs(c.imag()));
  }
  if (peak > 0.0 && max_imag > 1e-10 * peak) {
    throw std::runtime_error("denoise_frame_dft: imaginary residual exceeds tolerance");
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = y[j].real();
  return out;
}

std::vector<double> denoise_frame_dat(const std::vector<double>& frame, double threshold,
                                      const SpreadingKernel& kernel) {
  RealSignal in;
  in.sample_rate_hz = kernel.sample_rate_hz();
  in.samples = frame;
  DatCoefficients coeffs = dat_forward_fast(in, kernel);
  for (Complex& c : coeffs.values) {
    if (std::abs(c) < threshold) c = Complex{0.0, 0.0};
  }
  return dat_inverse(coeffs, kernel).samples;
}

double snr_db(const RealSignal& clean, const RealSignal& test) {
  if (clean.size() != test.size()) throw std::invalid_argument("snr_db: length mismatch");
  double clean_energy = 0.0, error_energy = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    clean_energy += clean.samples[i] * clean.samples[i];
    const double e = clean.samples[i] - test.samples[i];
    error_energy += e * e;
  }
  if (clean_energy == 0.0) throw std::invalid_argument("snr_db: clean signal is zero");
  if (error_energy == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(clean_energy / error_energy);
}

RealSignal add_noise_at_snr(const RealSignal& clean, double target_snr_db, std::uint64_t seed) {
  double clean_energy = 0.0;
  for (double v : clean.samples) clean_energy += v * v;
  if (clean_energy == 0.0) throw std::invalid_argument("add_noise_at_snr: clean signal is zero");

  GaussianRng rng(seed);
  std::vector<double> noise(clean.size());
  double noise_energy = 0.0;
  for (double& g : noise) {
    g = rng.gaussian();
    noise_energy += g * g;
  }
  // Scale by the realized power ratio so the target SNR is met exactly.
  const double scale = std::sqrt(clean_energy / (noise_energy * std::pow(10.0, target_snr_db / 10.0)));

  RealSignal out;
  out.sample_rate_hz = clean.sample_rate_hz;
  out.samples.resize(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) {
    out.samples[i] = clean.samples[i] + scale * noise[i];
  }
  return out;
}

RealSignal denoise_signal(const RealSignal& noisy, const DenoiseConfig& config,
                          const SpreadingKernel& kernel) {
  if (kernel.frame_length() != config.frame_length) {
    throw std::invalid_argument("denoise_signal: kernel does not match configured frame length");
  }
  FramedSignal framed = frame_signal(noisy, FramePlan{config.frame_length});
  for (auto& frame : framed.frames) {
    const double base = threshold_value(frame, config.alpha);
    if (config.transform == Transform::kDft) {
      frame = denoise_frame_dft(frame, base);
    } else {
      frame = denoise_frame_dat(frame, base * config.dat_scale, kernel);
    }
  }
  return reassemble(framed);
}

DenoiseReport run_sweep(const std::vector<Segment>& segments, const SweepConfig& config) {
  if (config.snr_grid_db.empty()) throw std::invalid_argument("run_sweep: empty SNR grid");
  const SpreadingKernel kernel =
      build_kernel(config.denoise.frame_length, config.denoise.sample_rate_hz);

  DenoiseReport report;
  for (std::size_t si = 0; si < segments.size(); ++si) {
    const Segment& seg = segments[si];
    if (seg.signal.size() < config.denoise.frame_length) {
      throw std::invalid_argument("run_sweep: segment '" + seg.label +
                                  "' shorter than one frame");
    }
    for (std::size_t gi = 0; gi < config.snr_grid_db.size(); ++gi) {
      const double input_snr = config.snr_grid_db[gi];
      const std::uint64_t seed = condition_seed(config.master_seed, si, gi);
      const RealSignal noisy = add_noise_at_snr(seg.signal, input_snr, seed);
      for (Transform t : {Transform::kDft, Transform::kDat}) {
        DenoiseConfig dc = config.denoise;
        dc.transform = t;
        const RealSignal rec = denoise_signal(noisy, dc, kernel);
        report.records.push_back({seg.label, t, input_snr, snr_db(seg.signal, rec), seed});
      }
    }
  }
  std::sort(report.records.begin(), report.records.end(),
            [](const SweepRecord& a, const SweepRecord& b) {
              if (a.segment != b.segment) return a.segment < b.segment;
              if (a.transform != b.transform)
                return std::string(transform_name(a.transform)) < transform_name(b.transform);
              return a.input_snr_db < b.input_snr_db;
            });
  return report;
}

}  // namespace datx
