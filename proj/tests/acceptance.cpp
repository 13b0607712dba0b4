// End-to-end acceptance suite. Each numbered check prints one PASS/FAIL line;
// the process exits nonzero if any check fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "datx/denoise.hpp"
#include "datx/psychoacoustics.hpp"
#include "datx/signal_io.hpp"
#include "datx/spectral.hpp"
#include "datx/transform.hpp"
#include "test_util.hpp"

using namespace datx;

namespace {

int g_failures = 0;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

void report(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  if (!ok) ++g_failures;
}

double total_variation(const std::vector<double>& v) {
  double acc = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) acc += std::abs(v[i] - v[i - 1]);
  return acc;
}

std::vector<double> to_db(const std::vector<double>& v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, x);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = 20.0 * std::log10(std::max(v[i], 1e-15 * peak));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_1_and_2() {
  const std::vector<std::size_t> sizes{8, 64, 128, 512};
  double worst_rt = 0.0, worst_energy = 0.0, worst_plancherel = 0.0;
  for (std::size_t n : sizes) {
    const SpreadingKernel kernel = build_kernel(n, 16000.0);
    for (int trial = 0; trial < 100; ++trial) {
      const RealSignal s = testutil::random_signal(n, 10000 + 131 * n + std::uint64_t(trial));
      const DatCoefficients coeffs = dat_forward_fast(s, kernel);
      const RealSignal back = dat_inverse(coeffs, kernel);
      worst_rt = std::max(worst_rt, testutil::rel_l2_error(s.samples, back.samples));

      double coeff_energy = 0.0;
      for (const Complex& c : coeffs.values) coeff_energy += std::norm(c);
      const double sig_energy = testutil::energy(s.samples);
      worst_energy = std::max(
          worst_energy, std::abs(coeff_energy / double(n * n) - sig_energy) / sig_energy);

      if (trial < 20) {
        const RealSignal t = testutil::random_signal(n, 20000 + 131 * n + std::uint64_t(trial));
        const DatCoefficients ct = dat_forward_fast(t, kernel);
        Complex lhs{0.0, 0.0};
        for (std::size_t i = 0; i < coeffs.values.size(); ++i) {
          lhs += coeffs.values[i] * std::conj(ct.values[i]);
        }
        lhs /= double(n * n);
        double rhs = 0.0;
        for (std::size_t i = 0; i < n; ++i) rhs += s.samples[i] * t.samples[i];
        worst_plancherel = std::max(worst_plancherel, std::abs(lhs - rhs) / std::abs(rhs));
      }
    }
  }
  report(1, "perfect reconstruction, 100 random signals per N in {8,64,128,512}",
         worst_rt <= 1e-10, "max rel L2 error " + sci(worst_rt));
  report(2, "energy identity and Plancherel analog",
         worst_energy <= 1e-10 && worst_plancherel <= 1e-10,
         "max residuals " + sci(worst_energy) + ", " +
             sci(worst_plancherel));
}

void criterion_3() {
  double worst = 0.0;
  const std::vector<std::pair<std::size_t, double>> configs{
      {8, 8000.0}, {128, 16000.0}, {512, 16000.0}};
  for (const auto& [n, fs] : configs) {
    const SpreadingKernel kernel = build_kernel(n, fs);
    for (std::size_t col = 0; col < n; ++col) {
      double acc = 0.0;
      for (std::size_t m = 0; m < kernel.band_count(); ++m) {
        acc += kernel.at(m, col) * kernel.at(m, col);
      }
      worst = std::max(worst, std::abs(acc - 1.0));
    }
  }
  report(3, "kernel column normalization for (8,8k), (128,16k), (512,16k)", worst <= 1e-12,
         "max |sum-1| " + sci(worst));
}

void criterion_4() {
  double worst_dat = 0.0;
  for (std::size_t n : {std::size_t{8}, std::size_t{16}}) {
    const SpreadingKernel kernel = build_kernel(n, 8000.0);
    const RealSignal s = testutil::random_signal(n, 400 + n, 8000.0);
    const DatCoefficients a = dat_forward_direct(s, kernel);
    const DatCoefficients b = dat_forward_fast(s, kernel);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      num += std::norm(a.values[i] - b.values[i]);
      den += std::norm(a.values[i]);
    }
    worst_dat = std::max(worst_dat, std::sqrt(num / den));
  }

  double worst_dft = 0.0;
  for (std::size_t n : {std::size_t{8}, std::size_t{16}, std::size_t{32}}) {
    const auto s = testutil::random_samples(n, 500 + n);
    const ComplexSpectrum fast = dft_forward(s);
    double scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      Complex acc{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        const double ang = -2.0 * M_PI * double(j) * double(k) / double(n);
        acc += s[j] * Complex{std::cos(ang), std::sin(ang)};
      }
      scale = std::max(scale, std::abs(acc));
      worst_dft = std::max(worst_dft, std::abs(fast[k] - acc));
    }
    worst_dft /= scale;
  }
  report(4, "oracle equivalence (direct vs fast transform, direct vs FFT)",
         worst_dat <= 1e-10 && worst_dft <= 1e-12,
         "dat " + sci(worst_dat) + ", dft " + sci(worst_dft));
}

void criterion_5() {
  const SpreadingKernel kernel = build_kernel(128, 16000.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const RealSignal s = testutil::random_signal(128, 600 + std::uint64_t(trial));
    const DatCoefficients coeffs = dat_forward_fast(s, kernel);
    double peak = 0.0, imag = 0.0;
    for (const Complex& c : coeffs.values) {
      peak = std::max(peak, std::abs(c));
      imag = std::max(imag, std::abs(c.imag()));
    }
    worst = std::max(worst, imag / peak);
    // reconstructions are produced as real parts after the same residual
    // check inside dat_inverse; exercise it too
    (void)dat_inverse(coeffs, kernel);
  }
  report(5, "realness of coefficients and reconstructions for real input", worst <= 1e-9,
         "max imag/peak " + sci(worst));
}

void criterion_6() {
  const SpreadingKernel kernel = build_kernel(128, 16000.0);
  const RealSignal sq = gen_square(500.0, 16000.0, 128);

  const ComplexSpectrum sh = dft_forward(sq);
  std::vector<double> dft_mag(65);
  for (std::size_t k = 0; k <= 64; ++k) dft_mag[k] = std::abs(sh[k]);
  const std::vector<double> dat_spec = dat_spectrum(sq, kernel).values;

  const double tv_dft_lin = total_variation(dft_mag);
  const double tv_dat_lin = total_variation(dat_spec);
  const double tv_dft_db = total_variation(to_db(dft_mag));
  const double tv_dat_db = total_variation(to_db(dat_spec));
  report(6, "DAT spectrum smoother than DFT spectrum for the 500 Hz square wave",
         tv_dat_lin < tv_dft_lin && tv_dat_db < tv_dft_db,
         "TV linear " + sci(tv_dat_lin) + " vs " + sci(tv_dft_lin) +
             "; dB " + sci(tv_dat_db) + " vs " + sci(tv_dft_db));
}

void criterion_7() {
  const SpreadingKernel kernel = build_kernel(128, 16000.0);
  double worst = 1.0;
  for (std::size_t m : {std::size_t{20}, std::size_t{40}}) {
    const std::vector<double> atom = basis_function(kernel, m);
    std::size_t peak = 0;
    for (std::size_t j = 0; j < 128; ++j) {
      if (std::abs(atom[j]) > std::abs(atom[peak])) peak = j;
    }
    double total = 0.0, window = 0.0;
    for (std::size_t j = 0; j < 128; ++j) total += atom[j] * atom[j];
    for (int off = -16; off < 16; ++off) {
      window += std::pow(atom[(peak + std::size_t(off + 128)) % 128], 2);
    }
    worst = std::min(worst, window / total);
  }
  report(7, "basis-function energy concentration >= 90% in 32-sample window", worst >= 0.90,
         "min concentration " + sci(worst));
}

void criterion_8() {
  SweepConfig config;
  for (double snr = -12.0; snr <= 12.0; snr += 3.0) config.snr_grid_db.push_back(snr);
  std::vector<Segment> segments{
      {"voiced_a", gen_voiced_surrogate(512, 16000.0, 1)},
      {"voiced_b", gen_voiced_surrogate(512, 16000.0, 2)},
      {"unvoiced_a", gen_unvoiced_surrogate(512, 16000.0, 3)},
      {"unvoiced_b", gen_unvoiced_surrogate(512, 16000.0, 4)},
  };
  const DenoiseReport rep = run_sweep(segments, config);

  auto find = [&](const std::string& seg, Transform t, double snr) {
    for (const auto& r : rep.records) {
      if (r.segment == seg && r.transform == t && r.input_snr_db == snr) return r.output_snr_db;
    }
    throw std::runtime_error("missing sweep record");
  };

  bool improves = true;
  double gap_sum = 0.0;
  int gap_count = 0;
  for (const std::string seg : {"voiced_a", "voiced_b"}) {
    for (double snr = -12.0; snr <= 0.0; snr += 3.0) {
      const double out_dft = find(seg, Transform::kDft, snr);
      const double out_dat = find(seg, Transform::kDat, snr);
      improves = improves && out_dft > snr && out_dat > snr;
      gap_sum += out_dat - out_dft;
      ++gap_count;
    }
  }
  const double mean_gap = gap_sum / gap_count;
  report(8, "voiced denoising: both transforms improve SNR and DAT gains >= 2 dB on average",
         improves && mean_gap >= 2.0, "mean DAT-DFT gap " + sci(mean_gap) + " dB");

  // informational only: sign of the gap on unvoiced material at low noise
  for (const std::string seg : {"unvoiced_a", "unvoiced_b"}) {
    for (double snr = 9.0; snr <= 12.0; snr += 3.0) {
      const double gap = find(seg, Transform::kDat, snr) - find(seg, Transform::kDft, snr);
      std::cout << "  note: " << seg << " at +" << snr << " dB, DAT-DFT gap " << gap << " dB ("
                << (gap < 0 ? "DFT" : "DAT") << " ahead)\n";
    }
  }
}

void criterion_9() {
  const char* cli = std::getenv("DATX_CLI");
  if (cli == nullptr) {
    report(9, "sweep determinism (byte-identical CSV)", false, "DATX_CLI not set");
    return;
  }
  const std::string out1 = (std::filesystem::temp_directory_path() / "datx_sweep1.csv").string();
  const std::string out2 = (std::filesystem::temp_directory_path() / "datx_sweep2.csv").string();
  const std::string base = std::string("\"") + cli + "\" --seed 12345 sweep --out ";
  const int rc1 = std::system((base + "\"" + out1 + "\"").c_str());
  const int rc2 = std::system((base + "\"" + out2 + "\"").c_str());
  const std::string a = read_file(out1);
  const std::string b = read_file(out2);
  // default grid: 2 transforms x 9 SNRs x 4 segments = 72 records + header
  std::size_t lines = 0;
  for (char c : a) lines += c == '\n';
  report(9, "sweep determinism (byte-identical CSV)",
         rc1 == 0 && rc2 == 0 && !a.empty() && a == b && lines == 73,
         std::to_string(lines) + " lines");
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

void criterion_10() {
  const SpreadingKernel kernel = build_kernel(128, 16000.0);
  const RealSignal s = gen_voiced_surrogate(512, 16000.0, 1);

  bool ok = true;
  for (Transform t : {Transform::kDft, Transform::kDat}) {
    DenoiseConfig config;
    config.transform = t;
    config.alpha = 0.0;
    const RealSignal identity = denoise_signal(s, config, kernel);
    ok = ok && testutil::rel_l2_error(s.samples, identity.samples) <= 1e-10;

    config.alpha = 1e9;
    const RealSignal zero = denoise_signal(s, config, kernel);
    ok = ok && testutil::energy(zero.samples) <= 1e-20;
  }
  report(10, "threshold degeneracy: alpha=0 is identity, huge alpha zeroes", ok);
}

}  // namespace

int main() {
  criterion_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures > 0) {
    std::cout << g_failures << " criterion check(s) FAILED\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
