// Command-line driver: kernel export, forward/inverse transform, spectrum
// comparison, single-file denoising and the full SNR sweep. All numeric
// output is CSV with 17 significant digits.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "datx/denoise.hpp"
#include "datx/psychoacoustics.hpp"
#include "datx/signal_io.hpp"
#include "datx/spectral.hpp"
#include "datx/transform.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 10007;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string db_or_inf(double linear) {
  if (linear <= 0.0) return "-inf";
  return fmt17(20.0 * std::log10(linear));
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

datx::RealSignal load_signal(const std::string& path, double fs, bool downmix) {
  datx::RealSignal s;
  if (has_suffix(path, ".wav")) {
    datx::WavClip clip = datx::read_wav(path, downmix);
    s.samples = std::move(clip.samples);
    s.sample_rate_hz = clip.sample_rate_hz;
  } else {
    s.samples = datx::read_signal_csv(path);
    s.sample_rate_hz = fs;
  }
  return s;
}

void save_signal(const datx::RealSignal& s, const std::string& path) {
  if (has_suffix(path, ".wav")) {
    datx::WavClip clip;
    clip.samples = s.samples;
    clip.sample_rate_hz = s.sample_rate_hz;
    const std::size_t clipped = datx::write_wav(clip, path);
    if (clipped > 0) {
      std::cerr << "warning: " << clipped << " sample(s) clipped to [-1, 1]\n";
    }
  } else {
    datx::write_signal_csv(s.samples, path);
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

// "5:10:55" -> {5, 15, 25, 35, 45, 55}; a bare "7" is a single row.
std::vector<std::size_t> parse_row_filter(const std::string& text, std::size_t m_count) {
  std::vector<std::size_t> rows;
  long start = 0, step = 1, stop = 0;
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    start = stop = std::stol(text);
  } else {
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw CLI::ValidationError("--rows", "expected start:step:stop");
    start = std::stol(text.substr(0, c1));
    step = std::stol(text.substr(c1 + 1, c2 - c1 - 1));
    stop = std::stol(text.substr(c2 + 1));
  }
  if (step <= 0) throw CLI::ValidationError("--rows", "step must be positive");
  for (long m = start; m <= stop; m += step) {
    if (m < 0 || static_cast<std::size_t>(m) >= m_count) {
      throw CLI::ValidationError("--rows", "row index out of range");
    }
    rows.push_back(static_cast<std::size_t>(m));
  }
  return rows;
}

// "-12:3:12" -> {-12, -9, ..., 12}
std::vector<double> parse_snr_grid(const std::string& text) {
  std::vector<double> grid;
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw CLI::ValidationError("--snr-grid", "expected start:step:stop");
  }
  const double start = std::stod(text.substr(0, c1));
  const double step = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  const double stop = std::stod(text.substr(c2 + 1));
  if (!(step > 0.0)) throw CLI::ValidationError("--snr-grid", "step must be positive");
  for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
  if (grid.empty()) throw CLI::ValidationError("--snr-grid", "empty grid");
  return grid;
}

void write_coefficients_csv(const datx::DatCoefficients& coeffs, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "# N=" << coeffs.n_time << " M=" << coeffs.n_bands
      << " fs=" << fmt17(coeffs.sample_rate_hz) << "\n";
  out << "j";
  for (std::size_t m = 0; m < coeffs.n_bands; ++m) out << ",s" << m << "_re,s" << m << "_im";
  out << "\n";
  for (std::size_t j = 0; j < coeffs.n_time; ++j) {
    out << j;
    for (std::size_t m = 0; m < coeffs.n_bands; ++m) {
      const datx::Complex& c = coeffs.at(j, m);
      out << "," << fmt17(c.real()) << "," << fmt17(c.imag());
    }
    out << "\n";
  }
}

datx::DatCoefficients read_coefficients_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coefficient CSV: " + path);
  std::string line;
  std::size_t line_no = 0;

  auto fail = [&](const std::string& what) -> std::runtime_error {
    return std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
  };

  datx::DatCoefficients coeffs;
  ++line_no;
  if (!std::getline(in, line)) throw fail("empty coefficient file");
  std::size_t n = 0, m = 0;
  double fs = 0.0;
  if (std::sscanf(line.c_str(), "# N=%zu M=%zu fs=%lf", &n, &m, &fs) != 3) {
    throw fail("expected header '# N=<n> M=<m> fs=<rate>'");
  }
  coeffs.n_time = n;
  coeffs.n_bands = m;
  coeffs.sample_rate_hz = fs;

  ++line_no;
  if (!std::getline(in, line)) throw fail("missing column header");

  coeffs.values.reserve(n * m);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (!std::getline(ss, cell, ',')) throw fail("missing time index");
    std::size_t col = 0;
    double re = 0.0, im = 0.0;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      try {
        v = std::stod(cell);
      } catch (const std::exception&) {
        throw fail("not a number: " + cell);
      }
      if (col % 2 == 0) {
        re = v;
      } else {
        im = v;
        coeffs.values.emplace_back(re, im);
      }
      ++col;
    }
    if (col != 2 * m) throw fail("expected " + std::to_string(2 * m) + " value columns");
  }
  if (coeffs.values.size() != n * m) {
    ++line_no;
    throw fail("expected " + std::to_string(n) + " coefficient rows");
  }
  return coeffs;
}

std::vector<datx::Segment> builtin_segments(std::size_t n_samples, double fs) {
  // Two seeds per class stand in for the male/female material.
  return {
      {"unvoiced_a", datx::gen_unvoiced_surrogate(n_samples, fs, 3)},
      {"unvoiced_b", datx::gen_unvoiced_surrogate(n_samples, fs, 4)},
      {"voiced_a", datx::gen_voiced_surrogate(n_samples, fs, 1)},
      {"voiced_b", datx::gen_voiced_surrogate(n_samples, fs, 2)},
  };
}

void write_report_csv(const datx::DenoiseReport& report, std::ostream& out) {
  out << "segment,transform,input_snr_db,output_snr_db,seed\n";
  for (const auto& r : report.records) {
    out << r.segment << "," << datx::transform_name(r.transform) << "," << fmt17(r.input_snr_db)
        << "," << fmt17(r.output_snr_db) << "," << r.seed << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete auditory transform toolkit"};
  app.require_subcommand(1);

  std::size_t n = 128;
  double fs = 16000.0;
  double alpha = 1.0;
  double dat_scale = datx::kDatThresholdScale;
  std::uint64_t seed = kDefaultSeed;
  std::string in_path, out_path;
  std::string transform_name = "dat";
  bool downmix = false;

  app.add_option("--n", n, "Frame length (power of 2)")->capture_default_str();
  app.add_option("--fs", fs, "Sample rate in Hz")->capture_default_str();
  app.add_option("--alpha", alpha, "Threshold scale")->capture_default_str();
  app.add_option("--dat-scale", dat_scale, "Extra DAT-domain threshold scale")
      ->capture_default_str();
  app.add_option("--seed", seed, "Master random seed")
      ->envname("DATX_SEED")
      ->capture_default_str();
  app.add_flag("--downmix", downmix, "Average stereo WAV input to mono");

  auto* kernel_cmd = app.add_subcommand("kernel", "Export the spreading kernel as CSV");
  std::string rows_filter;
  kernel_cmd->add_option("--out", out_path, "Output CSV path")->required();
  kernel_cmd->add_option("--rows", rows_filter, "Row filter, start:step:stop (e.g. 5:10:55)");

  auto* transform_cmd = app.add_subcommand("transform", "Forward transform of one frame");
  transform_cmd->add_option("--in", in_path, "Input signal (.wav or .csv)")->required();
  transform_cmd->add_option("--out", out_path, "Output coefficient CSV")->required();

  auto* invert_cmd = app.add_subcommand("invert", "Inverse transform from a coefficient CSV");
  invert_cmd->add_option("--in", in_path, "Input coefficient CSV")->required();
  invert_cmd->add_option("--out", out_path, "Output signal (.wav or .csv)")->required();

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Per-frame DFT and DAT spectra");
  spectrum_cmd->add_option("--in", in_path, "Input signal (.wav or .csv)")->required();
  spectrum_cmd->add_option("--out", out_path, "Output CSV path")->required();

  auto* denoise_cmd = app.add_subcommand("denoise", "Threshold-denoise one file");
  std::string clean_path;
  double target_snr = std::numeric_limits<double>::quiet_NaN();
  denoise_cmd->add_option("--in", in_path, "Noisy input (.wav or .csv)");
  denoise_cmd->add_option("--clean", clean_path, "Clean reference (.wav or .csv)");
  denoise_cmd->add_option("--target-snr", target_snr,
                          "Add noise to --clean at this SNR instead of reading --in");
  denoise_cmd->add_option("--transform", transform_name, "dft or dat")->capture_default_str();
  denoise_cmd->add_option("--out", out_path, "Denoised output (.wav or .csv)")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "Run the DAT-vs-DFT SNR sweep");
  std::string snr_grid_text = "-12:3:12";
  std::vector<std::string> segment_paths;
  sweep_cmd->add_option("--snr-grid", snr_grid_text, "start:step:stop in dB")
      ->capture_default_str();
  sweep_cmd->add_option("--segments", segment_paths,
                        "User segment files; default is the built-in surrogates");
  sweep_cmd->add_option("--out", out_path, "Report CSV path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!datx::is_power_of_two(n) || n < 4) {
      throw std::runtime_error("--n must be a power of 2, >= 4");
    }

    if (kernel_cmd->parsed()) {
      const datx::SpreadingKernel kernel = datx::build_kernel(n, fs);
      std::vector<std::size_t> rows;
      if (rows_filter.empty()) {
        for (std::size_t m = 0; m < kernel.band_count(); ++m) rows.push_back(m);
      } else {
        rows = parse_row_filter(rows_filter, kernel.band_count());
      }
      std::ofstream out = open_out(out_path);
      out << "m";
      for (std::size_t k = 0; k < n; ++k) out << "," << k;
      out << "\n";
      for (std::size_t m : rows) {
        out << m;
        for (std::size_t k = 0; k < n; ++k) out << "," << fmt17(kernel.at(m, k));
        out << "\n";
      }
    } else if (transform_cmd->parsed()) {
      datx::RealSignal s = load_signal(in_path, fs, downmix);
      if (s.size() < n) throw std::runtime_error("input shorter than one frame");
      s.samples.resize(n);  // first frame
      const datx::SpreadingKernel kernel = datx::build_kernel(n, fs);
      write_coefficients_csv(datx::dat_forward_fast(s, kernel), out_path);
    } else if (invert_cmd->parsed()) {
      const datx::DatCoefficients coeffs = read_coefficients_csv(in_path);
      if (app.get_option("--n")->count() > 0 && coeffs.n_time != n) {
        throw std::runtime_error("coefficient CSV N=" + std::to_string(coeffs.n_time) +
                                 " does not match --n " + std::to_string(n));
      }
      const datx::SpreadingKernel kernel =
          datx::build_kernel(coeffs.n_time, coeffs.sample_rate_hz);
      save_signal(datx::dat_inverse(coeffs, kernel), out_path);
    } else if (spectrum_cmd->parsed()) {
      const datx::RealSignal s = load_signal(in_path, fs, downmix);
      if (s.size() < n) throw std::runtime_error("input shorter than one frame");
      const datx::SpreadingKernel kernel = datx::build_kernel(n, fs);
      std::ofstream out = open_out(out_path);
      out << "frame,kind,index,freq_hz,linear,db\n";
      const std::size_t n_frames = s.size() / n;
      for (std::size_t f = 0; f < n_frames; ++f) {
        datx::RealSignal frame;
        frame.sample_rate_hz = s.sample_rate_hz;
        frame.samples.assign(s.samples.begin() + static_cast<std::ptrdiff_t>(f * n),
                             s.samples.begin() + static_cast<std::ptrdiff_t>((f + 1) * n));
        const datx::ComplexSpectrum sh = datx::dft_forward(frame);
        for (std::size_t k = 0; k <= n / 2; ++k) {
          const double mag = std::abs(sh[k]);
          out << f << ",dft," << k << "," << fmt17(fs * static_cast<double>(k) / static_cast<double>(n))
              << "," << fmt17(mag) << "," << db_or_inf(mag) << "\n";
        }
        const datx::DatSpectrum spec = datx::dat_spectrum(frame, kernel);
        for (std::size_t m = 0; m < spec.values.size(); ++m) {
          out << f << ",dat," << m << "," << fmt17(spec.band_frequencies_hz[m]) << ","
              << fmt17(spec.values[m]) << "," << db_or_inf(spec.values[m]) << "\n";
        }
      }
    } else if (denoise_cmd->parsed()) {
      datx::DenoiseConfig config;
      config.alpha = alpha;
      config.dat_scale = dat_scale;
      config.frame_length = n;
      config.sample_rate_hz = fs;
      if (transform_name == "dft") {
        config.transform = datx::Transform::kDft;
      } else if (transform_name == "dat") {
        config.transform = datx::Transform::kDat;
      } else {
        throw std::runtime_error("--transform must be dft or dat");
      }

      datx::RealSignal clean, noisy;
      const bool have_clean = !clean_path.empty();
      if (have_clean) clean = load_signal(clean_path, fs, downmix);
      if (!std::isnan(target_snr)) {
        if (!have_clean) throw std::runtime_error("--target-snr requires --clean");
        noisy = datx::add_noise_at_snr(clean, target_snr, seed);
      } else {
        if (in_path.empty()) throw std::runtime_error("need --in, or --clean with --target-snr");
        noisy = load_signal(in_path, fs, downmix);
      }

      const datx::SpreadingKernel kernel = datx::build_kernel(n, fs);
      const datx::RealSignal rec = datx::denoise_signal(noisy, config, kernel);
      save_signal(rec, out_path);
      if (have_clean) {
        std::cout << "transform=" << transform_name
                  << " input_snr_db=" << fmt17(datx::snr_db(clean, noisy))
                  << " output_snr_db=" << fmt17(datx::snr_db(clean, rec)) << "\n";
      }
    } else if (sweep_cmd->parsed()) {
      datx::SweepConfig config;
      config.snr_grid_db = parse_snr_grid(snr_grid_text);
      config.master_seed = seed;
      config.denoise.alpha = alpha;
      config.denoise.dat_scale = dat_scale;
      config.denoise.frame_length = n;
      config.denoise.sample_rate_hz = fs;

      std::vector<datx::Segment> segments;
      if (segment_paths.empty()) {
        segments = builtin_segments(512, fs);
      } else {
        for (const std::string& path : segment_paths) {
          segments.push_back({path, load_signal(path, fs, downmix)});
        }
      }
      const datx::DenoiseReport report = datx::run_sweep(segments, config);
      if (out_path.empty()) {
        write_report_csv(report, std::cout);
      } else {
        std::ofstream out = open_out(out_path);
        write_report_csv(report, out);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
