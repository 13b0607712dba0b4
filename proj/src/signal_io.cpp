#include "datx/signal_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "datx/rng.hpp"
#include "datx/spectral.hpp"

namespace datx {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::string& s, std::uint32_t v) {
  s.push_back(static_cast<char>(v & 0xFF));
  s.push_back(static_cast<char>((v >> 8) & 0xFF));
  s.push_back(static_cast<char>((v >> 16) & 0xFF));
  s.push_back(static_cast<char>((v >> 24) & 0xFF));
}

void put_u16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xFF));
  s.push_back(static_cast<char>((v >> 8) & 0xFF));
}

}  // namespace

WavClip read_wav(const std::string& path, bool downmix) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open WAV file: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t size = bytes.size();

  if (size < 12 || std::memcmp(p, "RIFF", 4) != 0 || std::memcmp(p + 8, "WAVE", 4) != 0) {
    throw std::runtime_error("malformed WAV header: " + path);
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;
  bool have_fmt = false;

  std::size_t pos = 12;
  while (pos + 8 <= size) {
    const std::uint32_t chunk_len = read_u32(p + pos + 4);
    if (pos + 8 + chunk_len > size) throw std::runtime_error("truncated WAV chunk: " + path);
    if (std::memcmp(p + pos, "fmt ", 4) == 0) {
      if (chunk_len < 16) throw std::runtime_error("malformed fmt chunk: " + path);
      format = read_u16(p + pos + 8);
      channels = read_u16(p + pos + 10);
      sample_rate = read_u32(p + pos + 12);
      bits = read_u16(p + pos + 22);
      have_fmt = true;
    } else if (std::memcmp(p + pos, "data", 4) == 0) {
      data = p + pos + 8;
      data_len = chunk_len;
    }
    pos += 8 + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) throw std::runtime_error("malformed WAV header: " + path);
  const bool int_pcm = format == 1 && (bits == 8 || bits == 16 || bits == 24);
  const bool float_pcm = format == 3 && bits == 32;
  if (!int_pcm && !float_pcm) {
    throw std::runtime_error("unsupported WAV codec (format " + std::to_string(format) + ", " +
                             std::to_string(bits) + "-bit): " + path);
  }
  if (channels == 0) throw std::runtime_error("malformed WAV header: zero channels: " + path);
  if (channels > 1 && !downmix) {
    throw std::runtime_error("multichannel WAV rejected (use downmix): " + path);
  }

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * channels;
  const std::size_t n_frames = data_len / frame_bytes;
  if (n_frames == 0) throw std::runtime_error("zero-length WAV data: " + path);

  WavClip clip;
  clip.sample_rate_hz = static_cast<double>(sample_rate);
  clip.source_bits = bits;
  clip.samples.resize(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const unsigned char* sp = data + i * frame_bytes + c * bytes_per_sample;
      double v = 0.0;
      if (float_pcm) {
        float f;
        std::memcpy(&f, sp, 4);
        v = f;
      } else if (bits == 8) {
        v = (static_cast<double>(sp[0]) - 128.0) / 128.0;  // 8-bit WAV is unsigned
      } else if (bits == 16) {
        const std::int16_t x = static_cast<std::int16_t>(sp[0] | (sp[1] << 8));
        v = static_cast<double>(x) / 32768.0;
      } else {  // 24
        std::int32_t x = sp[0] | (sp[1] << 8) | (sp[2] << 16);
        if (x & 0x800000) x |= ~0xFFFFFF;
        v = static_cast<double>(x) / 8388608.0;
      }
      acc += v;
    }
    clip.samples[i] = acc / static_cast<double>(channels);
  }
  return clip;
}

std::size_t write_wav(const WavClip& clip, const std::string& path) {
  const std::size_t n = clip.samples.size();
  std::size_t clipped = 0;

  std::string body;
  body.reserve(44 + 2 * n);
  body += "RIFF";
  put_u32(body, static_cast<std::uint32_t>(36 + 2 * n));
  body += "WAVEfmt ";
  put_u32(body, 16);
  put_u16(body, 1);  // PCM
  put_u16(body, 1);  // mono
  const auto rate = static_cast<std::uint32_t>(std::lround(clip.sample_rate_hz));
  put_u32(body, rate);
  put_u32(body, rate * 2);  // byte rate
  put_u16(body, 2);         // block align
  put_u16(body, 16);
  body += "data";
  put_u32(body, static_cast<std::uint32_t>(2 * n));
  for (double v : clip.samples) {
    double x = v;
    if (x > 1.0 || x < -1.0) {
      ++clipped;
      x = std::clamp(x, -1.0, 1.0);
    }
    auto q = static_cast<long>(std::lround(x * 32768.0));
    q = std::clamp(q, -32768L, 32767L);
    put_u16(body, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw std::runtime_error("write failure: " + path);
  return clipped;
}

std::vector<double> read_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV file: " + path);
  std::vector<double> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line.find_first_not_of("0123456789+-.eE \t\r") != std::string::npos) {
      continue;  // header
    }
    try {
      samples.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": not a number: " + line);
    }
  }
  return samples;
}

void write_signal_csv(const std::vector<double>& samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "sample\n";
  char buf[32];
  for (double v : samples) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << "\n";
  }
}

RealSignal gen_square(double freq_hz, double sample_rate_hz, std::size_t n_samples) {
  if (!(freq_hz > 0.0) || !(freq_hz < sample_rate_hz / 2.0)) {
    throw std::invalid_argument("gen_square: frequency must be in (0, Fs/2)");
  }
  RealSignal s;
  s.sample_rate_hz = sample_rate_hz;
  s.samples.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double phase = std::fmod(static_cast<double>(i) * freq_hz / sample_rate_hz, 1.0);
    s.samples[i] = phase < 0.5 ? 1.0 : -1.0;
  }
  return s;
}

RealSignal gen_voiced_surrogate(std::size_t n_samples, double sample_rate_hz,
                                std::uint64_t seed) {
  constexpr double kFundamentalHz = 120.0;
  constexpr double kMaxHarmonicHz = 4000.0;

  GaussianRng rng(splitmix64(seed));
  RealSignal s;
  s.sample_rate_hz = sample_rate_hz;
  s.samples.assign(n_samples, 0.0);
  for (int k = 1; static_cast<double>(k) * kFundamentalHz < kMaxHarmonicHz; ++k) {
    const double f = static_cast<double>(k) * kFundamentalHz;
    const double r1 = (f - 500.0) / 300.0;
    const double r2 = (f - 1500.0) / 400.0;
    const double env = 1.0 / (1.0 + r1 * r1) + 0.5 / (1.0 + r2 * r2);
    const double phase = kTwoPi * rng.uniform01();
    for (std::size_t i = 0; i < n_samples; ++i) {
      s.samples[i] +=
          env * std::cos(kTwoPi * f * static_cast<double>(i) / sample_rate_hz + phase);
    }
  }
  double peak = 0.0;
  for (double v : s.samples) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    for (double& v : s.samples) v /= peak;
  }
  return s;
}

RealSignal gen_unvoiced_surrogate(std::size_t n_samples, double sample_rate_hz,
                                  std::uint64_t seed) {
  constexpr double kCutoffHz = 2500.0;
  constexpr double kSlopeHz = 300.0;

  GaussianRng rng(splitmix64(seed ^ 0xA5A5A5A5A5A5A5A5ULL));
  std::vector<double> noise(n_samples);
  for (double& v : noise) v = rng.gaussian();

  ComplexSpectrum sh = dft_forward(noise);
  const std::size_t n = n_samples;
  for (std::size_t k = 0; k < n; ++k) {
    const double f =
        static_cast<double>(std::min(k, n - k)) * sample_rate_hz / static_cast<double>(n);
    const double gain = 1.0 / (1.0 + std::exp(-(f - kCutoffHz) / kSlopeHz));
    sh[k] *= gain;
  }
  sh[0] = Complex{0.0, 0.0};  // exact zero mean
  const ComplexVector shaped = dft_inverse(sh);

  RealSignal s;
  s.sample_rate_hz = sample_rate_hz;
  s.samples.resize(n);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s.samples[i] = shaped[i].real();
    peak = std::max(peak, std::abs(s.samples[i]));
  }
  if (peak > 0.0) {
    for (double& v : s.samples) v /= peak;
  }
  return s;
}

}  // namespace datx
