// Copyright 2026 The SoundPlot Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "soundplot/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numeric>
#include <optional>

#include "soundplot/error.hpp"

namespace soundplot {
namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

constexpr int kResampleZeroCrossings = 64;
constexpr double kResampleKaiserBeta = 12.0;
constexpr std::size_t kMaxResamplePhases = 4096;

constexpr std::size_t kSilenceFrame = 2048;
constexpr std::size_t kSilenceHop = 512;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

struct FormatChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

FormatChunk parse_format(const unsigned char* p, std::uint32_t size) {
  if (size < 16) throw Error(ErrorKind::kCorruptHeader, "fmt chunk too short");
  FormatChunk fmt;
  fmt.format = read_u16(p);
  fmt.channels = read_u16(p + 2);
  fmt.sample_rate = read_u32(p + 4);
  fmt.block_align = read_u16(p + 12);
  fmt.bits = read_u16(p + 14);
  if (fmt.format == kFormatExtensible) {
    if (size < 40) {
      throw Error(ErrorKind::kCorruptHeader, "extensible fmt chunk too short");
    }
    // First two bytes of the sub-format GUID carry the actual codec tag.
    fmt.format = read_u16(p + 24);
  }
  if (fmt.format != kFormatPcm && fmt.format != kFormatFloat) {
    throw Error(ErrorKind::kUnsupportedFormat,
                "codec tag 0x" + [](unsigned v) {
                  char buf[8];
                  std::snprintf(buf, sizeof buf, "%04x", v);
                  return std::string(buf);
                }(fmt.format) + " is not PCM or IEEE float");
  }
  const bool int_ok = fmt.format == kFormatPcm &&
                      (fmt.bits == 16 || fmt.bits == 24 || fmt.bits == 32);
  const bool float_ok =
      fmt.format == kFormatFloat && (fmt.bits == 32 || fmt.bits == 64);
  if (!int_ok && !float_ok) {
    throw Error(ErrorKind::kUnsupportedFormat,
                std::to_string(fmt.bits) + "-bit samples are not supported");
  }
  if (fmt.channels == 0 || fmt.sample_rate == 0) {
    throw Error(ErrorKind::kCorruptHeader, "zero channels or sample rate");
  }
  if (fmt.block_align != fmt.channels * (fmt.bits / 8)) {
    throw Error(ErrorKind::kCorruptHeader, "block alignment mismatch");
  }
  return fmt;
}

double decode_sample(const unsigned char* p, const FormatChunk& fmt) {
  if (fmt.format == kFormatFloat) {
    if (fmt.bits == 32) {
      float v;
      std::memcpy(&v, p, sizeof v);
      return v;
    }
    double v;
    std::memcpy(&v, p, sizeof v);
    return v;
  }
  switch (fmt.bits) {
    case 16:
      return static_cast<std::int16_t>(read_u16(p)) / 32768.0;
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    default:
      return static_cast<std::int32_t>(read_u32(p)) / 2147483648.0;
  }
}

double bessel_i0(double x) {
  double sum = 1.0;
  double term = 1.0;
  const double q = x * x / 4.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// Windowed-sinc kernel evaluated at `offset` source samples from the output
// instant, already scaled for the cutoff `scale` = min(1, target/source).
double resample_kernel(double offset, double scale, double i0_beta) {
  const double x = offset * scale;
  const double half_width = kResampleZeroCrossings;
  if (std::abs(x) >= half_width) return 0.0;
  const double r = x / half_width;
  const double window =
      bessel_i0(kResampleKaiserBeta * std::sqrt(1.0 - r * r)) / i0_beta;
  const double sinc =
      x == 0.0 ? 1.0 : std::sin(M_PI * x) / (M_PI * x);
  return scale * sinc * window;
}

}  // namespace

MultichannelAudio decode_wav(std::span<const unsigned char> bytes,
                             std::string source_name) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorKind::kUnsupportedFormat,
                "'" + source_name + "' is not a RIFF/WAVE file");
  }
  std::optional<FormatChunk> fmt;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t available = bytes.size() - pos - 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size > available) {
        throw Error(ErrorKind::kCorruptHeader, "truncated fmt chunk");
      }
      fmt = parse_format(chunk + 8, size);
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      // Streaming writers leave the size field at 0 or 0xFFFFFFFF.
      data_size = std::min<std::size_t>(size, available);
      if (size == 0) data_size = available;
      break;
    }
    pos += 8 + static_cast<std::size_t>(size) + (size & 1u);
  }
  if (!fmt) throw Error(ErrorKind::kCorruptHeader, "missing fmt chunk");
  if (!data) throw Error(ErrorKind::kCorruptHeader, "missing data chunk");

  const std::size_t frames = data_size / fmt->block_align;
  if (frames == 0) {
    throw Error(ErrorKind::kEmptyAudio,
                "'" + source_name + "' contains no sample frames");
  }
  MultichannelAudio out;
  out.sample_rate = static_cast<int>(fmt->sample_rate);
  out.source_name = std::move(source_name);
  out.channels.assign(fmt->channels, std::vector<double>(frames));
  const std::size_t width = fmt->bits / 8;
  for (std::size_t i = 0; i < frames; ++i) {
    const unsigned char* frame = data + i * fmt->block_align;
    for (std::size_t c = 0; c < fmt->channels; ++c) {
      const double v = decode_sample(frame + c * width, *fmt);
      out.channels[c][i] = std::isfinite(v) ? v : 0.0;
    }
  }
  return out;
}

MultichannelAudio load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!std::filesystem::is_regular_file(path) || !in) {
    throw Error(ErrorKind::kFileNotFound,
                "cannot open '" + path.string() + "'");
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return decode_wav(bytes, path.stem().string());
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& audio) {
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(audio.samples.size() * 2);
  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  auto put = [&out](std::uint32_t v, int n) {
    for (int i = 0; i < n; ++i) out.push_back((v >> (8 * i)) & 0xFF);
  };
  auto tag = [&out](const char* s) { out.insert(out.end(), s, s + 4); };
  tag("RIFF");
  put(36 + data_bytes, 4);
  tag("WAVE");
  tag("fmt ");
  put(16, 4);
  put(kFormatPcm, 2);
  put(1, 2);
  put(static_cast<std::uint32_t>(audio.sample_rate), 4);
  put(static_cast<std::uint32_t>(audio.sample_rate) * 2, 4);
  put(2, 2);
  put(16, 2);
  tag("data");
  put(data_bytes, 4);
  for (double s : audio.samples) {
    const double clipped = std::clamp(s, -1.0, 1.0);
    const long code = std::lround(clipped * 32767.0);
    put(static_cast<std::uint16_t>(static_cast<std::int16_t>(code)), 2);
  }
  std::ofstream file(path, std::ios::binary);
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) {
    throw Error(ErrorKind::kIoError, "cannot write '" + path.string() + "'");
  }
}

AudioBuffer to_mono(const MultichannelAudio& audio) {
  AudioBuffer out;
  out.sample_rate = audio.sample_rate;
  out.source_name = audio.source_name;
  if (audio.channels.empty()) return out;
  if (audio.channels.size() == 1) {
    out.samples = audio.channels.front();
    return out;
  }
  const double count = static_cast<double>(audio.channels.size());
  out.samples.assign(audio.frames(), 0.0);
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    double sum = 0.0;
    for (const auto& channel : audio.channels) sum += channel[i];
    out.samples[i] = sum / count;
  }
  return out;
}

AudioBuffer resample(const AudioBuffer& audio, int target_rate) {
  if (target_rate <= 0 || audio.sample_rate <= 0) {
    throw Error(ErrorKind::kInvalidConfig, "sample rates must be positive");
  }
  if (audio.sample_rate == target_rate) return audio;

  const long long source = audio.sample_rate;
  const long long target = target_rate;
  const long long g = std::gcd(source, target);
  const long long step = source / g;    // source advance per output, in 1/phases
  const long long phases = target / g;  // distinct fractional offsets
  const double scale = std::min(1.0, static_cast<double>(target) / source);
  const int reach = static_cast<int>(std::ceil(kResampleZeroCrossings / scale));
  const double i0_beta = bessel_i0(kResampleKaiserBeta);

  const std::size_t n_in = audio.samples.size();
  const auto n_out = static_cast<std::size_t>(
      std::llround(static_cast<double>(n_in) * target / source));

  // Kernel taps for each fractional phase, indexed by j - base in
  // [-reach, reach], where base = floor(t) and t is the output instant.
  const std::size_t taps = 2 * static_cast<std::size_t>(reach) + 1;
  const bool tabulate = static_cast<std::size_t>(phases) <= kMaxResamplePhases;
  std::vector<double> table;
  if (tabulate) {
    table.resize(static_cast<std::size_t>(phases) * taps);
    for (long long p = 0; p < phases; ++p) {
      const double frac = static_cast<double>(p) / phases;
      for (std::size_t k = 0; k < taps; ++k) {
        const double offset = static_cast<double>(k) - reach - frac;
        table[p * taps + k] = resample_kernel(offset, scale, i0_beta);
      }
    }
  }

  AudioBuffer out;
  out.sample_rate = target_rate;
  out.source_name = audio.source_name;
  out.samples.assign(n_out, 0.0);
  std::vector<double> row(taps);
  for (std::size_t n = 0; n < n_out; ++n) {
    const long long pos = static_cast<long long>(n) * step;
    const long long base = pos / phases;
    const long long phase = pos % phases;
    const double* kernel;
    if (tabulate) {
      kernel = &table[phase * taps];
    } else {
      const double frac = static_cast<double>(phase) / phases;
      for (std::size_t k = 0; k < taps; ++k) {
        row[k] = resample_kernel(static_cast<double>(k) - reach - frac, scale,
                                 i0_beta);
      }
      kernel = row.data();
    }
    double acc = 0.0;
    const long long lo = std::max<long long>(0, base - reach);
    const long long hi =
        std::min<long long>(static_cast<long long>(n_in) - 1, base + reach);
    for (long long j = lo; j <= hi; ++j) {
      acc += audio.samples[j] * kernel[j - base + reach];
    }
    out.samples[n] = acc;
  }
  return out;
}

AudioBuffer normalize(const AudioBuffer& audio) {
  double peak = 0.0;
  for (double s : audio.samples) peak = std::max(peak, std::abs(s));
  if (peak == 0.0) return audio;
  AudioBuffer out = audio;
  for (double& s : out.samples) s /= peak;
  return out;
}

AudioBuffer trim_duration(const AudioBuffer& audio, double max_duration_s) {
  if (!(max_duration_s > 0.0)) {
    throw Error(ErrorKind::kInvalidConfig, "max_duration_s must be positive");
  }
  const auto limit = static_cast<std::size_t>(
      std::floor(max_duration_s * audio.sample_rate + 1e-9));
  if (audio.samples.size() <= limit) return audio;
  AudioBuffer out;
  out.sample_rate = audio.sample_rate;
  out.source_name = audio.source_name;
  out.samples.assign(audio.samples.begin(),
                     audio.samples.begin() + static_cast<std::ptrdiff_t>(limit));
  return out;
}

AudioBuffer remove_silence(const AudioBuffer& audio,
                           const PreprocessConfig& config) {
  if (!(config.silence_floor_db > 0.0)) {
    throw Error(ErrorKind::kInvalidConfig, "silence_floor_db must be positive");
  }
  const std::size_t n = audio.samples.size();
  if (n < kSilenceFrame) return audio;

  // Frames start at m * hop for every m with m * hop < n; the tail frame is
  // zero padded.
  const std::size_t frame_count = (n - 1) / kSilenceHop + 1;
  std::vector<double> rms(frame_count, 0.0);
  double peak = 0.0;
  for (std::size_t m = 0; m < frame_count; ++m) {
    const std::size_t start = m * kSilenceHop;
    const std::size_t stop = std::min(n, start + kSilenceFrame);
    double energy = 0.0;
    for (std::size_t i = start; i < stop; ++i) {
      energy += audio.samples[i] * audio.samples[i];
    }
    rms[m] = std::sqrt(energy / kSilenceFrame);
    peak = std::max(peak, rms[m]);
  }
  if (peak == 0.0) {
    throw Error(ErrorKind::kAllSilent, "every frame is digital silence");
  }
  const double floor = peak * std::pow(10.0, -config.silence_floor_db / 20.0);
  std::size_t first = frame_count;
  std::size_t last = 0;
  for (std::size_t m = 0; m < frame_count; ++m) {
    if (rms[m] >= floor) {
      first = std::min(first, m);
      last = m;
    }
  }
  if (first == frame_count) {
    throw Error(ErrorKind::kAllSilent, "no frame above the silence floor");
  }

  // The frame before `first` is silent, so everything audible in `first`
  // lies in its final hop; symmetrically for the frame after `last`.
  std::size_t begin =
      first == 0 ? 0 : first * kSilenceHop + kSilenceFrame - kSilenceHop;
  std::size_t end =
      last + 1 == frame_count ? n : std::min(n, last * kSilenceHop + kSilenceHop);
  if (begin >= end) {
    // Short bursts: fall back to the full extent of the retained frames.
    begin = first * kSilenceHop;
    end = std::min(n, last * kSilenceHop + kSilenceFrame);
  }
  if (begin == 0 && end == n) return audio;

  AudioBuffer out;
  out.sample_rate = audio.sample_rate;
  out.source_name = audio.source_name;
  out.samples.assign(audio.samples.begin() + static_cast<std::ptrdiff_t>(begin),
                     audio.samples.begin() + static_cast<std::ptrdiff_t>(
                                                 end));
  return out;
}

AudioBuffer load_and_preprocess(const std::filesystem::path& path,
                                const PreprocessConfig& config) {
  AudioBuffer audio = resample(to_mono(load_wav(path)), kCanonicalSampleRate);
  if (config.trim) audio = trim_duration(audio, config.max_duration_s);
  if (config.remove_silence) {
    try {
      audio = remove_silence(audio, config);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kAllSilent) throw;
    }
  }
  return normalize(audio);
}

}  // namespace soundplot
