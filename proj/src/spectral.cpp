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

#include "soundplot/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "soundplot/error.hpp"

namespace soundplot {
namespace {

// Maps an index of the centered, reflection-padded signal onto the original
// signal of length n.
long long reflect_index(long long i, long long n) {
  if (n == 1) return 0;
  const long long period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

double bin_frequency(std::size_t k, int sample_rate, std::size_t win_size) {
  return static_cast<double>(k) * sample_rate / static_cast<double>(win_size);
}

FeatureTimeSeries scalar_series(std::string name,
                                const MagnitudeSpectrogram& mag) {
  FeatureTimeSeries out;
  out.name = std::move(name);
  out.frame_times =
      frame_times(mag.frames(), mag.config.hop, mag.sample_rate);
  out.values = Matrix<double>(1, mag.frames());
  return out;
}

double centroid_of(std::span<const double> frame, int sample_rate,
                   std::size_t win_size) {
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < frame.size(); ++k) {
    weighted += bin_frequency(k, sample_rate, win_size) * frame[k];
    total += frame[k];
  }
  return total > 0.0 ? weighted / total : 0.0;
}

}  // namespace

void StftConfig::validate() const {
  if (!is_power_of_two(win_size)) {
    throw Error(ErrorKind::kInvalidConfig,
                "window size must be a power of two");
  }
  if (hop == 0 || hop > win_size) {
    throw Error(ErrorKind::kInvalidConfig, "hop must lie in (0, win_size]");
  }
}

std::vector<double> FeatureTimeSeries::scalar() const {
  std::vector<double> out(frames());
  for (std::size_t m = 0; m < frames(); ++m) out[m] = values(0, m);
  return out;
}

std::vector<double> hann_window(std::size_t size) {
  std::vector<double> w(size);
  for (std::size_t n = 0; n < size; ++n) {
    w[n] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(n) / size);
  }
  return w;
}

std::size_t frame_count(std::size_t signal_length, const StftConfig& config) {
  if (config.centered) return 1 + signal_length / config.hop;
  if (signal_length <= config.win_size) return 1;
  return 1 + (signal_length - config.win_size) / config.hop;
}

std::vector<double> frame_times(std::size_t frames, std::size_t hop,
                                int sample_rate) {
  std::vector<double> t(frames);
  for (std::size_t m = 0; m < frames; ++m) {
    t[m] = static_cast<double>(m * hop) / sample_rate;
  }
  return t;
}

void extract_frame(std::span<const double> signal, const StftConfig& config,
                   std::size_t m, std::span<double> out) {
  const auto n = static_cast<long long>(signal.size());
  const auto w = static_cast<long long>(config.win_size);
  const long long start = static_cast<long long>(m * config.hop) -
                          (config.centered ? w / 2 : 0);
  for (long long j = 0; j < w; ++j) {
    const long long i = start + j;
    if (config.centered) {
      out[j] = signal[reflect_index(i, n)];
    } else {
      out[j] = (i >= 0 && i < n) ? signal[i] : 0.0;
    }
  }
}

ComplexSpectrogram stft(const AudioBuffer& audio, const StftConfig& config) {
  config.validate();
  if (audio.empty()) {
    throw Error(ErrorKind::kAudioTooShort, "cannot transform an empty signal");
  }
  const std::size_t w = config.win_size;
  const std::size_t frames = frame_count(audio.size(), config);
  const FftPlan plan(w);
  const std::vector<double> window = hann_window(w);

  ComplexSpectrogram out;
  out.sample_rate = audio.sample_rate;
  out.config = config;
  out.values = Matrix<Complex>(config.bins(), frames);
  std::vector<double> frame(w);
  for (std::size_t m = 0; m < frames; ++m) {
    extract_frame(audio.samples, config, m, frame);
    for (std::size_t j = 0; j < w; ++j) frame[j] *= window[j];
    plan.forward_real(frame, out.values.column(m));
  }
  return out;
}

AudioBuffer istft(const ComplexSpectrogram& spec,
                  std::optional<std::size_t> length) {
  const StftConfig& config = spec.config;
  config.validate();
  if (config.hop > config.win_size / 2) {
    throw Error(ErrorKind::kNonColaConfig,
                "hop exceeds half the window; overlap-add is ill-conditioned");
  }
  if (spec.bins() != config.bins()) {
    throw Error(ErrorKind::kShapeMismatch, "bin count does not match window");
  }
  const std::size_t w = config.win_size;
  const std::size_t frames = spec.frames();
  const std::size_t n =
      length.value_or(frames > 0 ? (frames - 1) * config.hop : 0);

  AudioBuffer out;
  out.sample_rate = spec.sample_rate;
  out.samples.assign(n, 0.0);
  if (n == 0 || frames == 0) return out;

  const FftPlan plan(w);
  const std::vector<double> window = hann_window(w);
  std::vector<double> weight(n, 0.0);
  std::vector<double> frame(w);
  const auto half = static_cast<long long>(config.centered ? w / 2 : 0);
  const auto len = static_cast<long long>(n);
  for (std::size_t m = 0; m < frames; ++m) {
    plan.inverse_real(spec.values.column(m), frame);
    const long long start = static_cast<long long>(m * config.hop) - half;
    for (std::size_t j = 0; j < w; ++j) {
      long long i = start + static_cast<long long>(j);
      if (config.centered) {
        // Only the padded extent [-w/2, n + w/2) maps back onto the signal.
        if (i < -half || i >= len + half) continue;
        i = reflect_index(i, len);
      } else if (i < 0 || i >= len) {
        continue;
      }
      out.samples[i] += window[j] * frame[j];
      weight[i] += window[j] * window[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.samples[i] = weight[i] > 1e-12 ? out.samples[i] / weight[i] : 0.0;
  }
  return out;
}

MagnitudeSpectrogram magnitude(const ComplexSpectrogram& spec) {
  MagnitudeSpectrogram out;
  out.sample_rate = spec.sample_rate;
  out.config = spec.config;
  out.values = Matrix<double>(spec.bins(), spec.frames());
  auto src = spec.values.data();
  auto dst = out.values.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = std::abs(src[i]);
  return out;
}

namespace {
constexpr double kMelLinearSlope = 200.0 / 3.0;  // Hz per mel below 1 kHz
constexpr double kMelBreakHz = 1000.0;
constexpr double kMelBreak = kMelBreakHz / kMelLinearSlope;
const double kMelLogStep = std::log(6.4) / 27.0;
}  // namespace

double hz_to_mel(double hz) {
  if (hz < kMelBreakHz) return hz / kMelLinearSlope;
  return kMelBreak + std::log(hz / kMelBreakHz) / kMelLogStep;
}

double mel_to_hz(double mel) {
  if (mel < kMelBreak) return mel * kMelLinearSlope;
  return kMelBreakHz * std::exp(kMelLogStep * (mel - kMelBreak));
}

MelFilterbank build_mel_filterbank(std::size_t bands, std::size_t bins,
                                   int sample_rate, double f_min,
                                   std::optional<double> f_max) {
  const double nyquist = sample_rate / 2.0;
  const double top = f_max.value_or(nyquist);
  if (bands == 0 || bins < 2 || sample_rate <= 0) {
    throw Error(ErrorKind::kInvalidRange, "empty filterbank shape");
  }
  if (f_min < 0.0 || f_min >= top || top > nyquist * (1.0 + 1e-12)) {
    throw Error(ErrorKind::kInvalidRange,
                "need 0 <= f_min < f_max <= Nyquist");
  }
  const std::size_t win_size = 2 * (bins - 1);

  std::vector<double> edges(bands + 2);
  const double mel_lo = hz_to_mel(f_min);
  const double mel_hi = hz_to_mel(top);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double mel =
        mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / (bands + 1);
    edges[i] = mel_to_hz(mel);
  }

  MelFilterbank fb;
  fb.sample_rate = sample_rate;
  fb.f_min = f_min;
  fb.f_max = top;
  fb.weights = Matrix<double>(bands, bins);
  for (std::size_t b = 0; b < bands; ++b) {
    const double lower = edges[b];
    const double center = edges[b + 1];
    const double upper = edges[b + 2];
    const double norm = 2.0 / (upper - lower);
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = bin_frequency(k, sample_rate, win_size);
      const double rising = (f - lower) / (center - lower);
      const double falling = (upper - f) / (upper - center);
      fb.weights(b, k) = std::max(0.0, std::min(rising, falling)) * norm;
    }
  }
  return fb;
}

MelSpectrogram mel_spectrogram(const MagnitudeSpectrogram& mag,
                               std::shared_ptr<const MelFilterbank> fb) {
  if (!fb || fb->bins() != mag.bins()) {
    throw Error(ErrorKind::kShapeMismatch,
                "filterbank bin count does not match the spectrogram");
  }
  MelSpectrogram out;
  out.sample_rate = mag.sample_rate;
  out.config = mag.config;
  out.values = Matrix<double>(fb->bands(), mag.frames());
  // Each bin feeds a contiguous run of bands; skip the structural zeros.
  std::vector<std::pair<std::size_t, std::size_t>> support(fb->bins(), {0, 0});
  for (std::size_t k = 0; k < fb->bins(); ++k) {
    auto weights = fb->weights.column(k);
    std::size_t lo = weights.size();
    std::size_t hi = 0;
    for (std::size_t b = 0; b < weights.size(); ++b) {
      if (weights[b] != 0.0) {
        lo = std::min(lo, b);
        hi = b + 1;
      }
    }
    if (lo < hi) support[k] = {lo, hi};
  }
  for (std::size_t m = 0; m < mag.frames(); ++m) {
    auto col = mag.values.column(m);
    auto dst = out.values.column(m);
    for (std::size_t k = 0; k < col.size(); ++k) {
      const double power = col[k] * col[k];
      if (power == 0.0) continue;
      auto weights = fb->weights.column(k);
      for (std::size_t b = support[k].first; b < support[k].second; ++b) {
        dst[b] += weights[b] * power;
      }
    }
  }
  out.filterbank = std::move(fb);
  return out;
}

Matrix<double> power_to_db(const Matrix<double>& power) {
  Matrix<double> db(power.rows(), power.cols());
  auto src = power.data();
  auto dst = db.data();
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = 10.0 * std::log10(std::max(src[i], kPowerFloor));
    peak = std::max(peak, dst[i]);
  }
  for (double& v : dst) v = std::max(v, peak - kDynamicRangeDb);
  return db;
}

std::vector<double> dct_ii(std::span<const double> in, std::size_t count) {
  const std::size_t n = in.size();
  std::vector<double> out(std::min(count, n), 0.0);
  for (std::size_t j = 0; j < out.size(); ++j) {
    double acc = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      acc += in[b] * std::cos(M_PI * static_cast<double>(j) * (2.0 * b + 1.0) /
                              (2.0 * n));
    }
    out[j] = acc * std::sqrt((j == 0 ? 1.0 : 2.0) / n);
  }
  return out;
}

FeatureTimeSeries mfcc(const MelSpectrogram& mel,
                       std::size_t coefficient_count) {
  if (coefficient_count == 0 || coefficient_count > mel.bands()) {
    throw Error(ErrorKind::kInvalidConfig,
                "coefficient count must lie in [1, band count]");
  }
  const Matrix<double> db = power_to_db(mel.values);
  FeatureTimeSeries out;
  out.name = "mfcc";
  out.frame_times = frame_times(mel.frames(), mel.config.hop, mel.sample_rate);
  out.values = Matrix<double>(coefficient_count, mel.frames());
  for (std::size_t m = 0; m < mel.frames(); ++m) {
    const auto coeffs = dct_ii(db.column(m), coefficient_count);
    std::copy(coeffs.begin(), coeffs.end(), out.values.column(m).begin());
  }
  return out;
}

FeatureTimeSeries spectral_centroid(const MagnitudeSpectrogram& mag) {
  FeatureTimeSeries out = scalar_series("centroid_hz", mag);
  for (std::size_t m = 0; m < mag.frames(); ++m) {
    out.values(0, m) = centroid_of(mag.values.column(m), mag.sample_rate,
                                   mag.config.win_size);
  }
  return out;
}

FeatureTimeSeries spectral_bandwidth(const MagnitudeSpectrogram& mag) {
  FeatureTimeSeries out = scalar_series("bandwidth_hz", mag);
  const std::size_t w = mag.config.win_size;
  for (std::size_t m = 0; m < mag.frames(); ++m) {
    auto frame = mag.values.column(m);
    const double mu = centroid_of(frame, mag.sample_rate, w);
    double spread = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < frame.size(); ++k) {
      const double d = bin_frequency(k, mag.sample_rate, w) - mu;
      spread += d * d * frame[k];
      total += frame[k];
    }
    out.values(0, m) = total > 0.0 ? std::sqrt(spread / total) : 0.0;
  }
  return out;
}

FeatureTimeSeries spectral_rolloff(const MagnitudeSpectrogram& mag,
                                   double fraction) {
  FeatureTimeSeries out = scalar_series("rolloff_hz", mag);
  for (std::size_t m = 0; m < mag.frames(); ++m) {
    auto frame = mag.values.column(m);
    const double total = std::accumulate(frame.begin(), frame.end(), 0.0);
    if (total <= 0.0) continue;
    const double target = fraction * total;
    double cumulative = 0.0;
    for (std::size_t k = 0; k < frame.size(); ++k) {
      cumulative += frame[k];
      if (cumulative >= target) {
        out.values(0, m) =
            bin_frequency(k, mag.sample_rate, mag.config.win_size);
        break;
      }
    }
  }
  return out;
}

FeatureTimeSeries spectral_contrast(const MagnitudeSpectrogram& mag,
                                    std::size_t band_count,
                                    double first_edge_hz, double quantile) {
  FeatureTimeSeries out;
  out.name = "contrast_db";
  out.frame_times = frame_times(mag.frames(), mag.config.hop, mag.sample_rate);
  out.values = Matrix<double>(band_count + 1, mag.frames());

  // Band b spans [edge_b, edge_{b+1}); the last band runs to Nyquist.
  std::vector<double> edges(band_count + 2, 0.0);
  for (std::size_t b = 1; b < edges.size(); ++b) {
    edges[b] = first_edge_hz * std::pow(2.0, static_cast<double>(b - 1));
  }
  std::vector<std::vector<std::size_t>> members(band_count + 1);
  for (std::size_t k = 0; k < mag.bins(); ++k) {
    const double f = bin_frequency(k, mag.sample_rate, mag.config.win_size);
    for (std::size_t b = 0; b <= band_count; ++b) {
      if (f >= edges[b] && (b == band_count || f < edges[b + 1])) {
        members[b].push_back(k);
        break;
      }
    }
  }

  std::vector<double> sorted;
  for (std::size_t m = 0; m < mag.frames(); ++m) {
    auto frame = mag.values.column(m);
    for (std::size_t b = 0; b <= band_count; ++b) {
      if (members[b].empty()) continue;
      sorted.clear();
      for (std::size_t k : members[b]) sorted.push_back(frame[k]);
      std::sort(sorted.begin(), sorted.end());
      const auto take = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::lround(quantile * sorted.size())));
      double valley = 0.0;
      double peak = 0.0;
      for (std::size_t i = 0; i < take; ++i) {
        valley += sorted[i];
        peak += sorted[sorted.size() - 1 - i];
      }
      valley /= static_cast<double>(take);
      peak /= static_cast<double>(take);
      out.values(b, m) = 20.0 * std::log10(std::max(peak, kPowerFloor) /
                                           std::max(valley, kPowerFloor));
    }
  }
  return out;
}

FeatureTimeSeries zero_crossing_rate(const AudioBuffer& audio,
                                     const StftConfig& config) {
  config.validate();
  if (audio.empty()) {
    throw Error(ErrorKind::kAudioTooShort, "cannot frame an empty signal");
  }
  const std::size_t w = config.win_size;
  const std::size_t frames = frame_count(audio.size(), config);
  FeatureTimeSeries out;
  out.name = "zcr";
  out.frame_times = frame_times(frames, config.hop, audio.sample_rate);
  out.values = Matrix<double>(1, frames);
  std::vector<double> frame(w);
  for (std::size_t m = 0; m < frames; ++m) {
    extract_frame(audio.samples, config, m, frame);
    std::size_t crossings = 0;
    for (std::size_t j = 0; j + 1 < w; ++j) {
      if ((frame[j] < 0.0) != (frame[j + 1] < 0.0)) ++crossings;
    }
    out.values(0, m) = static_cast<double>(crossings) / static_cast<double>(w);
  }
  return out;
}

FeatureTimeSeries rms_energy(const MagnitudeSpectrogram& mag) {
  FeatureTimeSeries out = scalar_series("rms", mag);
  for (std::size_t m = 0; m < mag.frames(); ++m) {
    auto frame = mag.values.column(m);
    double energy = 0.0;
    for (double v : frame) energy += v * v;
    out.values(0, m) =
        frame.empty() ? 0.0 : std::sqrt(energy / static_cast<double>(frame.size()));
  }
  return out;
}

}  // namespace soundplot
