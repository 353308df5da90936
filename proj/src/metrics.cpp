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

#include "soundplot/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "soundplot/error.hpp"

namespace soundplot {
namespace {

AudioBuffer truncated(const AudioBuffer& audio, std::size_t length) {
  AudioBuffer out;
  out.sample_rate = audio.sample_rate;
  out.source_name = audio.source_name;
  out.samples.assign(audio.samples.begin(),
                     audio.samples.begin() + static_cast<std::ptrdiff_t>(length));
  return out;
}

std::size_t common_length(const AudioBuffer& a, const AudioBuffer& b) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n == 0) throw Error(ErrorKind::kEmptySignal, "no overlapping samples");
  return n;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> align(
    std::span<const double> reference, std::span<const double> estimate) {
  const std::size_t n = std::min(reference.size(), estimate.size());
  if (n == 0) throw Error(ErrorKind::kEmptySignal, "no overlapping samples");
  return {std::vector<double>(reference.begin(), reference.begin() + n),
          std::vector<double>(estimate.begin(), estimate.begin() + n)};
}

double snr_db(std::span<const double> reference,
              std::span<const double> estimate) {
  const auto [x, y] = align(reference, estimate);
  double signal = 0.0;
  double noise = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    signal += x[i] * x[i];
    noise += (x[i] - y[i]) * (x[i] - y[i]);
  }
  if (signal == 0.0) return -kSnrCapDb;
  if (noise == 0.0) return kSnrCapDb;
  return std::clamp(10.0 * std::log10(signal / noise), -kSnrCapDb, kSnrCapDb);
}

double pearson(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n == 0) throw Error(ErrorKind::kEmptySignal, "no overlapping samples");
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) return 0.0;
  return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

double waveform_correlation(std::span<const double> reference,
                            std::span<const double> estimate) {
  const auto [x, y] = align(reference, estimate);
  return pearson(x, y);
}

double spectral_correlation(const AudioBuffer& reference,
                            const AudioBuffer& estimate,
                            const StftConfig& config) {
  const std::size_t n = common_length(reference, estimate);
  const auto a = magnitude(stft(truncated(reference, n), config));
  const auto b = magnitude(stft(truncated(estimate, n), config));
  return pearson(a.values.data(), b.values.data());
}

double mel_correlation(const AudioBuffer& reference,
                       const AudioBuffer& estimate, const MelFilterbank& fb,
                       const StftConfig& config) {
  const std::size_t n = common_length(reference, estimate);
  auto shared = std::make_shared<const MelFilterbank>(fb);
  const auto a = mel_spectrogram(magnitude(stft(truncated(reference, n), config)),
                                 shared);
  const auto b = mel_spectrogram(magnitude(stft(truncated(estimate, n), config)),
                                 shared);
  return pearson(power_to_db(a.values).data(), power_to_db(b.values).data());
}

QualityMetrics compute_all(const AudioBuffer& reference,
                           const AudioBuffer& estimate,
                           const MetricsConfig& config) {
  QualityMetrics out;
  out.aligned_length = common_length(reference, estimate);
  out.snr_db = snr_db(reference.samples, estimate.samples);
  out.waveform_corr = waveform_correlation(reference.samples, estimate.samples);
  out.spectral_corr = spectral_correlation(reference, estimate, config.stft);
  const MelFilterbank fb = build_mel_filterbank(
      config.mel_bands, config.stft.bins(), reference.sample_rate, 0.0);
  out.mel_corr = mel_correlation(reference, estimate, fb, config.stft);
  return out;
}

}  // namespace soundplot
