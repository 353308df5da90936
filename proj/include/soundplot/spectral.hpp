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

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "soundplot/audio_io.hpp"
#include "soundplot/fft.hpp"
#include "soundplot/matrix.hpp"

namespace soundplot {

struct StftConfig {
  std::size_t win_size = 2048;
  std::size_t hop = 512;
  /// Frames centered on t = m * hop / fs, with reflection padding of
  /// win_size / 2 on both ends.
  bool centered = true;

  std::size_t bins() const { return win_size / 2 + 1; }
  /// Throws ErrorKind::kInvalidConfig unless win_size is a power of two and
  /// 0 < hop <= win_size.
  void validate() const;
};

struct ComplexSpectrogram {
  Matrix<Complex> values;  // bins x frames
  int sample_rate = kCanonicalSampleRate;
  StftConfig config;

  std::size_t bins() const { return values.rows(); }
  std::size_t frames() const { return values.cols(); }
};

struct MagnitudeSpectrogram {
  Matrix<double> values;  // bins x frames
  int sample_rate = kCanonicalSampleRate;
  StftConfig config;

  std::size_t bins() const { return values.rows(); }
  std::size_t frames() const { return values.cols(); }
};

struct MelFilterbank {
  Matrix<double> weights;  // bands x bins
  int sample_rate = kCanonicalSampleRate;
  double f_min = 0.0;
  double f_max = kCanonicalSampleRate / 2.0;

  std::size_t bands() const { return weights.rows(); }
  std::size_t bins() const { return weights.cols(); }
};

struct MelSpectrogram {
  Matrix<double> values;  // bands x frames, power scale
  std::shared_ptr<const MelFilterbank> filterbank;
  int sample_rate = kCanonicalSampleRate;
  StftConfig config;

  std::size_t bands() const { return values.rows(); }
  std::size_t frames() const { return values.cols(); }
};

/// Per-frame feature values; one row per feature dimension.
struct FeatureTimeSeries {
  std::string name;
  std::vector<double> frame_times;
  Matrix<double> values;  // dims x frames

  std::size_t dims() const { return values.rows(); }
  std::size_t frames() const { return values.cols(); }
  /// Convenience view of row 0 for scalar features.
  std::vector<double> scalar() const;
};

inline constexpr double kPowerFloor = 1e-10;
inline constexpr double kDynamicRangeDb = 80.0;

/// Periodic Hann window, w[n] = 0.5 - 0.5 cos(2 pi n / N).
std::vector<double> hann_window(std::size_t size);

std::size_t frame_count(std::size_t signal_length, const StftConfig& config);
std::vector<double> frame_times(std::size_t frames, std::size_t hop,
                                int sample_rate);

/// Copies frame `m` (win_size samples, unwindowed) into `out`, applying the
/// configured padding.
void extract_frame(std::span<const double> signal, const StftConfig& config,
                   std::size_t m, std::span<double> out);

ComplexSpectrogram stft(const AudioBuffer& audio,
                        const StftConfig& config = {});

/// Least-squares inverse STFT (weighted overlap-add normalized by the summed
/// squared window, padded edges folded back onto the signal). The output
/// has `length` samples, defaulting to (frames - 1) * hop.
AudioBuffer istft(const ComplexSpectrogram& spec,
                  std::optional<std::size_t> length = std::nullopt);

MagnitudeSpectrogram magnitude(const ComplexSpectrogram& spec);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// Slaney-style triangular filters, each scaled by 2 / (f_upper - f_lower).
MelFilterbank build_mel_filterbank(std::size_t bands, std::size_t bins,
                                   int sample_rate, double f_min,
                                   std::optional<double> f_max = std::nullopt);

MelSpectrogram mel_spectrogram(const MagnitudeSpectrogram& mag,
                               std::shared_ptr<const MelFilterbank> fb);

/// 10 log10(max(p, 1e-10)) clamped to [peak - 80 dB, peak], where peak is
/// the largest value in the whole grid.
Matrix<double> power_to_db(const Matrix<double>& power);

/// Orthonormal DCT-II of `in`, keeping the first `count` coefficients.
std::vector<double> dct_ii(std::span<const double> in, std::size_t count);

FeatureTimeSeries mfcc(const MelSpectrogram& mel,
                       std::size_t coefficient_count = 13);

FeatureTimeSeries spectral_centroid(const MagnitudeSpectrogram& mag);
FeatureTimeSeries spectral_bandwidth(const MagnitudeSpectrogram& mag);
FeatureTimeSeries spectral_rolloff(const MagnitudeSpectrogram& mag,
                                   double fraction = 0.85);
FeatureTimeSeries spectral_contrast(const MagnitudeSpectrogram& mag,
                                    std::size_t band_count = 6,
                                    double first_edge_hz = 200.0,
                                    double quantile = 0.02);
FeatureTimeSeries zero_crossing_rate(const AudioBuffer& audio,
                                     const StftConfig& config = {});
FeatureTimeSeries rms_energy(const MagnitudeSpectrogram& mag);

}  // namespace soundplot
