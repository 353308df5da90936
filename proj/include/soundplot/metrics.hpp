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
#include <span>
#include <utility>
#include <vector>

#include "soundplot/audio_io.hpp"
#include "soundplot/spectral.hpp"

namespace soundplot {

inline constexpr double kSnrCapDb = 120.0;

struct QualityMetrics {
  double snr_db = 0.0;
  double waveform_corr = 0.0;
  double spectral_corr = 0.0;
  double mel_corr = 0.0;
  std::size_t aligned_length = 0;
};

struct MetricsConfig {
  StftConfig stft;
  std::size_t mel_bands = 128;
};

/// Truncates both signals to their common prefix. Throws
/// ErrorKind::kEmptySignal if either is empty.
std::pair<std::vector<double>, std::vector<double>> align(
    std::span<const double> reference, std::span<const double> estimate);

/// 10 log10(sum x^2 / sum (x - y)^2), capped to +/-120 dB. Inputs are aligned
/// first.
double snr_db(std::span<const double> reference,
              std::span<const double> estimate);

/// Pearson correlation; 0 when either input is constant. Symmetric in its
/// arguments bit for bit.
double pearson(std::span<const double> a, std::span<const double> b);

double waveform_correlation(std::span<const double> reference,
                            std::span<const double> estimate);

/// Correlation of the flattened linear magnitude spectrograms.
double spectral_correlation(const AudioBuffer& reference,
                            const AudioBuffer& estimate,
                            const StftConfig& config = {});

/// Correlation of the flattened dB mel spectrograms (same floor and 80 dB
/// clamp as the MFCC path).
double mel_correlation(const AudioBuffer& reference,
                       const AudioBuffer& estimate,
                       const MelFilterbank& fb,
                       const StftConfig& config = {});

QualityMetrics compute_all(const AudioBuffer& reference,
                           const AudioBuffer& estimate,
                           const MetricsConfig& config = {});

}  // namespace soundplot
