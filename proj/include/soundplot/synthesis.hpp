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
#include <optional>
#include <vector>

#include "soundplot/audio_io.hpp"
#include "soundplot/matrix.hpp"
#include "soundplot/spectral.hpp"

namespace soundplot {

struct SynthesisConfig {
  std::size_t gl_iterations = 32;
  double pinv_rcond = 1e-8;
  double phase_epsilon = 1e-12;
  std::size_t mel_bands = 128;
  StftConfig stft;

  void validate() const;
};

/// Moore-Penrose pseudo-inverse (bins x bands) from an SVD, discarding
/// singular values below rcond * sigma_max.
Matrix<double> mel_pseudo_inverse(const MelFilterbank& fb, double rcond);

/// S[k, m] = sqrt(max(0, sum_b pinv[k, b] * mel[b, m])).
MagnitudeSpectrogram mel_to_linear(const MelSpectrogram& mel,
                                   const MelFilterbank& fb,
                                   const SynthesisConfig& config);
MagnitudeSpectrogram mel_to_linear(const MelSpectrogram& mel,
                                   const Matrix<double>& pseudo_inverse);

struct GriffinLimResult {
  AudioBuffer audio;
  /// ||  |stft(x_i)| - S ||_F / ||S||_F for iterations i = 1..N.
  std::vector<double> spectral_convergence;
};

/// Phase retrieval from zero phase. Each iteration runs ISTFT, STFT and
/// re-imposes the target magnitude; the signal from the last ISTFT is
/// returned peak-normalized. `length` defaults to (frames - 1) * hop.
GriffinLimResult griffin_lim(const MagnitudeSpectrogram& target,
                             const SynthesisConfig& config,
                             std::optional<std::size_t> length = std::nullopt);

/// Same iteration starting from an explicit complex estimate instead of the
/// zero-phase one.
GriffinLimResult griffin_lim(const ComplexSpectrogram& initial,
                             const MagnitudeSpectrogram& target,
                             const SynthesisConfig& config,
                             std::optional<std::size_t> length = std::nullopt);

double spectral_convergence(const MagnitudeSpectrogram& estimate,
                            const MagnitudeSpectrogram& target);

/// stft -> magnitude -> mel -> pseudo-inverse -> Griffin-Lim -> peak
/// normalization. The output keeps the input length and sample rate.
AudioBuffer synthesize(const AudioBuffer& audio,
                       const SynthesisConfig& config = {});

}  // namespace soundplot
