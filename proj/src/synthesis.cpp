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

#include "soundplot/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "soundplot/error.hpp"

namespace soundplot {
namespace {

using EigenMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>;
using ConstMap = Eigen::Map<const EigenMatrix>;
using MutableMap = Eigen::Map<EigenMatrix>;

ConstMap as_eigen(const Matrix<double>& m) {
  return ConstMap(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                  static_cast<Eigen::Index>(m.cols()));
}

MutableMap as_eigen(Matrix<double>& m) {
  return MutableMap(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                    static_cast<Eigen::Index>(m.cols()));
}

GriffinLimResult run_griffin_lim(ComplexSpectrogram estimate,
                                 const MagnitudeSpectrogram& target,
                                 const SynthesisConfig& config,
                                 std::optional<std::size_t> length) {
  config.validate();
  if (estimate.bins() != target.bins() ||
      estimate.frames() != target.frames()) {
    throw Error(ErrorKind::kShapeMismatch,
                "initial estimate and target differ in shape");
  }
  const std::size_t n = length.value_or(
      target.frames() > 0 ? (target.frames() - 1) * target.config.hop : 0);

  GriffinLimResult result;
  result.spectral_convergence.reserve(config.gl_iterations);
  auto target_values = target.values.data();
  for (std::size_t i = 0; i < config.gl_iterations; ++i) {
    result.audio = istft(estimate, n);
    if (result.audio.empty()) break;
    const ComplexSpectrogram rebuilt = stft(result.audio, target.config);
    auto rebuilt_values = rebuilt.values.data();
    auto est = estimate.values.data();
    double error = 0.0;
    double norm = 0.0;
    for (std::size_t j = 0; j < est.size(); ++j) {
      const double mag = std::abs(rebuilt_values[j]);
      const double diff = mag - target_values[j];
      error += diff * diff;
      norm += target_values[j] * target_values[j];
      est[j] = target_values[j] * rebuilt_values[j] / (mag + config.phase_epsilon);
    }
    result.spectral_convergence.push_back(
        norm > 0.0 ? std::sqrt(error / norm) : 0.0);
  }
  result.audio.sample_rate = target.sample_rate;
  result.audio = normalize(result.audio);
  return result;
}

}  // namespace

void SynthesisConfig::validate() const {
  stft.validate();
  if (gl_iterations < 1) {
    throw Error(ErrorKind::kInvalidConfig, "gl_iterations must be >= 1");
  }
  if (!(pinv_rcond >= 0.0) || !(phase_epsilon > 0.0) || mel_bands == 0) {
    throw Error(ErrorKind::kInvalidConfig, "invalid synthesis parameters");
  }
}

Matrix<double> mel_pseudo_inverse(const MelFilterbank& fb, double rcond) {
  const auto m = as_eigen(fb.weights);
  Eigen::BDCSVD<EigenMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double cutoff = sigma.size() > 0 ? rcond * sigma(0) : 0.0;
  Eigen::VectorXd inverse = Eigen::VectorXd::Zero(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff && sigma(i) > 0.0) inverse(i) = 1.0 / sigma(i);
  }
  Matrix<double> out(fb.bins(), fb.bands());
  as_eigen(out) =
      svd.matrixV() * inverse.asDiagonal() * svd.matrixU().transpose();
  return out;
}

MagnitudeSpectrogram mel_to_linear(const MelSpectrogram& mel,
                                   const MelFilterbank& fb,
                                   const SynthesisConfig& config) {
  if (mel.bands() != fb.bands()) {
    throw Error(ErrorKind::kShapeMismatch,
                "mel band count does not match the filterbank");
  }
  return mel_to_linear(mel, mel_pseudo_inverse(fb, config.pinv_rcond));
}

MagnitudeSpectrogram mel_to_linear(const MelSpectrogram& mel,
                                   const Matrix<double>& pseudo_inverse) {
  if (pseudo_inverse.cols() != mel.bands()) {
    throw Error(ErrorKind::kShapeMismatch,
                "mel band count does not match the pseudo-inverse");
  }
  MagnitudeSpectrogram out;
  out.sample_rate = mel.sample_rate;
  out.config = mel.config;
  out.values = Matrix<double>(pseudo_inverse.rows(), mel.frames());
  as_eigen(out.values) = as_eigen(pseudo_inverse) * as_eigen(mel.values);
  for (double& v : out.values.data()) {
    v = (std::isfinite(v) && v > 0.0) ? std::sqrt(v) : 0.0;
  }
  return out;
}

GriffinLimResult griffin_lim(const MagnitudeSpectrogram& target,
                             const SynthesisConfig& config,
                             std::optional<std::size_t> length) {
  ComplexSpectrogram initial;
  initial.sample_rate = target.sample_rate;
  initial.config = target.config;
  initial.values = Matrix<Complex>(target.bins(), target.frames());
  auto src = target.values.data();
  auto dst = initial.values.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = Complex(src[i], 0.0);
  return run_griffin_lim(std::move(initial), target, config, length);
}

GriffinLimResult griffin_lim(const ComplexSpectrogram& initial,
                             const MagnitudeSpectrogram& target,
                             const SynthesisConfig& config,
                             std::optional<std::size_t> length) {
  return run_griffin_lim(initial, target, config, length);
}

double spectral_convergence(const MagnitudeSpectrogram& estimate,
                            const MagnitudeSpectrogram& target) {
  if (estimate.bins() != target.bins() ||
      estimate.frames() != target.frames()) {
    throw Error(ErrorKind::kShapeMismatch, "spectrogram shapes differ");
  }
  auto a = estimate.values.data();
  auto b = target.values.data();
  double error = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    error += (a[i] - b[i]) * (a[i] - b[i]);
    norm += b[i] * b[i];
  }
  return norm > 0.0 ? std::sqrt(error / norm) : 0.0;
}

AudioBuffer synthesize(const AudioBuffer& audio, const SynthesisConfig& config) {
  config.validate();
  const MagnitudeSpectrogram mag = magnitude(stft(audio, config.stft));
  auto fb = std::make_shared<const MelFilterbank>(build_mel_filterbank(
      config.mel_bands, config.stft.bins(), audio.sample_rate, 0.0));
  const MelSpectrogram mel = mel_spectrogram(mag, fb);
  const MagnitudeSpectrogram estimate = mel_to_linear(mel, *fb, config);
  AudioBuffer out = griffin_lim(estimate, config, audio.size()).audio;
  out.source_name = audio.source_name;
  return out;
}

}  // namespace soundplot
