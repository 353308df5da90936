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

#include "soundplot/analysis.hpp"

namespace soundplot {

StreamAnalysis analyze_stream(const AudioBuffer& audio,
                              const FeatureConfig& config) {
  StreamAnalysis out;
  out.audio = audio;
  out.spectrum = magnitude(stft(audio, config.stft));
  auto fb = std::make_shared<const MelFilterbank>(build_mel_filterbank(
      config.mel_bands, config.stft.bins(), audio.sample_rate, 0.0));
  out.mel = mel_spectrogram(out.spectrum, std::move(fb));
  out.centroid = spectral_centroid(out.spectrum);
  out.bandwidth = spectral_bandwidth(out.spectrum);
  out.rolloff = spectral_rolloff(out.spectrum);
  out.contrast = spectral_contrast(out.spectrum);
  out.zcr = zero_crossing_rate(audio, config.stft);
  out.rms = rms_energy(out.spectrum);
  out.mfcc = mfcc(out.mel, config.mfcc_count);
  PitchConfig pitch = config.pitch;
  pitch.frame = config.stft;
  out.pitch = track_pitch(audio, pitch);
  return out;
}

}  // namespace soundplot
