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

#include <memory>

#include "soundplot/audio_io.hpp"
#include "soundplot/pitch.hpp"
#include "soundplot/spectral.hpp"

namespace soundplot {

struct FeatureConfig {
  StftConfig stft;
  std::size_t mel_bands = 128;
  std::size_t mfcc_count = 13;
  PitchConfig pitch;
};

/// Every per-frame representation of one audio stream.
struct StreamAnalysis {
  AudioBuffer audio;
  MagnitudeSpectrogram spectrum;
  MelSpectrogram mel;
  FeatureTimeSeries centroid;
  FeatureTimeSeries bandwidth;
  FeatureTimeSeries rolloff;
  FeatureTimeSeries contrast;
  FeatureTimeSeries zcr;
  FeatureTimeSeries rms;
  FeatureTimeSeries mfcc;
  PitchTrack pitch;

  std::size_t frames() const { return spectrum.frames(); }
};

/// Pitch tracking uses config.stft for framing, overriding config.pitch.frame.
StreamAnalysis analyze_stream(const AudioBuffer& audio,
                              const FeatureConfig& config = {});

}  // namespace soundplot
