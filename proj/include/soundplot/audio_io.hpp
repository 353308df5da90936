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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace soundplot {

inline constexpr int kCanonicalSampleRate = 22050;

/// Mono signal x[n] with its sampling rate.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = kCanonicalSampleRate;
  std::string source_name;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

/// Decoded file contents before the mono fold; one vector per channel.
struct MultichannelAudio {
  std::vector<std::vector<double>> channels;
  int sample_rate = 0;
  std::string source_name;

  std::size_t frames() const {
    return channels.empty() ? 0 : channels.front().size();
  }
};

struct PreprocessConfig {
  double max_duration_s = 300.0;
  bool trim = true;
  bool remove_silence = false;
  double silence_floor_db = 60.0;
};

/// Parses a RIFF/WAVE file holding PCM 16/24/32-bit integer or IEEE float
/// 32/64-bit data. Integer codes are scaled by 2^-(bits-1).
MultichannelAudio load_wav(const std::filesystem::path& path);

/// Same as load_wav but operating on an in-memory file image.
MultichannelAudio decode_wav(std::span<const unsigned char> bytes,
                             std::string source_name = {});

/// Writes 16-bit PCM mono. Samples are clipped to [-1, 1] before quantizing.
void write_wav(const std::filesystem::path& path, const AudioBuffer& audio);

AudioBuffer to_mono(const MultichannelAudio& audio);

/// Kaiser-windowed sinc resampler (beta 12, 64 zero crossings per side).
AudioBuffer resample(const AudioBuffer& audio,
                     int target_rate = kCanonicalSampleRate);

/// Symmetric peak normalization: divides by max |x[n]|.
AudioBuffer normalize(const AudioBuffer& audio);

AudioBuffer trim_duration(const AudioBuffer& audio, double max_duration_s);

/// Drops leading and trailing regions covered only by frames whose RMS is
/// more than `silence_floor_db` below the loudest frame. Throws
/// ErrorKind::kAllSilent when no frame qualifies.
AudioBuffer remove_silence(const AudioBuffer& audio,
                           const PreprocessConfig& config);

/// load_wav -> to_mono -> resample -> trim -> (silence removal) -> normalize.
/// An all-silent input skips silence removal and keeps the original.
AudioBuffer load_and_preprocess(const std::filesystem::path& path,
                                const PreprocessConfig& config);

}  // namespace soundplot
