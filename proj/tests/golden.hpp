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

// Fixed render fixtures compared byte for byte against tests/golden/*.png.
// Set SOUNDPLOT_UPDATE_GOLDEN=1 to rewrite the stored images.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "soundplot/metrics.hpp"
#include "soundplot/render.hpp"
#include "soundplot/spectral.hpp"
#include "soundplot/synthesis.hpp"
#include "support.hpp"

#ifndef SOUNDPLOT_GOLDEN_DIR
#define SOUNDPLOT_GOLDEN_DIR "tests/golden"
#endif

namespace soundplot::testing {

inline RasterImage golden_heatmap() {
  Matrix<double> grid(48, 64);
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      grid(r, c) = std::sin(0.2 * static_cast<double>(r)) *
                       std::cos(0.15 * static_cast<double>(c)) +
                   0.01 * static_cast<double>(r);
    }
  }
  return render_heatmap(grid, false, 320, 240);
}

inline RasterImage golden_waveform() {
  AudioBuffer tone = sine(440.0, 0.25);
  for (std::size_t i = 0; i < tone.size(); ++i) {
    tone.samples[i] *= std::exp(-6.0 * static_cast<double>(i) / tone.size());
  }
  return render_waveform(tone.samples, 400, 120);
}

inline RasterImage golden_comparison() {
  std::vector<double> x(11025, 0.0);
  add_chirp(x, 22050, 0.02, 0.22, 1500.0, 3000.0, 0.8);
  add_chirp(x, 22050, 0.26, 0.22, 3500.0, 2000.0, 0.8);
  const AudioBuffer original = make_buffer(std::move(x));
  SynthesisConfig cfg;
  cfg.gl_iterations = 4;
  const AudioBuffer synthesized = synthesize(original, cfg);

  auto fb = std::make_shared<const MelFilterbank>(
      build_mel_filterbank(128, 1025, 22050, 0.0));
  const auto spec_a = magnitude(stft(original));
  const auto spec_b = magnitude(stft(synthesized));
  const auto mel_a = mel_spectrogram(spec_a, fb);
  const auto mel_b = mel_spectrogram(spec_b, fb);
  ComparisonInputs in;
  in.original = &original;
  in.synthesized = &synthesized;
  in.original_spectrum = &spec_a;
  in.synthesized_spectrum = &spec_b;
  in.original_mel = &mel_a;
  in.synthesized_mel = &mel_b;
  in.metrics = compute_all(original, synthesized);
  return render_comparison(in);
}

inline RasterImage golden_embedding() {
  PairedEmbedding e;
  const std::size_t n = 60;
  e.original_points = Matrix<double>(n, 2);
  e.synthesized_points = Matrix<double>(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 0.2 * static_cast<double>(i);
    e.original_points(i, 0) = t * std::cos(t);
    e.original_points(i, 1) = t * std::sin(t);
    e.synthesized_points(i, 0) = t * std::cos(t) + 0.8;
    e.synthesized_points(i, 1) = t * std::sin(t) - 0.5;
    e.pairs.emplace_back(i, i);
  }
  return render_embedding(e);
}

inline const std::vector<std::pair<std::string, std::function<RasterImage()>>>&
golden_fixtures() {
  static const std::vector<std::pair<std::string, std::function<RasterImage()>>>
      fixtures = {
          {"heatmap", golden_heatmap},
          {"waveform", golden_waveform},
          {"comparison", golden_comparison},
          {"embedding", golden_embedding},
      };
  return fixtures;
}

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Renders every fixture and compares it with the stored PNG.
inline bool check_all_goldens(std::string& report) {
  const bool update = std::getenv("SOUNDPLOT_UPDATE_GOLDEN") != nullptr;
  const std::filesystem::path dir = SOUNDPLOT_GOLDEN_DIR;
  bool ok = true;
  for (const auto& [name, render] : golden_fixtures()) {
    const auto bytes = encode_png(render());
    const auto path = dir / (name + ".png");
    if (update) {
      std::filesystem::create_directories(dir);
      std::ofstream out(path, std::ios::binary);
      out.write(reinterpret_cast<const char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
      report += name + " updated; ";
      continue;
    }
    if (!std::filesystem::exists(path)) {
      report += name + " missing; ";
      ok = false;
    } else if (read_bytes(path) != bytes) {
      report += name + " differs; ";
      ok = false;
    } else {
      report += name + " identical; ";
    }
  }
  if (!report.empty()) report.erase(report.size() - 2);
  return ok;
}

}  // namespace soundplot::testing
