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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "soundplot/audio_io.hpp"
#include "soundplot/embedding.hpp"
#include "soundplot/matrix.hpp"
#include "soundplot/metrics.hpp"
#include "soundplot/spectral.hpp"

namespace soundplot {

using Rgb = std::array<std::uint8_t, 3>;

/// 8-bit RGB raster, rows top to bottom.
class RasterImage {
 public:
  RasterImage(std::size_t width, std::size_t height, Rgb fill = {255, 255, 255});

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }

  Rgb at(std::size_t x, std::size_t y) const;
  void set(std::size_t x, std::size_t y, Rgb color);
  /// Ignores coordinates outside the canvas.
  void plot(long long x, long long y, Rgb color);

  void blit(const RasterImage& src, std::size_t x0, std::size_t y0);
  RasterImage crop(std::size_t x0, std::size_t y0, std::size_t w,
                   std::size_t h) const;

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  bool operator==(const RasterImage&) const = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> pixels_;
};

/// Encodes as PNG: 8-bit RGB, no alpha, no interlacing, filter type 0.
std::vector<std::uint8_t> encode_png(const RasterImage& image);
void write_png(const std::filesystem::path& path, const RasterImage& image);

/// Entry `index` of the embedded 256-entry dark-blue-to-yellow colormap.
Rgb colormap(std::size_t index);

/// Draws text in the embedded 5x7 font (upper-cased; unknown glyphs render
/// as blanks). Each glyph cell is 6 * scale wide.
void draw_text(RasterImage& image, std::size_t x, std::size_t y,
               std::string_view text, Rgb color, std::size_t scale = 1);

void draw_line(RasterImage& image, long long x0, long long y0, long long x1,
               long long y1, Rgb color);

/// Heatmap of a rows x cols grid: optional dB conversion, min-max scaling,
/// colormap lookup, nearest-neighbour resampling. Row 0 is drawn at the
/// bottom of the image.
RasterImage render_heatmap(const Matrix<double>& grid, bool db_scale,
                           std::size_t width, std::size_t height);

/// Per-column min/max envelope on a white background.
RasterImage render_waveform(std::span<const double> samples,
                            std::size_t width, std::size_t height);

inline constexpr std::size_t kComparisonWidth = 1600;
inline constexpr std::size_t kComparisonHeight = 1200;
inline constexpr std::size_t kEmbeddingWidth = 1800;
inline constexpr std::size_t kEmbeddingHeight = 600;
inline constexpr std::size_t kGutter = 10;
inline constexpr std::size_t kStripHeight = 50;
/// Upper frequency shown in the linear spectrogram panels.
inline constexpr double kComparisonMaxHz = 8192.0;

struct ComparisonInputs {
  const AudioBuffer* original = nullptr;
  const AudioBuffer* synthesized = nullptr;
  const MagnitudeSpectrogram* original_spectrum = nullptr;
  const MagnitudeSpectrogram* synthesized_spectrum = nullptr;
  const MelSpectrogram* original_mel = nullptr;
  const MelSpectrogram* synthesized_mel = nullptr;
  QualityMetrics metrics;
};

/// Panel rectangle (x, y, width, height) of row `row` (waveform, STFT, mel)
/// and column `col` (original, synthesized) on the comparison canvas.
std::array<std::size_t, 4> comparison_panel(std::size_t row, std::size_t col);

/// Metrics line printed in the strip, e.g. "SNR -0.81 DB  WAVE CORR ...".
std::string format_metrics(const QualityMetrics& metrics);

RasterImage render_comparison(const ComparisonInputs& inputs);

/// Shared data -> pixel transform of the embedding panels.
struct PlotTransform {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  std::size_t panel_x = 0;
  std::size_t panel_y = 0;
  std::size_t panel_width = 1;
  std::size_t panel_height = 1;

  std::array<long long, 2> to_pixel(double x, double y) const;
};

/// Bounding box of both point sets plus a 5% margin, mapped onto panel
/// `index` (0 original, 1 synthesized, 2 overlay).
PlotTransform embedding_transform(const PairedEmbedding& embedding,
                                  std::size_t index);

inline constexpr Rgb kOriginalColor = {31, 119, 180};
inline constexpr Rgb kSynthesizedColor = {44, 160, 44};
inline constexpr Rgb kPairColor = {160, 160, 160};

RasterImage render_embedding(const PairedEmbedding& embedding);

}  // namespace soundplot
