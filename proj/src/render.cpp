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

#include "soundplot/render.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <utility>

#include <zlib.h>

#include "soundplot/error.hpp"

namespace soundplot {
namespace {

// Perceptually ordered, dark blue to yellow (viridis).
constexpr std::array<Rgb, 256> kColormap = {{
    {68, 1, 84}, {68, 2, 86}, {69, 4, 87}, {69, 5, 89},
    {70, 7, 90}, {70, 8, 92}, {70, 10, 93}, {70, 11, 94},
    {71, 13, 96}, {71, 14, 97}, {71, 16, 99}, {71, 17, 100},
    {71, 19, 101}, {72, 20, 103}, {72, 22, 104}, {72, 23, 105},
    {72, 24, 106}, {72, 26, 108}, {72, 27, 109}, {72, 28, 110},
    {72, 29, 111}, {72, 31, 112}, {72, 32, 113}, {72, 33, 115},
    {72, 35, 116}, {72, 36, 117}, {72, 37, 118}, {72, 38, 119},
    {72, 40, 120}, {72, 41, 121}, {71, 42, 122}, {71, 44, 122},
    {71, 45, 123}, {71, 46, 124}, {71, 47, 125}, {70, 48, 126},
    {70, 50, 126}, {70, 51, 127}, {70, 52, 128}, {69, 53, 129},
    {69, 55, 129}, {69, 56, 130}, {68, 57, 131}, {68, 58, 131},
    {68, 59, 132}, {67, 61, 132}, {67, 62, 133}, {66, 63, 133},
    {66, 64, 134}, {66, 65, 134}, {65, 66, 135}, {65, 68, 135},
    {64, 69, 136}, {64, 70, 136}, {63, 71, 136}, {63, 72, 137},
    {62, 73, 137}, {62, 74, 137}, {62, 76, 138}, {61, 77, 138},
    {61, 78, 138}, {60, 79, 138}, {60, 80, 139}, {59, 81, 139},
    {59, 82, 139}, {58, 83, 139}, {58, 84, 140}, {57, 85, 140},
    {57, 86, 140}, {56, 88, 140}, {56, 89, 140}, {55, 90, 140},
    {55, 91, 141}, {54, 92, 141}, {54, 93, 141}, {53, 94, 141},
    {53, 95, 141}, {52, 96, 141}, {52, 97, 141}, {51, 98, 141},
    {51, 99, 141}, {50, 100, 142}, {50, 101, 142}, {49, 102, 142},
    {49, 103, 142}, {49, 104, 142}, {48, 105, 142}, {48, 106, 142},
    {47, 107, 142}, {47, 108, 142}, {46, 109, 142}, {46, 110, 142},
    {46, 111, 142}, {45, 112, 142}, {45, 113, 142}, {44, 113, 142},
    {44, 114, 142}, {44, 115, 142}, {43, 116, 142}, {43, 117, 142},
    {42, 118, 142}, {42, 119, 142}, {42, 120, 142}, {41, 121, 142},
    {41, 122, 142}, {41, 123, 142}, {40, 124, 142}, {40, 125, 142},
    {39, 126, 142}, {39, 127, 142}, {39, 128, 142}, {38, 129, 142},
    {38, 130, 142}, {38, 130, 142}, {37, 131, 142}, {37, 132, 142},
    {37, 133, 142}, {36, 134, 142}, {36, 135, 142}, {35, 136, 142},
    {35, 137, 142}, {35, 138, 141}, {34, 139, 141}, {34, 140, 141},
    {34, 141, 141}, {33, 142, 141}, {33, 143, 141}, {33, 144, 141},
    {33, 145, 140}, {32, 146, 140}, {32, 146, 140}, {32, 147, 140},
    {31, 148, 140}, {31, 149, 139}, {31, 150, 139}, {31, 151, 139},
    {31, 152, 139}, {31, 153, 138}, {31, 154, 138}, {30, 155, 138},
    {30, 156, 137}, {30, 157, 137}, {31, 158, 137}, {31, 159, 136},
    {31, 160, 136}, {31, 161, 136}, {31, 161, 135}, {31, 162, 135},
    {32, 163, 134}, {32, 164, 134}, {33, 165, 133}, {33, 166, 133},
    {34, 167, 133}, {34, 168, 132}, {35, 169, 131}, {36, 170, 131},
    {37, 171, 130}, {37, 172, 130}, {38, 173, 129}, {39, 173, 129},
    {40, 174, 128}, {41, 175, 127}, {42, 176, 127}, {44, 177, 126},
    {45, 178, 125}, {46, 179, 124}, {47, 180, 124}, {49, 181, 123},
    {50, 182, 122}, {52, 182, 121}, {53, 183, 121}, {55, 184, 120},
    {56, 185, 119}, {58, 186, 118}, {59, 187, 117}, {61, 188, 116},
    {63, 188, 115}, {64, 189, 114}, {66, 190, 113}, {68, 191, 112},
    {70, 192, 111}, {72, 193, 110}, {74, 193, 109}, {76, 194, 108},
    {78, 195, 107}, {80, 196, 106}, {82, 197, 105}, {84, 197, 104},
    {86, 198, 103}, {88, 199, 101}, {90, 200, 100}, {92, 200, 99},
    {94, 201, 98}, {96, 202, 96}, {99, 203, 95}, {101, 203, 94},
    {103, 204, 92}, {105, 205, 91}, {108, 205, 90}, {110, 206, 88},
    {112, 207, 87}, {115, 208, 86}, {117, 208, 84}, {119, 209, 83},
    {122, 209, 81}, {124, 210, 80}, {127, 211, 78}, {129, 211, 77},
    {132, 212, 75}, {134, 213, 73}, {137, 213, 72}, {139, 214, 70},
    {142, 214, 69}, {144, 215, 67}, {147, 215, 65}, {149, 216, 64},
    {152, 216, 62}, {155, 217, 60}, {157, 217, 59}, {160, 218, 57},
    {162, 218, 55}, {165, 219, 54}, {168, 219, 52}, {170, 220, 50},
    {173, 220, 48}, {176, 221, 47}, {178, 221, 45}, {181, 222, 43},
    {184, 222, 41}, {186, 222, 40}, {189, 223, 38}, {192, 223, 37},
    {194, 223, 35}, {197, 224, 33}, {200, 224, 32}, {202, 225, 31},
    {205, 225, 29}, {208, 225, 28}, {210, 226, 27}, {213, 226, 26},
    {216, 226, 25}, {218, 227, 25}, {221, 227, 24}, {223, 227, 24},
    {226, 228, 24}, {229, 228, 25}, {231, 228, 25}, {234, 229, 26},
    {236, 229, 27}, {239, 229, 28}, {241, 229, 29}, {244, 230, 30},
    {246, 230, 32}, {248, 230, 33}, {251, 231, 35}, {253, 231, 37},
}};

struct Glyph {
  char ch;
  std::array<const char*, 7> rows;
};

// 5x7 cells; '#' marks a lit pixel.
constexpr Glyph kFont[] = {
    {'0', {".###.", "#...#", "#..##", "#.#.#", "##..#", "#...#", ".###."}},
    {'1', {"..#..", ".##..", "..#..", "..#..", "..#..", "..#..", ".###."}},
    {'2', {".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"}},
    {'3', {"#####", "...#.", "..#..", "...#.", "....#", "#...#", ".###."}},
    {'4', {"...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."}},
    {'5', {"#####", "#....", "####.", "....#", "....#", "#...#", ".###."}},
    {'6', {"..##.", ".#...", "#....", "####.", "#...#", "#...#", ".###."}},
    {'7', {"#####", "....#", "...#.", "..#..", ".#...", ".#...", ".#..."}},
    {'8', {".###.", "#...#", "#...#", ".###.", "#...#", "#...#", ".###."}},
    {'9', {".###.", "#...#", "#...#", ".####", "....#", "...#.", ".##.."}},
    {'A', {".###.", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"}},
    {'B', {"####.", "#...#", "#...#", "####.", "#...#", "#...#", "####."}},
    {'C', {".###.", "#...#", "#....", "#....", "#....", "#...#", ".###."}},
    {'D', {"###..", "#..#.", "#...#", "#...#", "#...#", "#..#.", "###.."}},
    {'E', {"#####", "#....", "#....", "####.", "#....", "#....", "#####"}},
    {'F', {"#####", "#....", "#....", "####.", "#....", "#....", "#...."}},
    {'G', {".###.", "#...#", "#....", "#.###", "#...#", "#...#", ".####"}},
    {'H', {"#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"}},
    {'I', {".###.", "..#..", "..#..", "..#..", "..#..", "..#..", ".###."}},
    {'J', {"..###", "...#.", "...#.", "...#.", "...#.", "#..#.", ".##.."}},
    {'K', {"#...#", "#..#.", "#.#..", "##...", "#.#..", "#..#.", "#...#"}},
    {'L', {"#....", "#....", "#....", "#....", "#....", "#....", "#####"}},
    {'M', {"#...#", "##.##", "#.#.#", "#.#.#", "#...#", "#...#", "#...#"}},
    {'N', {"#...#", "#...#", "##..#", "#.#.#", "#..##", "#...#", "#...#"}},
    {'O', {".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."}},
    {'P', {"####.", "#...#", "#...#", "####.", "#....", "#....", "#...."}},
    {'Q', {".###.", "#...#", "#...#", "#...#", "#.#.#", "#..#.", ".##.#"}},
    {'R', {"####.", "#...#", "#...#", "####.", "#.#..", "#..#.", "#...#"}},
    {'S', {".####", "#....", "#....", ".###.", "....#", "....#", "####."}},
    {'T', {"#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."}},
    {'U', {"#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."}},
    {'V', {"#...#", "#...#", "#...#", "#...#", "#...#", ".#.#.", "..#.."}},
    {'W', {"#...#", "#...#", "#...#", "#.#.#", "#.#.#", "#.#.#", ".#.#."}},
    {'X', {"#...#", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", "#...#"}},
    {'Y', {"#...#", "#...#", ".#.#.", "..#..", "..#..", "..#..", "..#.."}},
    {'Z', {"#####", "....#", "...#.", "..#..", ".#...", "#....", "#####"}},
    {'.', {".....", ".....", ".....", ".....", ".....", ".##..", ".##.."}},
    {',', {".....", ".....", ".....", ".....", ".##..", "..#..", ".#..."}},
    {':', {".....", ".##..", ".##..", ".....", ".##..", ".##..", "....."}},
    {'-', {".....", ".....", ".....", "#####", ".....", ".....", "....."}},
    {'+', {".....", "..#..", "..#..", "#####", "..#..", "..#..", "....."}},
    {'=', {".....", ".....", "#####", ".....", "#####", ".....", "....."}},
    {'(', {"...#.", "..#..", ".#...", ".#...", ".#...", "..#..", "...#."}},
    {')', {".#...", "..#..", "...#.", "...#.", "...#.", "..#..", ".#..."}},
    {'/', {".....", "....#", "...#.", "..#..", ".#...", "#....", "....."}},
    {'_', {".....", ".....", ".....", ".....", ".....", ".....", "#####"}},
    {'%', {"##...", "##..#", "...#.", "..#..", ".#...", "#..##", "...##"}},
    {'|', {"..#..", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."}},
};

const Glyph* find_glyph(char c) {
  const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto& g : kFont) {
    if (g.ch == upper) return &g;
  }
  return nullptr;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_chunk(std::vector<std::uint8_t>& out, const char* type,
               const std::vector<std::uint8_t>& payload) {
  put_u32(out, static_cast<std::uint32_t>(payload.size()));
  const std::size_t start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), payload.begin(), payload.end());
  const uLong crc = crc32(0L, out.data() + start,
                          static_cast<uInt>(out.size() - start));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

void fill_rect(RasterImage& image, long long x0, long long y0, long long w,
               long long h, Rgb color) {
  for (long long y = y0; y < y0 + h; ++y) {
    for (long long x = x0; x < x0 + w; ++x) image.plot(x, y, color);
  }
}

void draw_marker(RasterImage& image, long long cx, long long cy, Rgb color) {
  for (long long dy = -2; dy <= 2; ++dy) {
    for (long long dx = -2; dx <= 2; ++dx) {
      if (dx * dx + dy * dy <= 5) image.plot(cx + dx, cy + dy, color);
    }
  }
}

void draw_frame(RasterImage& image, std::size_t x, std::size_t y,
                std::size_t w, std::size_t h, Rgb color) {
  const auto x0 = static_cast<long long>(x);
  const auto y0 = static_cast<long long>(y);
  const auto x1 = static_cast<long long>(x + w - 1);
  const auto y1 = static_cast<long long>(y + h - 1);
  draw_line(image, x0, y0, x1, y0, color);
  draw_line(image, x0, y1, x1, y1, color);
  draw_line(image, x0, y0, x0, y1, color);
  draw_line(image, x1, y0, x1, y1, color);
}

Matrix<double> squared(const Matrix<double>& m, std::size_t max_rows) {
  const std::size_t rows = std::min(max_rows, m.rows());
  Matrix<double> out(rows, m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < rows; ++r) out(r, c) = m(r, c) * m(r, c);
  }
  return out;
}

}  // namespace

RasterImage::RasterImage(std::size_t width, std::size_t height, Rgb fill)
    : width_(width), height_(height) {
  if (width == 0 || height == 0) {
    throw Error(ErrorKind::kInvalidConfig, "image dimensions must be positive");
  }
  pixels_.resize(width * height * 3);
  for (std::size_t i = 0; i < width * height; ++i) {
    std::copy(fill.begin(), fill.end(), pixels_.begin() + 3 * i);
  }
}

Rgb RasterImage::at(std::size_t x, std::size_t y) const {
  const std::size_t i = 3 * (y * width_ + x);
  return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
}

void RasterImage::set(std::size_t x, std::size_t y, Rgb color) {
  const std::size_t i = 3 * (y * width_ + x);
  pixels_[i] = color[0];
  pixels_[i + 1] = color[1];
  pixels_[i + 2] = color[2];
}

void RasterImage::plot(long long x, long long y, Rgb color) {
  if (x < 0 || y < 0 || x >= static_cast<long long>(width_) ||
      y >= static_cast<long long>(height_)) {
    return;
  }
  set(static_cast<std::size_t>(x), static_cast<std::size_t>(y), color);
}

void RasterImage::blit(const RasterImage& src, std::size_t x0, std::size_t y0) {
  for (std::size_t y = 0; y < src.height(); ++y) {
    for (std::size_t x = 0; x < src.width(); ++x) {
      plot(static_cast<long long>(x0 + x), static_cast<long long>(y0 + y),
           src.at(x, y));
    }
  }
}

RasterImage RasterImage::crop(std::size_t x0, std::size_t y0, std::size_t w,
                              std::size_t h) const {
  RasterImage out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) out.set(x, y, at(x0 + x, y0 + y));
  }
  return out;
}

std::vector<std::uint8_t> encode_png(const RasterImage& image) {
  const std::size_t stride = image.width() * 3;
  std::vector<std::uint8_t> raw;
  raw.reserve((stride + 1) * image.height());
  auto pixels = image.pixels();
  for (std::size_t y = 0; y < image.height(); ++y) {
    raw.push_back(0);
    raw.insert(raw.end(), pixels.begin() + y * stride,
               pixels.begin() + (y + 1) * stride);
  }
  uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> packed(packed_size);
  if (compress2(packed.data(), &packed_size, raw.data(),
                static_cast<uLong>(raw.size()), 6) != Z_OK) {
    throw Error(ErrorKind::kIoError, "deflate failed");
  }
  packed.resize(packed_size);

  std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  std::vector<std::uint8_t> header;
  put_u32(header, static_cast<std::uint32_t>(image.width()));
  put_u32(header, static_cast<std::uint32_t>(image.height()));
  header.insert(header.end(), {8, 2, 0, 0, 0});
  put_chunk(out, "IHDR", header);
  put_chunk(out, "IDAT", packed);
  put_chunk(out, "IEND", {});
  return out;
}

void write_png(const std::filesystem::path& path, const RasterImage& image) {
  const auto bytes = encode_png(image);
  std::ofstream file(path, std::ios::binary);
  file.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  if (!file) {
    throw Error(ErrorKind::kIoError, "cannot write '" + path.string() + "'");
  }
}

Rgb colormap(std::size_t index) { return kColormap[std::min<std::size_t>(index, 255)]; }

void draw_text(RasterImage& image, std::size_t x, std::size_t y,
               std::string_view text, Rgb color, std::size_t scale) {
  std::size_t pen = x;
  for (char c : text) {
    if (const Glyph* g = find_glyph(c)) {
      for (std::size_t row = 0; row < 7; ++row) {
        for (std::size_t col = 0; col < 5; ++col) {
          if (g->rows[row][col] != '#') continue;
          fill_rect(image, static_cast<long long>(pen + col * scale),
                    static_cast<long long>(y + row * scale),
                    static_cast<long long>(scale),
                    static_cast<long long>(scale), color);
        }
      }
    }
    pen += 6 * scale;
  }
}

void draw_line(RasterImage& image, long long x0, long long y0, long long x1,
               long long y1, Rgb color) {
  const long long dx = std::abs(x1 - x0);
  const long long dy = -std::abs(y1 - y0);
  const long long sx = x0 < x1 ? 1 : -1;
  const long long sy = y0 < y1 ? 1 : -1;
  long long err = dx + dy;
  while (true) {
    image.plot(x0, y0, color);
    if (x0 == x1 && y0 == y1) break;
    const long long e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

RasterImage render_heatmap(const Matrix<double>& grid, bool db_scale,
                           std::size_t width, std::size_t height) {
  RasterImage image(width, height, colormap(0));
  if (grid.empty()) return image;
  const Matrix<double> values = db_scale ? power_to_db(grid) : grid;
  const auto [lo_it, hi_it] =
      std::minmax_element(values.data().begin(), values.data().end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  for (std::size_t py = 0; py < height; ++py) {
    const std::size_t row =
        grid.rows() - 1 - std::min(grid.rows() - 1, py * grid.rows() / height);
    for (std::size_t px = 0; px < width; ++px) {
      const std::size_t col = std::min(grid.cols() - 1, px * grid.cols() / width);
      std::size_t index = 0;
      if (range > 0.0) {
        const double unit = (values(row, col) - lo) / range;
        index = static_cast<std::size_t>(std::lround(std::clamp(unit, 0.0, 1.0) * 255.0));
      }
      image.set(px, py, colormap(index));
    }
  }
  return image;
}

RasterImage render_waveform(std::span<const double> samples,
                            std::size_t width, std::size_t height) {
  RasterImage image(width, height);
  if (samples.empty()) return image;
  constexpr Rgb kInk = {31, 119, 180};
  const std::size_t n = samples.size();
  auto to_row = [height](double v) {
    const double unit = (1.0 - std::clamp(v, -1.0, 1.0)) / 2.0;
    return static_cast<long long>(std::lround(unit * static_cast<double>(height - 1)));
  };
  for (std::size_t x = 0; x < width; ++x) {
    const std::size_t begin = x * n / width;
    const std::size_t end = std::max(begin + 1, (x + 1) * n / width);
    const auto [lo, hi] = std::minmax_element(samples.begin() + begin,
                                              samples.begin() + std::min(end, n));
    draw_line(image, static_cast<long long>(x), to_row(*hi),
              static_cast<long long>(x), to_row(*lo), kInk);
  }
  return image;
}

std::array<std::size_t, 4> comparison_panel(std::size_t row, std::size_t col) {
  constexpr std::size_t kPanelWidth = (kComparisonWidth - 3 * kGutter) / 2;
  constexpr std::size_t kPanelHeight =
      (kComparisonHeight - kStripHeight - 4 * kGutter) / 3;
  return {kGutter + col * (kPanelWidth + kGutter),
          kStripHeight + kGutter + row * (kPanelHeight + kGutter), kPanelWidth,
          kPanelHeight};
}

std::string format_metrics(const QualityMetrics& metrics) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "SNR %.2f DB   WAVE CORR %.3f   SPEC CORR %.3f   MEL CORR %.3f",
                metrics.snr_db, metrics.waveform_corr, metrics.spectral_corr,
                metrics.mel_corr);
  return buf;
}

RasterImage render_comparison(const ComparisonInputs& inputs) {
  if (!inputs.original || !inputs.synthesized || !inputs.original_spectrum ||
      !inputs.synthesized_spectrum || !inputs.original_mel ||
      !inputs.synthesized_mel) {
    throw Error(ErrorKind::kInvalidConfig, "comparison inputs incomplete");
  }
  RasterImage canvas(kComparisonWidth, kComparisonHeight);
  constexpr Rgb kText = {20, 20, 20};
  draw_text(canvas, kGutter, 6,
            "LEFT: ORIGINAL   RIGHT: SYNTHESIZED   ROWS: WAVEFORM / STFT DB "
            "(0-8192 HZ) / MEL DB",
            kText, 2);
  draw_text(canvas, kGutter, 28, format_metrics(inputs.metrics), kText, 2);

  const AudioBuffer* audio[2] = {inputs.original, inputs.synthesized};
  const MagnitudeSpectrogram* spectra[2] = {inputs.original_spectrum,
                                            inputs.synthesized_spectrum};
  const MelSpectrogram* mels[2] = {inputs.original_mel, inputs.synthesized_mel};
  for (std::size_t col = 0; col < 2; ++col) {
    const auto wave = comparison_panel(0, col);
    canvas.blit(render_waveform(audio[col]->samples, wave[2], wave[3]), wave[0],
                wave[1]);

    const MagnitudeSpectrogram& spec = *spectra[col];
    const auto max_bin = static_cast<std::size_t>(
        std::floor(kComparisonMaxHz * static_cast<double>(spec.config.win_size) /
                   spec.sample_rate));
    const auto stft_panel = comparison_panel(1, col);
    canvas.blit(render_heatmap(squared(spec.values, max_bin + 1), true,
                               stft_panel[2], stft_panel[3]),
                stft_panel[0], stft_panel[1]);

    const auto mel_panel = comparison_panel(2, col);
    canvas.blit(render_heatmap(mels[col]->values, true, mel_panel[2],
                               mel_panel[3]),
                mel_panel[0], mel_panel[1]);
  }
  return canvas;
}

std::array<long long, 2> PlotTransform::to_pixel(double x, double y) const {
  const double u = (x - x_min) / (x_max - x_min);
  const double v = (y_max - y) / (y_max - y_min);
  return {static_cast<long long>(panel_x) +
              std::llround(u * static_cast<double>(panel_width - 1)),
          static_cast<long long>(panel_y) +
              std::llround(v * static_cast<double>(panel_height - 1))};
}

PlotTransform embedding_transform(const PairedEmbedding& embedding,
                                  std::size_t index) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  std::size_t count = 0;
  for (const Matrix<double>* points :
       {&embedding.original_points, &embedding.synthesized_points}) {
    if (points->cols() < 2) continue;
    for (std::size_t i = 0; i < points->rows(); ++i) {
      x_lo = std::min(x_lo, (*points)(i, 0));
      x_hi = std::max(x_hi, (*points)(i, 0));
      y_lo = std::min(y_lo, (*points)(i, 1));
      y_hi = std::max(y_hi, (*points)(i, 1));
      ++count;
    }
  }
  if (count == 0) {
    throw Error(ErrorKind::kEmptyEmbedding, "no points to plot");
  }
  auto widen = [](double& lo, double& hi) {
    const double margin = hi > lo ? 0.05 * (hi - lo) : 1.0;
    lo -= margin;
    hi += margin;
  };
  widen(x_lo, x_hi);
  widen(y_lo, y_hi);

  constexpr std::size_t kPanel = kEmbeddingWidth / 3;
  constexpr std::size_t kInset = 20;
  constexpr std::size_t kTitle = 40;
  PlotTransform t;
  t.x_min = x_lo;
  t.x_max = x_hi;
  t.y_min = y_lo;
  t.y_max = y_hi;
  t.panel_x = index * kPanel + kInset;
  t.panel_y = kTitle;
  t.panel_width = kPanel - 2 * kInset;
  t.panel_height = kEmbeddingHeight - kTitle - kInset;
  return t;
}

RasterImage render_embedding(const PairedEmbedding& embedding) {
  RasterImage canvas(kEmbeddingWidth, kEmbeddingHeight);
  constexpr Rgb kText = {20, 20, 20};
  constexpr Rgb kBorder = {200, 200, 200};
  const char* titles[3] = {"ORIGINAL", "SYNTHESIZED", "OVERLAY"};
  for (std::size_t panel = 0; panel < 3; ++panel) {
    const PlotTransform t = embedding_transform(embedding, panel);
    draw_text(canvas, t.panel_x, 12, titles[panel], kText, 2);
    draw_frame(canvas, t.panel_x - 1, t.panel_y - 1, t.panel_width + 2,
               t.panel_height + 2, kBorder);

    auto scatter = [&](const Matrix<double>& points, Rgb color) {
      for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto p = t.to_pixel(points(i, 0), points(i, 1));
        draw_marker(canvas, p[0], p[1], color);
      }
    };
    if (panel == 2) {
      for (const auto& [a, b] : embedding.pairs) {
        const auto p = t.to_pixel(embedding.original_points(a, 0),
                                  embedding.original_points(a, 1));
        const auto q = t.to_pixel(embedding.synthesized_points(b, 0),
                                  embedding.synthesized_points(b, 1));
        draw_line(canvas, p[0], p[1], q[0], q[1], kPairColor);
      }
    }
    if (panel != 1) scatter(embedding.original_points, kOriginalColor);
    if (panel != 0) scatter(embedding.synthesized_points, kSynthesizedColor);
  }
  return canvas;
}

}  // namespace soundplot
