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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "soundplot/audio_io.hpp"
#include "soundplot/matrix.hpp"

namespace soundplot::testing {

inline AudioBuffer make_buffer(std::vector<double> samples,
                               int sample_rate = kCanonicalSampleRate) {
  AudioBuffer b;
  b.samples = std::move(samples);
  b.sample_rate = sample_rate;
  return b;
}

inline AudioBuffer sine(double hz, double seconds, double amplitude = 1.0,
                        int sample_rate = kCanonicalSampleRate) {
  const auto n = static_cast<std::size_t>(std::lround(seconds * sample_rate));
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = amplitude * std::sin(2.0 * M_PI * hz * static_cast<double>(i) /
                                sample_rate);
  }
  return make_buffer(std::move(x), sample_rate);
}

inline AudioBuffer white_noise(double seconds, std::uint64_t seed,
                               double amplitude = 0.5,
                               int sample_rate = kCanonicalSampleRate) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, amplitude);
  const auto n = static_cast<std::size_t>(std::lround(seconds * sample_rate));
  std::vector<double> x(n);
  for (double& v : x) v = dist(rng);
  return make_buffer(std::move(x), sample_rate);
}

// Linear chirp from f0 to f1 under a Hann envelope, added into `x`.
inline void add_chirp(std::vector<double>& x, int fs, double start_s,
                      double dur_s, double f0, double f1, double amp) {
  const auto begin = static_cast<std::size_t>(start_s * fs);
  const auto len = static_cast<std::size_t>(dur_s * fs);
  double phase = 0.0;
  for (std::size_t i = 0; i < len && begin + i < x.size(); ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(len);
    const double f = f0 + (f1 - f0) * u;
    phase += 2.0 * M_PI * f / fs;
    const double env = 0.5 - 0.5 * std::cos(2.0 * M_PI * u);
    x[begin + i] += amp * env * (std::sin(phase) + 0.3 * std::sin(2.0 * phase));
  }
}

// Deterministic 3 s birdsong-like fixture: an upward chirp, a downward
// chirp and a trill of short frequency-modulated notes over a background
// noise floor 40 dB below full scale.
inline AudioBuffer birdsong_fixture(int fs = kCanonicalSampleRate) {
  std::vector<double> x(static_cast<std::size_t>(3 * fs), 0.0);
  add_chirp(x, fs, 0.15, 0.80, 1800.0, 3600.0, 0.8);
  add_chirp(x, fs, 1.10, 0.70, 4200.0, 2400.0, 0.7);
  for (int note = 0; note < 10; ++note) {
    add_chirp(x, fs, 2.00 + 0.09 * note, 0.06, 3000.0, 3800.0, 0.6);
  }
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> dist(0.0, 1e-2);
  for (double& v : x) v += dist(rng);
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  for (double& v : x) v /= peak;
  AudioBuffer b = make_buffer(std::move(x), fs);
  b.source_name = "fixture";
  return b;
}

// O(N^2) DFT bins 0..N/2 of a real frame.
inline std::vector<std::complex<double>> naive_dft(
    const std::vector<double>& frame) {
  const std::size_t n = frame.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = -2.0 * M_PI * static_cast<double>((k * j) % n) / n;
      acc += frame[j] * std::complex<double>(std::cos(a), std::sin(a));
    }
    out[k] = acc;
  }
  return out;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a[i][i];
  std::sort(values.rbegin(), values.rend());
  return values;
}

// Sample covariance (divisor M - 1) of a D x M matrix by explicit loops.
inline std::vector<std::vector<double>> naive_covariance(const Matrix<double>& x) {
  const std::size_t d = x.rows();
  const std::size_t m = x.cols();
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < m; ++j) mean[i] += x(i, j);
    mean[i] /= static_cast<double>(m);
  }
  std::vector<std::vector<double>> c(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t j = 0; j < m; ++j) {
        c[i][k] += (x(i, j) - mean[i]) * (x(k, j) - mean[k]);
      }
      c[i][k] /= static_cast<double>(m - 1);
    }
  }
  return c;
}

inline Matrix<double> random_matrix(std::size_t rows, std::size_t cols,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix<double> m(rows, cols);
  for (double& v : m.data()) v = dist(rng);
  return m;
}

inline double l2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("soundplot_test_" + name + "_" +
              std::to_string(std::random_device{}()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace soundplot::testing
