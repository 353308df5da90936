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

#include "soundplot/fft.hpp"

#include <cmath>
#include <utility>

#include "soundplot/error.hpp"

namespace soundplot {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

FftPlan::FftPlan(std::size_t size) : size_(size) {
  if (!is_power_of_two(size)) {
    throw Error(ErrorKind::kInvalidConfig,
                "FFT size " + std::to_string(size) + " is not a power of two");
  }
  twiddles_.resize(size / 2);
  for (std::size_t k = 0; k < size / 2; ++k) {
    const double angle = -2.0 * M_PI * static_cast<double>(k) / size;
    twiddles_[k] = Complex(std::cos(angle), std::sin(angle));
  }
  bit_reverse_.resize(size);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < size) ++bits;
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    }
    bit_reverse_[i] = r;
  }
}

void FftPlan::transform(std::span<Complex> data, bool inverse) const {
  const std::size_t n = size_;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = bit_reverse_[i];
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        Complex w = twiddles_[k * stride];
        if (inverse) w = std::conj(w);
        const Complex a = data[start + k];
        const Complex b = data[start + k + half] * w;
        data[start + k] = a + b;
        data[start + k + half] = a - b;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : data) v *= scale;
  }
}

void FftPlan::forward(std::span<Complex> data) const { transform(data, false); }

void FftPlan::inverse(std::span<Complex> data) const { transform(data, true); }

void FftPlan::forward_real(std::span<const double> in,
                           std::span<Complex> out) const {
  std::vector<Complex> buf(in.begin(), in.end());
  transform(buf, false);
  for (std::size_t k = 0; k <= size_ / 2; ++k) out[k] = buf[k];
}

void FftPlan::inverse_real(std::span<const Complex> in,
                           std::span<double> out) const {
  const std::size_t n = size_;
  std::vector<Complex> buf(n);
  buf[0] = Complex(in[0].real(), 0.0);
  if (n > 1) buf[n / 2] = Complex(in[n / 2].real(), 0.0);
  for (std::size_t k = 1; k < n / 2; ++k) {
    buf[k] = in[k];
    buf[n - k] = std::conj(in[k]);
  }
  transform(buf, true);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[i].real();
}

}  // namespace soundplot
