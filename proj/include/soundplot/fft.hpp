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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace soundplot {

using Complex = std::complex<double>;

/// Iterative radix-2 FFT of a fixed power-of-two size. Twiddles and the
/// bit-reversal permutation are computed once per plan; a plan is immutable
/// after construction and may be shared between threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t size);

  std::size_t size() const { return size_; }

  /// In-place forward transform, X[k] = sum_n x[n] exp(-2 pi i k n / N).
  void forward(std::span<Complex> data) const;
  /// In-place inverse transform including the 1/N factor.
  void inverse(std::span<Complex> data) const;

  /// Real input of length N -> bins 0..N/2.
  void forward_real(std::span<const double> in, std::span<Complex> out) const;
  /// Bins 0..N/2 of a Hermitian spectrum -> real signal of length N. The
  /// imaginary parts of the DC and Nyquist bins are ignored.
  void inverse_real(std::span<const Complex> in, std::span<double> out) const;

 private:
  void transform(std::span<Complex> data, bool inverse) const;

  std::size_t size_;
  std::vector<Complex> twiddles_;
  std::vector<std::size_t> bit_reverse_;
};

bool is_power_of_two(std::size_t n);

}  // namespace soundplot
