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

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "soundplot/error.hpp"
#include "soundplot/metrics.hpp"
#include "soundplot/spectral.hpp"
#include "soundplot/synthesis.hpp"
#include "support.hpp"

using namespace soundplot;
using namespace soundplot::testing;

namespace {

double naive_pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

const MelFilterbank& bank() {
  static const MelFilterbank fb = build_mel_filterbank(128, 1025, 22050, 0.0);
  return fb;
}

}  // namespace

TEST_CASE("align truncates to the common prefix") {
  const std::vector<double> a(22050, 1.0);
  const std::vector<double> b(22480, 2.0);
  const auto [x, y] = align(a, b);
  CHECK(x.size() == 22050);
  CHECK(y.size() == 22050);
  CHECK_THROWS_AS(align(std::vector<double>{}, b), Error);
  try {
    align(a, std::vector<double>{});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kEmptySignal);
  }
}

TEST_CASE("snr") {
  const auto x = sine(440.0, 0.5);
  CHECK(snr_db(x.samples, x.samples) == kSnrCapDb);
  std::vector<double> neg(x.samples);
  for (double& v : neg) v = -v;
  CHECK(snr_db(x.samples, neg) == doctest::Approx(-6.0206).epsilon(1e-5));
  CHECK(snr_db(x.samples, std::vector<double>(x.size(), 0.0)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  std::vector<double> half(x.samples);
  for (double& v : half) v *= 0.5;
  CHECK(snr_db(x.samples, half) == doctest::Approx(20.0 * std::log10(2.0)));
  CHECK(snr_db(std::vector<double>(10, 0.0), std::vector<double>(10, 1.0)) == -kSnrCapDb);
}

TEST_CASE("pearson") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist;
  for (int t = 0; t < 5; ++t) {
    std::vector<double> a(500);
    std::vector<double> b(500);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = dist(rng);
      b[i] = 0.3 * a[i] + dist(rng);
    }
    CHECK(pearson(a, b) == doctest::Approx(naive_pearson(a, b)).epsilon(1e-12));
    CHECK(pearson(a, b) == pearson(b, a));
  }
  CHECK(pearson(std::vector<double>(8, 2.0), std::vector<double>(8, 1.0)) == 0.0);
}

TEST_CASE("waveform correlation") {
  const auto x = sine(441.0, 1.0);
  CHECK(waveform_correlation(x.samples, x.samples) == doctest::Approx(1.0));
  std::vector<double> neg(x.samples);
  for (double& v : neg) v = -v;
  CHECK(waveform_correlation(x.samples, neg) == doctest::Approx(-1.0));
  // 441 Hz has a period of exactly 50 samples; shift by a quarter.
  std::vector<double> shifted(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    shifted[i] = std::sin(2.0 * M_PI * 441.0 * static_cast<double>(i) / 22050.0 + M_PI / 2);
  }
  CHECK(std::abs(waveform_correlation(x.samples, shifted)) < 1e-3);
}

TEST_CASE("spectral correlation") {
  const auto x = birdsong_fixture();
  CHECK(spectral_correlation(x, x) == doctest::Approx(1.0));
  CHECK(spectral_correlation(x, make_buffer(std::vector<double>(x.size(), 0.0))) == 0.0);

  // Random phase rotation of every frame followed by the inverse transform.
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < 3; ++trial) {
    auto spec = stft(x);
    const Complex rot = std::polar(1.0, phase(rng));
    for (Complex& v : spec.values.data()) v *= rot;
    const auto y = istft(spec, x.size());
    CHECK(spectral_correlation(x, y) > 0.99);
  }
  // Independent rotations per frame interfere across the 75% overlap.
  auto spec = stft(x);
  for (std::size_t m = 0; m < spec.frames(); ++m) {
    const Complex rot = std::polar(1.0, phase(rng));
    for (std::size_t k = 0; k < spec.bins(); ++k) spec.values(k, m) *= rot;
  }
  const auto y = istft(spec, x.size());
  CHECK(spectral_correlation(x, y) > 0.9);
}

TEST_CASE("mel correlation") {
  const auto x = birdsong_fixture();
  CHECK(mel_correlation(x, x, bank()) == doctest::Approx(1.0));
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto a = white_noise(1.0, 100 + s);
    const auto b = white_noise(1.0, 200 + s);
    CHECK(std::abs(mel_correlation(a, b, bank())) < 0.3);
  }
}

TEST_CASE("compute_all identities") {
  const auto x = birdsong_fixture();
  const auto same = compute_all(x, x);
  CHECK(same.snr_db == kSnrCapDb);
  CHECK(same.waveform_corr == doctest::Approx(1.0));
  CHECK(same.spectral_corr == doctest::Approx(1.0));
  CHECK(same.mel_corr == doctest::Approx(1.0));
  CHECK(same.aligned_length == x.size());

  AudioBuffer neg = x;
  for (double& v : neg.samples) v = -v;
  const auto flipped = compute_all(x, neg);
  CHECK(flipped.snr_db == doctest::Approx(-6.0206).epsilon(1e-5));
  CHECK(flipped.waveform_corr == doctest::Approx(-1.0));
  CHECK(flipped.spectral_corr == doctest::Approx(1.0));
  CHECK(flipped.mel_corr == doctest::Approx(1.0));

  AudioBuffer longer = x;
  longer.samples.resize(x.size() + 430, 0.0);
  CHECK(compute_all(x, longer).aligned_length == x.size());
}

TEST_CASE("two-tone pipeline keeps the waveform uncorrelated") {
  auto tones = sine(1000.0, 2.0, 0.5);
  const auto b = sine(3000.0, 2.0, 0.3);
  for (std::size_t i = 0; i < tones.size(); ++i) tones.samples[i] += b.samples[i];
  const auto y = synthesize(tones);
  const auto m = compute_all(tones, y);
  CHECK(m.waveform_corr >= -0.2);
  CHECK(m.waveform_corr <= 0.2);
}
