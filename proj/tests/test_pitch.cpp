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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "soundplot/error.hpp"
#include "soundplot/pitch.hpp"
#include "support.hpp"

using namespace soundplot;
using namespace soundplot::testing;

namespace {

std::vector<double> naive_difference(const std::vector<double>& x,
                                     std::size_t tau_max) {
  const std::size_t span = x.size() - tau_max;
  std::vector<double> d(tau_max + 1, 0.0);
  for (std::size_t tau = 0; tau <= tau_max; ++tau) {
    for (std::size_t j = 0; j < span; ++j) {
      const double diff = x[j] - x[j + tau];
      d[tau] += diff * diff;
    }
  }
  return d;
}

std::vector<double> naive_cmndf(const std::vector<double>& d) {
  std::vector<double> out(d.size(), 1.0);
  for (std::size_t tau = 1; tau < d.size(); ++tau) {
    double sum = 0.0;
    for (std::size_t j = 1; j <= tau; ++j) sum += d[j];
    out[tau] = sum > 0.0 ? d[tau] * tau / sum : 1.0;
  }
  return out;
}

std::vector<double> frame_of(const AudioBuffer& a, std::size_t start) {
  return {a.samples.begin() + static_cast<std::ptrdiff_t>(start),
          a.samples.begin() + static_cast<std::ptrdiff_t>(start + 2048)};
}

// Threshold values by bisecting the regularized incomplete beta function.
std::vector<double> oracle_thresholds(std::size_t count, double a, double b) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double p = (i + 0.5) / count;
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (boost::math::ibeta(a, b, mid) < p ? lo : hi) = mid;
    }
    out[i] = 0.5 * (lo + hi);
  }
  return out;
}

// Exhaustive scan for the first trough under each threshold.
struct OracleFrame {
  std::vector<std::pair<std::size_t, double>> masses;  // (lag, mass)
  double unvoiced = 0.0;
};

OracleFrame scan(const std::vector<double>& cm, const PitchConfig& cfg) {
  const auto th = oracle_thresholds(cfg.threshold_count, cfg.beta_a, cfg.beta_b);
  const auto lo = static_cast<std::size_t>(std::ceil(22050 / cfg.f_max));
  const auto hi = static_cast<std::size_t>(std::floor(22050 / cfg.f_min));
  OracleFrame out;
  std::size_t global = 0;
  double global_v = std::numeric_limits<double>::infinity();
  for (std::size_t tau = lo; tau <= hi; ++tau) {
    if (cm[tau] < cm[tau - 1] && cm[tau] <= cm[tau + 1] && cm[tau] < global_v) {
      global = tau;
      global_v = cm[tau];
    }
  }
  for (double t : th) {
    bool hit = false;
    for (std::size_t tau = lo; tau <= hi; ++tau) {
      if (cm[tau] < cm[tau - 1] && cm[tau] <= cm[tau + 1] && cm[tau] < t) {
        out.masses.emplace_back(tau, 1.0 / th.size());
        hit = true;
        break;
      }
    }
    if (!hit) {
      if (global) out.masses.emplace_back(global, cfg.no_trough_prob / th.size());
      out.unvoiced += (global ? 1.0 - cfg.no_trough_prob : 1.0) / th.size();
    }
  }
  return out;
}

}  // namespace

TEST_CASE("difference function") {
  const auto x = white_noise(0.2, 8);
  const auto frame = frame_of(x, 100);
  const std::size_t tau_max = 340;
  const auto d = difference_function(frame, tau_max);
  const auto ref = naive_difference(frame, tau_max);
  CHECK(d[0] == 0.0);
  for (std::size_t tau = 1; tau <= tau_max; ++tau) {
    CHECK(d[tau] == doctest::Approx(ref[tau]).epsilon(1e-9));
  }

  std::vector<double> periodic(2048);
  for (std::size_t i = 0; i < periodic.size(); ++i) {
    periodic[i] = std::sin(2.0 * M_PI * i / 50.0) + 0.5 * std::cos(2.0 * M_PI * i / 25.0);
  }
  const auto dp = difference_function(periodic, 400);
  CHECK(dp[50] < 1e-9);
  CHECK(dp[0] == 0.0);
  CHECK_THROWS_AS(difference_function(periodic, 2048), Error);
}

TEST_CASE("cumulative mean normalized difference") {
  const auto x = white_noise(0.2, 9);
  const auto d = naive_difference(frame_of(x, 0), 300);
  const auto ours = cmndf(d);
  const auto ref = naive_cmndf(d);
  CHECK(ours[0] == 1.0);
  for (std::size_t tau = 1; tau < d.size(); ++tau) {
    CHECK(ours[tau] == doctest::Approx(ref[tau]).epsilon(1e-9));
  }
  std::vector<double> periodic(2048);
  for (std::size_t i = 0; i < periodic.size(); ++i) periodic[i] = std::sin(2.0 * M_PI * i / 50.0);
  CHECK(cmndf(difference_function(periodic, 400))[50] < 1e-6);
  const auto zeros = cmndf(std::vector<double>(20, 0.0));
  for (double v : zeros) CHECK(v == 1.0);
}

TEST_CASE("beta thresholds") {
  const PitchConfig cfg;
  const auto th = beta_thresholds(cfg);
  const auto ref = oracle_thresholds(100, 2.0, 18.0);
  REQUIRE(th.size() == 100);
  for (std::size_t i = 0; i < 100; ++i) CHECK(th[i] == doctest::Approx(ref[i]).epsilon(1e-9));
  CHECK(std::is_sorted(th.begin(), th.end()));
}

TEST_CASE("candidates of a 440 Hz sine frame") {
  const PitchConfig cfg;
  const auto x = sine(440.0, 0.3);
  const auto frame = frame_of(x, 1000);
  const std::size_t tau_max = static_cast<std::size_t>(22050 / cfg.f_min) + 1;
  const auto cm = naive_cmndf(naive_difference(frame, tau_max));
  const auto c = pitch_candidates(cmndf(difference_function(frame, tau_max)), 22050, cfg);
  const auto oracle = scan(cm, cfg);

  double oracle_unvoiced = oracle.unvoiced;
  CHECK(c.unvoiced_mass == doctest::Approx(oracle_unvoiced).epsilon(1e-12));
  REQUIRE(!c.candidates.empty());
  const auto best = std::max_element(
      c.candidates.begin(), c.candidates.end(),
      [](const auto& a, const auto& b) { return a.probability < b.probability; });
  CHECK(std::abs(best->frequency_hz - 440.0) < 4.4);
  CHECK(best->probability > 0.9);
  // Oracle mass landing on the trough nearest 22050 / 440.
  double near = 0.0;
  for (const auto& [tau, m] : oracle.masses) {
    if (std::abs(static_cast<double>(tau) - 22050.0 / 440.0) < 1.0) near += m;
  }
  CHECK(best->probability == doctest::Approx(near).epsilon(1e-12));
  CHECK(c.voiced_mass() + c.unvoiced_mass == doctest::Approx(1.0));
}

TEST_CASE("white-noise frames are mostly unvoiced") {
  const PitchConfig cfg;
  const auto x = white_noise(2.0, 31);
  const std::size_t tau_max = static_cast<std::size_t>(22050 / cfg.f_min) + 1;
  double total = 0.0;
  for (int f = 0; f < 20; ++f) {
    const auto frame = frame_of(x, 1500 * f);
    const auto c = pitch_candidates(cmndf(difference_function(frame, tau_max)), 22050, cfg);
    const auto oracle = scan(naive_cmndf(naive_difference(frame, tau_max)), cfg);
    CHECK(c.unvoiced_mass == doctest::Approx(oracle.unvoiced).epsilon(1e-9));
    total += c.unvoiced_mass;
  }
  CHECK(total / 20.0 > 0.5);
}

TEST_CASE("silent frame carries no voiced mass") {
  const PitchConfig cfg;
  const std::vector<double> frame(2048, 0.0);
  const auto c = pitch_candidates(cmndf(difference_function(frame, 340)), 22050, cfg);
  CHECK(c.candidates.empty());
  CHECK(c.unvoiced_mass == 1.0);
}

TEST_CASE("hmm layout") {
  const PitchConfig cfg;
  CandidateLattice lattice;
  lattice.frames.resize(2);
  const PitchHmm hmm(lattice, cfg);
  const auto n = static_cast<std::size_t>(std::floor(120.0 * std::log2(2093.0 / 65.0))) + 1;
  CHECK(hmm.bins() == n);
  CHECK(hmm.states() == 2 * n);
  CHECK(hmm.half_width() == 100);
  CHECK(hmm.bin_frequencies().front() == doctest::Approx(65.0));
  for (std::size_t from : {std::size_t{0}, n / 2, n - 1, n + 3}) {
    double row = 0.0;
    for (std::size_t to = 0; to < hmm.states(); ++to) row += hmm.transition(from, to);
    CHECK(row == doctest::Approx(1.0));
  }
  CHECK(hmm.transition(10, 10 + 101) == 0.0);
  CHECK(hmm.nearest_bin(65.0 * std::exp2(13.4 / 120.0)) == 13);
}

TEST_CASE("viterbi on an all-unvoiced lattice") {
  const PitchConfig cfg;
  CandidateLattice lattice;
  lattice.frames.resize(6);
  lattice.frame_times.assign(6, 0.0);
  const auto track = viterbi_decode(lattice, cfg);
  for (const auto& f : track.f0) CHECK_FALSE(f.has_value());
  CHECK(track.voiced_fraction() == 0.0);
}

TEST_CASE("viterbi follows candidates one bin apart") {
  const PitchConfig cfg;
  const double f1 = 65.0 * std::exp2(200.0 / 120.0);
  const double f2 = 65.0 * std::exp2(201.0 / 120.0);
  CandidateLattice lattice;
  lattice.frame_times = {0.0, 0.023};
  lattice.frames = {CandidateFrame{{{f1, 0.95}}, 0.05},
                    CandidateFrame{{{f2, 0.95}}, 0.05}};
  const auto track = viterbi_decode(lattice, cfg);
  REQUIRE(track.f0[0].has_value());
  REQUIRE(track.f0[1].has_value());
  CHECK(*track.f0[0] == f1);
  CHECK(*track.f0[1] == f2);
  CHECK(track.voiced_prob[0] == doctest::Approx(0.95));
}

TEST_CASE("viterbi equals enumeration on small lattices") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit;
  for (int trial = 0; trial < 40; ++trial) {
    PitchConfig cfg;
    const std::size_t bins = 1 + trial % 3;
    cfg.f_min = 300.0;
    cfg.f_max = cfg.f_min * std::exp2((bins - 0.5) / 120.0);
    cfg.switch_prob = 0.05 + 0.4 * unit(rng);
    CandidateLattice lattice;
    const std::size_t frames = 2 + trial % 3;
    for (std::size_t m = 0; m < frames; ++m) {
      CandidateFrame f;
      const double p = unit(rng) * 0.8;
      if (p > 0.1) f.candidates.push_back({cfg.f_min + unit(rng) * (cfg.f_max - cfg.f_min), p});
      f.unvoiced_mass = 1.0 - f.voiced_mass();
      lattice.frames.push_back(f);
    }
    const PitchHmm hmm(lattice, cfg);
    const auto path = hmm.most_likely_path();
    const std::size_t s = hmm.states();
    auto score = [&](const std::vector<std::uint32_t>& p) {
      double lp = std::log(hmm.initial(p[0])) +
                  std::log(std::max(hmm.emission(p[0], 0), kEmissionFloor));
      for (std::size_t m = 1; m < p.size(); ++m) {
        lp += std::log(hmm.transition(p[m - 1], p[m])) +
              std::log(std::max(hmm.emission(p[m], m), kEmissionFloor));
      }
      return lp;
    };
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> p(frames, 0);
    while (true) {
      best = std::max(best, score(p));
      std::size_t pos = 0;
      while (pos < frames && ++p[pos] == s) p[pos++] = 0;
      if (pos == frames) break;
    }
    CHECK(score(path) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("tracking a 440 Hz sine") {
  const auto track = track_pitch(sine(440.0, 1.0));
  CHECK(track.frames() == 44);
  std::vector<double> voiced;
  for (const auto& f : track.f0) {
    if (f) voiced.push_back(*f);
  }
  std::sort(voiced.begin(), voiced.end());
  REQUIRE(!voiced.empty());
  CHECK(std::abs(voiced[voiced.size() / 2] - 440.0) < 4.4);
  CHECK(track.voiced_fraction() > 0.9);
}

TEST_CASE("silence and noise") {
  const auto silent = track_pitch(make_buffer(std::vector<double>(22050, 0.0)));
  for (const auto& f : silent.f0) CHECK_FALSE(f.has_value());
  CHECK(track_pitch(white_noise(1.0, 1234)).voiced_fraction() < 0.3);
}

TEST_CASE("glide tracks upward") {
  // Phase of a linear 500 -> 1000 Hz glide over 2 s.
  const int fs = 22050;
  std::vector<double> x(2 * fs);
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double t = static_cast<double>(n) / fs;
    x[n] = 0.8 * std::sin(2.0 * M_PI * (500.0 * t + 125.0 * t * t));
  }
  const auto track = track_pitch(make_buffer(x));
  std::vector<double> f;
  for (std::size_t m = 2; m + 2 < track.frames(); ++m) {
    REQUIRE(track.f0[m].has_value());
    f.push_back(*track.f0[m]);
  }
  std::vector<double> smooth;
  for (std::size_t i = 2; i + 2 < f.size(); ++i) {
    std::vector<double> w(f.begin() + i - 2, f.begin() + i + 3);
    std::nth_element(w.begin(), w.begin() + 2, w.end());
    smooth.push_back(w[2]);
  }
  for (std::size_t i = 1; i < smooth.size(); ++i) CHECK(smooth[i] >= smooth[i - 1]);
  // Instantaneous frequency 500 + 250 t at frame 40.
  const double t40 = 40 * 512.0 / fs;
  CHECK(*track.f0[40] == doctest::Approx(500.0 + 250.0 * t40).epsilon(0.01));
}

TEST_CASE("config validation") {
  PitchConfig cfg;
  cfg.f_min = 5.0;
  CHECK_THROWS_AS(cfg.validate(22050), Error);
  cfg = PitchConfig{};
  cfg.f_max = 20000.0;
  CHECK_THROWS_AS(cfg.validate(22050), Error);
  cfg = PitchConfig{};
  cfg.f_min = 3000.0;
  CHECK_THROWS_AS(cfg.validate(22050), Error);
}
