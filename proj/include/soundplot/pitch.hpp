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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "soundplot/audio_io.hpp"
#include "soundplot/matrix.hpp"
#include "soundplot/spectral.hpp"

namespace soundplot {

/// Probabilistic YIN parameters. The numeric defaults follow the published
/// pYIN reference implementation.
struct PitchConfig {
  double f_min = 65.0;
  double f_max = 2093.0;
  StftConfig frame;
  std::size_t threshold_count = 100;
  double beta_a = 2.0;
  double beta_b = 18.0;
  std::size_t bins_per_semitone = 10;
  double switch_prob = 0.01;
  std::size_t max_semitones_per_frame = 10;
  double no_trough_prob = 0.01;

  void validate(int sample_rate) const;
};

struct PitchCandidate {
  double frequency_hz = 0.0;
  double probability = 0.0;
};

struct CandidateFrame {
  std::vector<PitchCandidate> candidates;
  double unvoiced_mass = 1.0;

  double voiced_mass() const;
};

struct CandidateLattice {
  std::vector<double> frame_times;
  std::vector<CandidateFrame> frames;
};

struct PitchTrack {
  std::vector<double> frame_times;
  /// Empty for unvoiced frames.
  std::vector<std::optional<double>> f0;
  std::vector<double> voiced_prob;

  std::size_t frames() const { return f0.size(); }
  double voiced_fraction() const;
};

/// d(tau) = sum_{j < W - tau_max} (x_j - x_{j+tau})^2 for tau = 0..tau_max.
/// Every lag integrates over the same W - tau_max samples.
std::vector<double> difference_function(std::span<const double> frame,
                                        std::size_t tau_max);

/// Cumulative mean normalized difference; d'(0) = 1 and 0/0 -> 1.
std::vector<double> cmndf(std::span<const double> d);

/// Threshold values at the quantile midpoints (i + 0.5) / count of
/// Beta(beta_a, beta_b); each carries prior mass 1 / count.
std::vector<double> beta_thresholds(const PitchConfig& config);

CandidateFrame pitch_candidates(std::span<const double> cmnd, int sample_rate,
                                const PitchConfig& config);
/// Overload reusing precomputed beta_thresholds(config).
CandidateFrame pitch_candidates(std::span<const double> cmnd, int sample_rate,
                                const PitchConfig& config,
                                std::span<const double> thresholds);

/// Two-layer (voiced / unvoiced) hidden Markov model over log-spaced pitch
/// bins. State s < bins() is voiced bin s; state bins() + s is unvoiced with
/// pitch memory s.
class PitchHmm {
 public:
  PitchHmm(const CandidateLattice& lattice, const PitchConfig& config);

  std::size_t bins() const { return bin_freqs_.size(); }
  std::size_t states() const { return 2 * bins(); }
  std::size_t frames() const { return emissions_.cols(); }
  std::size_t half_width() const { return half_width_; }
  const std::vector<double>& bin_frequencies() const { return bin_freqs_; }

  double initial(std::size_t state) const;
  double transition(std::size_t from, std::size_t to) const;
  double emission(std::size_t state, std::size_t frame) const {
    return emissions_(state, frame);
  }

  /// Max-product path in log space. Emissions are floored at 1e-300 so a
  /// frame with no support never zeroes every path.
  std::vector<std::uint32_t> most_likely_path() const;

  std::size_t nearest_bin(double frequency_hz) const;

 private:
  double pitch_kernel(std::size_t from_bin, std::size_t to_bin) const;

  std::vector<double> bin_freqs_;
  std::vector<double> row_norm_;
  std::size_t half_width_;
  double switch_prob_;
  double f_min_;
  double bins_per_octave_;
  Matrix<double> emissions_;  // states x frames
};

inline constexpr double kEmissionFloor = 1e-300;

PitchTrack viterbi_decode(const CandidateLattice& lattice,
                          const PitchConfig& config);

CandidateLattice candidate_lattice(const AudioBuffer& audio,
                                   const PitchConfig& config);

PitchTrack track_pitch(const AudioBuffer& audio,
                       const PitchConfig& config = {});

}  // namespace soundplot
