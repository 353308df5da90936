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

#include "soundplot/pitch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/beta.hpp>

#include "soundplot/error.hpp"
#include "soundplot/fft.hpp"

namespace soundplot {
namespace {

std::size_t lag_limit(int sample_rate, double f_min) {
  return static_cast<std::size_t>(std::floor(sample_rate / f_min));
}

}  // namespace

void PitchConfig::validate(int sample_rate) const {
  frame.validate();
  if (!(f_min > 0.0) || !(f_min < f_max) || f_max > sample_rate / 2.0) {
    throw Error(ErrorKind::kInvalidRange,
                "pitch range must satisfy 0 < f_min < f_max <= Nyquist");
  }
  if (std::ceil(sample_rate / f_min) + 1 >= static_cast<double>(frame.win_size)) {
    throw Error(ErrorKind::kInvalidRange,
                "f_min too low for the analysis window");
  }
  if (threshold_count == 0 || bins_per_semitone == 0 || beta_a <= 0.0 ||
      beta_b <= 0.0) {
    throw Error(ErrorKind::kInvalidConfig, "invalid pYIN parameters");
  }
  if (switch_prob < 0.0 || switch_prob > 1.0 || no_trough_prob < 0.0 ||
      no_trough_prob > 1.0) {
    throw Error(ErrorKind::kInvalidConfig, "probabilities must lie in [0, 1]");
  }
}

double CandidateFrame::voiced_mass() const {
  double total = 0.0;
  for (const auto& c : candidates) total += c.probability;
  return total;
}

double PitchTrack::voiced_fraction() const {
  if (f0.empty()) return 0.0;
  const auto voiced = std::count_if(f0.begin(), f0.end(),
                                    [](const auto& v) { return v.has_value(); });
  return static_cast<double>(voiced) / static_cast<double>(f0.size());
}

std::vector<double> difference_function(std::span<const double> frame,
                                        std::size_t tau_max) {
  const std::size_t w = frame.size();
  if (tau_max >= w) {
    throw Error(ErrorKind::kInvalidConfig, "tau_max must be below frame size");
  }
  const std::size_t span = w - tau_max;

  // Cross term r(tau) = sum_j x_j x_{j+tau} via one circular correlation;
  // an FFT of length >= w never wraps for tau <= tau_max.
  std::size_t size = 1;
  while (size < w) size <<= 1;
  const FftPlan plan(size);
  std::vector<Complex> head(size, 0.0);
  std::vector<Complex> full(size, 0.0);
  for (std::size_t j = 0; j < span; ++j) head[j] = frame[j];
  for (std::size_t j = 0; j < w; ++j) full[j] = frame[j];
  plan.forward(head);
  plan.forward(full);
  for (std::size_t k = 0; k < size; ++k) full[k] *= std::conj(head[k]);
  plan.inverse(full);

  std::vector<double> prefix(w + 1, 0.0);
  for (std::size_t j = 0; j < w; ++j) {
    prefix[j + 1] = prefix[j] + frame[j] * frame[j];
  }
  const double head_energy = prefix[span];
  std::vector<double> d(tau_max + 1, 0.0);
  for (std::size_t tau = 1; tau <= tau_max; ++tau) {
    const double shifted = prefix[tau + span] - prefix[tau];
    d[tau] = std::max(0.0, head_energy + shifted - 2.0 * full[tau].real());
  }
  return d;
}

std::vector<double> cmndf(std::span<const double> d) {
  std::vector<double> out(d.size(), 1.0);
  double running = 0.0;
  for (std::size_t tau = 1; tau < d.size(); ++tau) {
    running += d[tau];
    out[tau] = running > 0.0 ? d[tau] * static_cast<double>(tau) / running : 1.0;
  }
  return out;
}

std::vector<double> beta_thresholds(const PitchConfig& config) {
  const boost::math::beta_distribution<double> prior(config.beta_a,
                                                     config.beta_b);
  std::vector<double> out(config.threshold_count);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double p = (static_cast<double>(i) + 0.5) / out.size();
    out[i] = boost::math::quantile(prior, p);
  }
  return out;
}

CandidateFrame pitch_candidates(std::span<const double> cmnd, int sample_rate,
                                const PitchConfig& config) {
  return pitch_candidates(cmnd, sample_rate, config, beta_thresholds(config));
}

CandidateFrame pitch_candidates(std::span<const double> cmnd, int sample_rate,
                                const PitchConfig& config,
                                std::span<const double> thresholds) {
  CandidateFrame out;
  if (cmnd.size() < 3) return out;
  const std::size_t lo = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(sample_rate / config.f_max)));
  const std::size_t hi =
      std::min(cmnd.size() - 2, lag_limit(sample_rate, config.f_min));

  std::vector<std::size_t> troughs;
  for (std::size_t tau = lo; tau <= hi; ++tau) {
    if (cmnd[tau] < cmnd[tau - 1] && cmnd[tau] <= cmnd[tau + 1]) {
      troughs.push_back(tau);
    }
  }
  if (troughs.empty()) return out;

  const double mass = 1.0 / static_cast<double>(thresholds.size());
  std::vector<double> trough_mass(troughs.size(), 0.0);
  double missed = 0.0;
  for (double threshold : thresholds) {
    const auto hit = std::find_if(troughs.begin(), troughs.end(),
                                  [&](std::size_t tau) {
                                    return cmnd[tau] < threshold;
                                  });
    if (hit == troughs.end()) {
      missed += mass;
    } else {
      trough_mass[hit - troughs.begin()] += mass;
    }
  }
  const auto best = std::min_element(
      troughs.begin(), troughs.end(),
      [&](std::size_t a, std::size_t b) { return cmnd[a] < cmnd[b]; });
  trough_mass[best - troughs.begin()] += config.no_trough_prob * missed;
  out.unvoiced_mass = (1.0 - config.no_trough_prob) * missed;

  for (std::size_t i = 0; i < troughs.size(); ++i) {
    if (trough_mass[i] <= 0.0) continue;
    const std::size_t tau = troughs[i];
    const double left = cmnd[tau - 1];
    const double mid = cmnd[tau];
    const double right = cmnd[tau + 1];
    const double curvature = left - 2.0 * mid + right;
    double shift = 0.0;
    if (curvature > 0.0) {
      shift = std::clamp(0.5 * (left - right) / curvature, -0.5, 0.5);
    }
    const double freq = std::clamp(
        sample_rate / (static_cast<double>(tau) + shift), config.f_min,
        config.f_max);
    out.candidates.push_back({freq, trough_mass[i]});
  }
  return out;
}

PitchHmm::PitchHmm(const CandidateLattice& lattice, const PitchConfig& config)
    : half_width_(config.max_semitones_per_frame * config.bins_per_semitone),
      switch_prob_(config.switch_prob),
      f_min_(config.f_min),
      bins_per_octave_(12.0 * static_cast<double>(config.bins_per_semitone)) {
  const auto n = static_cast<std::size_t>(
                     std::floor(bins_per_octave_ *
                                std::log2(config.f_max / config.f_min) + 1e-9)) +
                 1;
  bin_freqs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    bin_freqs_[i] = f_min_ * std::exp2(static_cast<double>(i) / bins_per_octave_);
  }
  row_norm_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half_width_ ? i - half_width_ : 0;
    const std::size_t hi = std::min(n - 1, i + half_width_);
    for (std::size_t j = lo; j <= hi; ++j) {
      const std::size_t dist = i > j ? i - j : j - i;
      row_norm_[i] += static_cast<double>(half_width_ + 1 - dist);
    }
  }

  emissions_ = Matrix<double>(2 * n, lattice.frames.size());
  for (std::size_t m = 0; m < lattice.frames.size(); ++m) {
    const CandidateFrame& frame = lattice.frames[m];
    const double voiced = std::clamp(frame.voiced_mass(), 0.0, 1.0);
    for (const auto& c : frame.candidates) {
      emissions_(nearest_bin(c.frequency_hz), m) += c.probability;
    }
    for (std::size_t i = 0; i < n; ++i) {
      emissions_(n + i, m) = (1.0 - voiced) / static_cast<double>(n);
    }
  }
}

std::size_t PitchHmm::nearest_bin(double frequency_hz) const {
  const double pos = bins_per_octave_ * std::log2(frequency_hz / f_min_);
  const double clamped =
      std::clamp(std::round(pos), 0.0, static_cast<double>(bins() - 1));
  return static_cast<std::size_t>(clamped);
}

double PitchHmm::pitch_kernel(std::size_t from_bin, std::size_t to_bin) const {
  const std::size_t dist =
      from_bin > to_bin ? from_bin - to_bin : to_bin - from_bin;
  if (dist > half_width_) return 0.0;
  return static_cast<double>(half_width_ + 1 - dist) / row_norm_[from_bin];
}

double PitchHmm::initial(std::size_t) const {
  return 1.0 / static_cast<double>(states());
}

double PitchHmm::transition(std::size_t from, std::size_t to) const {
  const std::size_t n = bins();
  const bool from_voiced = from < n;
  const bool to_voiced = to < n;
  const double layer = from_voiced == to_voiced ? 1.0 - switch_prob_
                                                : switch_prob_;
  return layer * pitch_kernel(from % n, to % n);
}

std::vector<std::uint32_t> PitchHmm::most_likely_path() const {
  const std::size_t n = bins();
  const std::size_t s = states();
  const std::size_t frames_total = frames();
  std::vector<std::uint32_t> path(frames_total, 0);
  if (frames_total == 0) return path;

  const double neg_inf = -std::numeric_limits<double>::infinity();
  auto safe_log = [neg_inf](double p) { return p > 0.0 ? std::log(p) : neg_inf; };
  const double log_stay = safe_log(1.0 - switch_prob_);
  const double log_switch = safe_log(switch_prob_);
  const std::size_t width = 2 * half_width_ + 1;
  // log_kernel[i * width + (j - i + half_width)] = log T(i, j).
  std::vector<double> log_kernel(n * width, neg_inf);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half_width_ ? i - half_width_ : 0;
    const std::size_t hi = std::min(n - 1, i + half_width_);
    for (std::size_t j = lo; j <= hi; ++j) {
      log_kernel[i * width + (j + half_width_ - i)] =
          std::log(pitch_kernel(i, j));
    }
  }
  auto log_emission = [this](std::size_t state, std::size_t m) {
    return std::log(std::max(emissions_(state, m), kEmissionFloor));
  };

  std::vector<double> delta(s);
  std::vector<double> next(s);
  std::vector<std::uint32_t> back(s * frames_total, 0);
  for (std::size_t j = 0; j < s; ++j) {
    delta[j] = std::log(initial(j)) + log_emission(j, 0);
  }
  for (std::size_t m = 1; m < frames_total; ++m) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t lo = j >= half_width_ ? j - half_width_ : 0;
      const std::size_t hi = std::min(n - 1, j + half_width_);
      double best_v = neg_inf;
      double best_u = neg_inf;
      std::uint32_t arg_v = 0;
      std::uint32_t arg_u = 0;
      // Candidates are scanned in state order (voiced before unvoiced) and
      // only strictly better scores replace the incumbent.
      for (std::size_t i = lo; i <= hi; ++i) {
        const double k = log_kernel[i * width + (j + half_width_ - i)];
        const double from_v_to_v = delta[i] + log_stay + k;
        const double from_v_to_u = delta[i] + log_switch + k;
        if (from_v_to_v > best_v) { best_v = from_v_to_v; arg_v = static_cast<std::uint32_t>(i); }
        if (from_v_to_u > best_u) { best_u = from_v_to_u; arg_u = static_cast<std::uint32_t>(i); }
      }
      for (std::size_t i = lo; i <= hi; ++i) {
        const double k = log_kernel[i * width + (j + half_width_ - i)];
        const double from_u_to_v = delta[n + i] + log_switch + k;
        const double from_u_to_u = delta[n + i] + log_stay + k;
        if (from_u_to_v > best_v) { best_v = from_u_to_v; arg_v = static_cast<std::uint32_t>(n + i); }
        if (from_u_to_u > best_u) { best_u = from_u_to_u; arg_u = static_cast<std::uint32_t>(n + i); }
      }
      next[j] = best_v + log_emission(j, m);
      next[n + j] = best_u + log_emission(n + j, m);
      back[m * s + j] = arg_v;
      back[m * s + n + j] = arg_u;
    }
    std::swap(delta, next);
  }
  std::uint32_t state = 0;
  for (std::size_t j = 1; j < s; ++j) {
    if (delta[j] > delta[state]) state = static_cast<std::uint32_t>(j);
  }
  for (std::size_t m = frames_total; m-- > 0;) {
    path[m] = state;
    if (m > 0) state = back[m * s + state];
  }
  return path;
}

PitchTrack viterbi_decode(const CandidateLattice& lattice,
                          const PitchConfig& config) {
  PitchTrack track;
  track.frame_times = lattice.frame_times;
  const std::size_t frames = lattice.frames.size();
  track.f0.assign(frames, std::nullopt);
  track.voiced_prob.assign(frames, 0.0);
  if (frames == 0) return track;

  const PitchHmm hmm(lattice, config);
  const auto path = hmm.most_likely_path();
  for (std::size_t m = 0; m < frames; ++m) {
    const CandidateFrame& frame = lattice.frames[m];
    track.voiced_prob[m] = std::clamp(frame.voiced_mass(), 0.0, 1.0);
    if (path[m] >= hmm.bins()) continue;
    const double bin_freq = hmm.bin_frequencies()[path[m]];
    double best = bin_freq;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& c : frame.candidates) {
      const double dist = std::abs(std::log2(c.frequency_hz / bin_freq));
      if (dist < best_dist) {
        best_dist = dist;
        best = c.frequency_hz;
      }
    }
    track.f0[m] = best;
  }
  return track;
}

CandidateLattice candidate_lattice(const AudioBuffer& audio,
                                   const PitchConfig& config) {
  config.validate(audio.sample_rate);
  if (audio.empty()) {
    throw Error(ErrorKind::kAudioTooShort, "cannot track pitch of silence");
  }
  const std::size_t frames = frame_count(audio.size(), config.frame);
  const std::size_t tau_max = lag_limit(audio.sample_rate, config.f_min) + 1;
  const auto thresholds = beta_thresholds(config);

  CandidateLattice lattice;
  lattice.frame_times =
      frame_times(frames, config.frame.hop, audio.sample_rate);
  lattice.frames.resize(frames);
  std::vector<double> frame(config.frame.win_size);
  for (std::size_t m = 0; m < frames; ++m) {
    extract_frame(audio.samples, config.frame, m, frame);
    const auto d = difference_function(frame, tau_max);
    const auto normalized = cmndf(d);
    lattice.frames[m] =
        pitch_candidates(normalized, audio.sample_rate, config, thresholds);
  }
  return lattice;
}

PitchTrack track_pitch(const AudioBuffer& audio, const PitchConfig& config) {
  return viterbi_decode(candidate_lattice(audio, config), config);
}

}  // namespace soundplot
