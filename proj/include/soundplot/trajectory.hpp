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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "soundplot/pitch.hpp"
#include "soundplot/spectral.hpp"

namespace soundplot {

inline constexpr double kTrajectoryExtent = 10.0;

struct TrajectoryPoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  std::optional<double> pitch_hz;  // empty when unvoiced
  double energy = 0.0;

  bool operator==(const TrajectoryPoint&) const = default;
};

struct Trajectory {
  int sample_rate = 0;
  std::size_t hop = 0;
  std::string audio;  // wav path relative to the session folder
  std::vector<TrajectoryPoint> points;

  bool operator==(const Trajectory&) const = default;
};

/// Min-max map onto [0, upper]; a constant series maps to upper / 2.
std::vector<double> normalize_to_range(std::span<const double> values,
                                       double upper = kTrajectoryExtent);
FeatureTimeSeries normalize_to_range(const FeatureTimeSeries& series,
                                     double upper = kTrajectoryExtent);

/// Pitch for every frame: interior unvoiced runs are interpolated linearly,
/// leading and trailing runs copy the nearest voiced value, and a fully
/// unvoiced track sits at f_min.
std::vector<double> fill_unvoiced(const PitchTrack& pitch, double f_min);

/// x = centroid, y = bandwidth, z = filled pitch, each normalized to
/// [0, 10]; energy normalized to [0, 1]; t = m * hop / sample_rate.
Trajectory build_trajectory(const FeatureTimeSeries& centroid,
                            const FeatureTimeSeries& bandwidth,
                            const PitchTrack& pitch,
                            const FeatureTimeSeries& energy, double f_min,
                            int sample_rate, std::size_t hop);

nlohmann::ordered_json to_json(const Trajectory& trajectory);
Trajectory trajectory_from_json(const nlohmann::json& doc);

}  // namespace soundplot
