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

#include "soundplot/trajectory.hpp"

#include <algorithm>

#include "soundplot/error.hpp"

namespace soundplot {

std::vector<double> normalize_to_range(std::span<const double> values,
                                       double upper) {
  std::vector<double> out(values.size(), upper / 2.0);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = std::clamp(upper * (values[i] - *lo) / range, 0.0, upper);
  }
  return out;
}

FeatureTimeSeries normalize_to_range(const FeatureTimeSeries& series,
                                     double upper) {
  FeatureTimeSeries out = series;
  std::vector<double> row(series.frames());
  for (std::size_t d = 0; d < series.dims(); ++d) {
    for (std::size_t m = 0; m < series.frames(); ++m) row[m] = series.values(d, m);
    const auto scaled = normalize_to_range(row, upper);
    for (std::size_t m = 0; m < series.frames(); ++m) out.values(d, m) = scaled[m];
  }
  return out;
}

std::vector<double> fill_unvoiced(const PitchTrack& pitch, double f_min) {
  const std::size_t n = pitch.frames();
  std::vector<double> out(n, f_min);
  std::vector<std::size_t> voiced;
  for (std::size_t m = 0; m < n; ++m) {
    if (pitch.f0[m]) voiced.push_back(m);
  }
  if (voiced.empty()) return out;

  for (std::size_t m = 0; m < voiced.front(); ++m) out[m] = *pitch.f0[voiced.front()];
  for (std::size_t m = voiced.back(); m < n; ++m) out[m] = *pitch.f0[voiced.back()];
  for (std::size_t i = 0; i + 1 < voiced.size(); ++i) {
    const std::size_t a = voiced[i];
    const std::size_t b = voiced[i + 1];
    const double fa = *pitch.f0[a];
    const double fb = *pitch.f0[b];
    for (std::size_t m = a; m < b; ++m) {
      const double u = static_cast<double>(m - a) / static_cast<double>(b - a);
      out[m] = fa + u * (fb - fa);
    }
  }
  return out;
}

Trajectory build_trajectory(const FeatureTimeSeries& centroid,
                            const FeatureTimeSeries& bandwidth,
                            const PitchTrack& pitch,
                            const FeatureTimeSeries& energy, double f_min,
                            int sample_rate, std::size_t hop) {
  const std::size_t n = centroid.frames();
  if (bandwidth.frames() != n || pitch.frames() != n || energy.frames() != n) {
    throw Error(ErrorKind::kShapeMismatch,
                "trajectory inputs differ in frame count");
  }
  if (sample_rate <= 0 || hop == 0) {
    throw Error(ErrorKind::kInvalidConfig, "sample rate and hop must be positive");
  }
  const auto x = normalize_to_range(centroid.scalar());
  const auto y = normalize_to_range(bandwidth.scalar());
  const auto z = normalize_to_range(fill_unvoiced(pitch, f_min));
  const auto e = normalize_to_range(energy.scalar(), 1.0);

  Trajectory out;
  out.sample_rate = sample_rate;
  out.hop = hop;
  out.points.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    auto& p = out.points[m];
    p.t = static_cast<double>(m * hop) / sample_rate;
    p.x = x[m];
    p.y = y[m];
    p.z = z[m];
    p.pitch_hz = pitch.f0[m];
    p.energy = e[m];
  }
  return out;
}

nlohmann::ordered_json to_json(const Trajectory& trajectory) {
  nlohmann::ordered_json doc;
  doc["sample_rate"] = trajectory.sample_rate;
  doc["hop"] = trajectory.hop;
  doc["audio"] = trajectory.audio;
  auto points = nlohmann::ordered_json::array();
  for (const auto& p : trajectory.points) {
    nlohmann::ordered_json point;
    point["t"] = p.t;
    point["x"] = p.x;
    point["y"] = p.y;
    point["z"] = p.z;
    point["pitch_hz"] = p.pitch_hz ? nlohmann::ordered_json(*p.pitch_hz)
                                   : nlohmann::ordered_json(nullptr);
    point["energy"] = p.energy;
    points.push_back(std::move(point));
  }
  doc["points"] = std::move(points);
  return doc;
}

Trajectory trajectory_from_json(const nlohmann::json& doc) {
  try {
    Trajectory out;
    out.sample_rate = doc.at("sample_rate").get<int>();
    out.hop = doc.at("hop").get<std::size_t>();
    out.audio = doc.at("audio").get<std::string>();
    for (const auto& point : doc.at("points")) {
      TrajectoryPoint p;
      p.t = point.at("t").get<double>();
      p.x = point.at("x").get<double>();
      p.y = point.at("y").get<double>();
      p.z = point.at("z").get<double>();
      if (!point.at("pitch_hz").is_null()) {
        p.pitch_hz = point.at("pitch_hz").get<double>();
      }
      p.energy = point.at("energy").get<double>();
      out.points.push_back(p);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kIoError,
                std::string("malformed trajectory document: ") + e.what());
  }
}

}  // namespace soundplot
