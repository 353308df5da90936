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
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "soundplot/analysis.hpp"
#include "soundplot/csv.hpp"
#include "soundplot/error.hpp"
#include "soundplot/trajectory.hpp"
#include "support.hpp"

using namespace soundplot;
using namespace soundplot::testing;

namespace {

FeatureTimeSeries series(std::string name, const std::vector<double>& v) {
  FeatureTimeSeries s;
  s.name = std::move(name);
  s.values = Matrix<double>(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    s.values(0, i) = v[i];
    s.frame_times.push_back(static_cast<double>(i) * 512.0 / 22050.0);
  }
  return s;
}

PitchTrack track(const std::vector<std::optional<double>>& f0) {
  PitchTrack p;
  p.f0 = f0;
  p.voiced_prob.assign(f0.size(), 0.5);
  for (std::size_t i = 0; i < f0.size(); ++i) p.frame_times.push_back(i * 512.0 / 22050.0);
  return p;
}

}  // namespace

TEST_CASE("normalize_to_range") {
  const std::vector<double> v = {2.0, 4.0, 6.0};
  CHECK(normalize_to_range(v) == std::vector<double>{0.0, 5.0, 10.0});
  CHECK(normalize_to_range(v, 1.0) == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(normalize_to_range(std::vector<double>{3.0, 3.0}) == std::vector<double>{5.0, 5.0});
  CHECK(normalize_to_range(std::vector<double>{}).empty());
  const auto s = normalize_to_range(series("c", {1.0, 3.0}));
  CHECK(s.values(0, 1) == 10.0);
  CHECK(s.name == "c");
}

TEST_CASE("fill_unvoiced") {
  const auto filled = fill_unvoiced(track({440.0, std::nullopt, std::nullopt, 880.0}), 65.0);
  REQUIRE(filled.size() == 4);
  CHECK(filled[1] == doctest::Approx(440.0 + 440.0 / 3.0));
  CHECK(filled[2] == doctest::Approx(440.0 + 880.0 / 3.0));
  const auto edges = fill_unvoiced(track({std::nullopt, 300.0, std::nullopt}), 65.0);
  CHECK(edges == std::vector<double>{300.0, 300.0, 300.0});
  CHECK(fill_unvoiced(track({std::nullopt, std::nullopt}), 65.0) == std::vector<double>{65.0, 65.0});
}

TEST_CASE("build_trajectory") {
  const auto c = series("centroid", {1000.0, 2000.0, 3000.0});
  const auto b = series("bandwidth", {100.0, 300.0, 500.0});
  const auto e = series("rms", {0.1, 0.2, 0.4});
  const auto p = track({200.0, std::nullopt, 400.0});
  const auto t = build_trajectory(c, b, p, e, 65.0, 22050, 512);
  REQUIRE(t.points.size() == 3);
  CHECK(t.points[2].x == 10.0);
  CHECK(t.points[2].y == 10.0);
  CHECK(t.points[2].z == 10.0);
  CHECK(t.points[1].z == doctest::Approx(5.0));
  CHECK(t.points[0].energy == 0.0);
  CHECK(t.points[2].energy == 1.0);
  CHECK_FALSE(t.points[1].pitch_hz.has_value());
  CHECK(t.points[2].pitch_hz == 400.0);
  CHECK(t.points[1].t == doctest::Approx(512.0 / 22050.0));

  const auto one = build_trajectory(series("c", {5.0}), series("b", {5.0}), track({std::nullopt}),
                                    series("e", {1.0}), 65.0, 22050, 512);
  CHECK(one.points[0].x == 5.0);
  CHECK(one.points[0].y == 5.0);
  CHECK(one.points[0].z == 5.0);

  CHECK_THROWS_AS(build_trajectory(c, series("b", {1.0}), p, e, 65.0, 22050, 512), Error);
  CHECK_THROWS_AS(build_trajectory(c, b, p, e, 65.0, 0, 512), Error);
  CHECK_THROWS_AS(build_trajectory(c, b, p, e, 65.0, 22050, 0), Error);
}

TEST_CASE("trajectory coordinates stay in range on real audio") {
  const auto a = analyze_stream(birdsong_fixture());
  const auto t = build_trajectory(a.centroid, a.bandwidth, a.pitch, a.rms, 65.0, 22050, 512);
  CHECK(t.points.size() == a.frames());
  for (const auto& p : t.points) {
    for (double v : {p.x, p.y, p.z}) {
      CHECK(v >= 0.0);
      CHECK(v <= 10.0);
    }
    CHECK(p.energy >= 0.0);
    CHECK(p.energy <= 1.0);
  }
}

TEST_CASE("trajectory json") {
  Trajectory t;
  t.sample_rate = 22050;
  t.hop = 512;
  t.audio = "original.wav";
  t.points = {{0.0, 1.0, 2.0, 3.0, 440.0, 0.5}, {0.0232, 4.0, 5.0, 6.0, std::nullopt, 1.0}};
  const auto doc = to_json(t);
  CHECK(doc["points"][1]["pitch_hz"].is_null());
  CHECK(doc["points"][0]["pitch_hz"] == 440.0);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"sample_rate", "hop", "audio", "points"});
  std::vector<std::string> point_keys;
  for (const auto& [k, v] : doc["points"][0].items()) point_keys.push_back(k);
  CHECK(point_keys == std::vector<std::string>{"t", "x", "y", "z", "pitch_hz", "energy"});

  const auto back = trajectory_from_json(nlohmann::json::parse(doc.dump()));
  CHECK(back == t);
  CHECK_THROWS_AS(trajectory_from_json(nlohmann::json::parse(R"({"hop": 1})")), Error);
}

TEST_CASE("feature csv") {
  auto contrast = series("contrast", {1.0, 2.0});
  contrast.values = Matrix<double>(2, 2, 0.25);
  const std::vector<FeatureTimeSeries> cols = {series("centroid", {100.0, 200.5}), contrast};
  std::ostringstream out;
  write_feature_csv(out, cols, track({440.0, std::nullopt}));
  CHECK(out.str() ==
        "time_s,centroid,contrast_0,contrast_1,f0_hz\n"
        "0,100,0.25,0.25,440\n"
        "0.0232199546,200.5,0.25,0.25,\n");

  const std::vector<FeatureTimeSeries> bad = {series("a", {1.0}), series("b", {1.0, 2.0})};
  std::ostringstream sink;
  CHECK_THROWS_AS(write_feature_csv(sink, bad), Error);
}
