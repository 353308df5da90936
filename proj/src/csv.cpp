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

#include "soundplot/csv.hpp"

#include <cstdio>
#include <vector>

#include "soundplot/error.hpp"

namespace soundplot {
namespace {

void put(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  out << buf;
}

void write_table(std::ostream& out, std::span<const FeatureTimeSeries> series,
                 const PitchTrack* pitch) {
  if (series.empty()) {
    throw Error(ErrorKind::kShapeMismatch, "no feature series to export");
  }
  const std::size_t frames = series.front().frames();
  for (const auto& s : series) {
    if (s.frames() != frames) {
      throw Error(ErrorKind::kShapeMismatch,
                  "feature '" + s.name + "' has a different frame count");
    }
  }
  if (pitch && pitch->frames() != frames) {
    throw Error(ErrorKind::kShapeMismatch,
                "pitch track has a different frame count");
  }

  out << "time_s";
  for (const auto& s : series) {
    if (s.dims() == 1) {
      out << ',' << s.name;
    } else {
      for (std::size_t d = 0; d < s.dims(); ++d) out << ',' << s.name << '_' << d;
    }
  }
  if (pitch) out << ",f0_hz";
  out << '\n';

  const auto& times = series.front().frame_times;
  for (std::size_t m = 0; m < frames; ++m) {
    put(out, m < times.size() ? times[m] : 0.0);
    for (const auto& s : series) {
      for (std::size_t d = 0; d < s.dims(); ++d) {
        out << ',';
        put(out, s.values(d, m));
      }
    }
    if (pitch) {
      out << ',';
      if (pitch->f0[m]) put(out, *pitch->f0[m]);
    }
    out << '\n';
  }
}

}  // namespace

void write_feature_csv(std::ostream& out,
                       std::span<const FeatureTimeSeries> series) {
  write_table(out, series, nullptr);
}

void write_feature_csv(std::ostream& out,
                       std::span<const FeatureTimeSeries> series,
                       const PitchTrack& pitch) {
  write_table(out, series, &pitch);
}

void write_feature_csv(std::ostream& out, const StreamAnalysis& analysis) {
  const std::vector<FeatureTimeSeries> series = {
      analysis.centroid, analysis.bandwidth, analysis.rolloff,
      analysis.contrast, analysis.zcr,       analysis.rms,
      analysis.mfcc};
  write_table(out, series, &analysis.pitch);
}

}  // namespace soundplot
