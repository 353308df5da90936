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

#include <ostream>
#include <span>

#include "soundplot/analysis.hpp"
#include "soundplot/pitch.hpp"
#include "soundplot/spectral.hpp"

namespace soundplot {

/// Header `time_s,<columns>`, one row per frame, 9 significant digits.
/// Vector features expand to `<name>_<index>` columns. All series must share
/// the frame count of the first.
void write_feature_csv(std::ostream& out,
                       std::span<const FeatureTimeSeries> series);

/// Same layout with a trailing `f0_hz` column; unvoiced frames are left
/// empty.
void write_feature_csv(std::ostream& out,
                       std::span<const FeatureTimeSeries> series,
                       const PitchTrack& pitch);

void write_feature_csv(std::ostream& out, const StreamAnalysis& analysis);

}  // namespace soundplot
