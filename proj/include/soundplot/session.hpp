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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "soundplot/analysis.hpp"
#include "soundplot/audio_io.hpp"
#include "soundplot/embedding.hpp"
#include "soundplot/metrics.hpp"
#include "soundplot/synthesis.hpp"
#include "soundplot/trajectory.hpp"

namespace soundplot {

/// Effective configuration of one analysis run. `features.stft` is the
/// framing used everywhere (features, pitch, synthesis, metrics).
struct AnalysisConfig {
  PreprocessConfig preprocess;
  FeatureConfig features;
  SynthesisConfig synthesis;
  std::size_t pca_components = 2;
};

/// Everything produced by one pass over an input file.
struct PipelineResult {
  std::string input_name;
  StreamAnalysis original;
  StreamAnalysis synthesized;
  QualityMetrics metrics;
  PcaModel pca;
  PairedEmbedding embedding;
  Trajectory original_trajectory;
  Trajectory synthesized_trajectory;
};

PipelineResult run_pipeline(const AudioBuffer& preprocessed,
                            const AnalysisConfig& config);
/// load_and_preprocess followed by the in-memory pipeline.
PipelineResult run_pipeline(const std::filesystem::path& input,
                            const AnalysisConfig& config);

inline constexpr std::size_t kSessionIdRetries = 5;

/// File names inside a session folder, keyed as in metadata.json "files".
inline const std::vector<std::pair<std::string, std::string>>&
session_files() {
  static const std::vector<std::pair<std::string, std::string>> files = {
      {"original_audio", "original.wav"},
      {"synthesized_audio", "synthesized.wav"},
      {"comparison_figure", "comparison.png"},
      {"analysis_figure", "analysis.png"},
      {"metadata", "metadata.json"},
      {"trajectory_original", "trajectory_original.json"},
      {"trajectory_synthesized", "trajectory_synthesized.json"},
  };
  return files;
}

struct SessionOptions {
  std::filesystem::path out_dir = "data/sessions";
  /// Seeds the session id generator; unseeded runs draw from
  /// std::random_device.
  std::optional<std::uint64_t> seed;
};

struct SessionRecord {
  std::string session_id;
  std::string audio_name;
  std::string created_at;
  nlohmann::ordered_json parameters;
  QualityMetrics metrics;
  std::vector<std::pair<std::string, std::string>> files;
  std::filesystem::path folder;
};

/// File stem with every character outside [A-Za-z0-9_-] replaced by '_'.
std::string sanitize_name(std::string_view stem);

/// 8 lowercase hex digits from 4 random bytes.
std::string make_session_id(std::mt19937_64& rng);

/// Current time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

nlohmann::ordered_json config_to_json(const AnalysisConfig& config);
nlohmann::ordered_json metadata_to_json(const SessionRecord& record);
SessionRecord metadata_from_json(const nlohmann::ordered_json& doc);

/// Creates `{out_dir}/{audio_name}_{session_id}/` and writes the seven
/// session files. Throws CollisionError when every id attempt names an
/// existing folder, IoError when a file cannot be written.
SessionRecord create_session(const std::filesystem::path& input,
                             const PipelineResult& result,
                             const AnalysisConfig& config,
                             const SessionOptions& options);

}  // namespace soundplot
