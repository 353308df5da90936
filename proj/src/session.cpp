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

#include "soundplot/session.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "soundplot/error.hpp"
#include "soundplot/render.hpp"

namespace soundplot {
namespace fs = std::filesystem;

namespace {

Trajectory trajectory_of(const StreamAnalysis& a, const AnalysisConfig& config,
                         std::string audio_file) {
  Trajectory t = build_trajectory(a.centroid, a.bandwidth, a.pitch, a.rms,
                                  config.features.pitch.f_min,
                                  a.audio.sample_rate,
                                  config.features.stft.hop);
  t.audio = std::move(audio_file);
  return t;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::kIoError, "cannot write " + path.string());
}

nlohmann::ordered_json stft_json(const StftConfig& c) {
  nlohmann::ordered_json j;
  j["win_size"] = c.win_size;
  j["hop"] = c.hop;
  j["window"] = "hann";
  j["centered"] = c.centered;
  return j;
}

}  // namespace

PipelineResult run_pipeline(const AudioBuffer& preprocessed,
                            const AnalysisConfig& config) {
  config.features.stft.validate();
  SynthesisConfig synth = config.synthesis;
  synth.stft = config.features.stft;

  PipelineResult out;
  out.input_name = preprocessed.source_name;
  out.original = analyze_stream(preprocessed, config.features);
  AudioBuffer synthesized = synthesize(preprocessed, synth);
  synthesized.source_name = preprocessed.source_name;
  out.synthesized = analyze_stream(synthesized, config.features);

  MetricsConfig metrics;
  metrics.stft = config.features.stft;
  metrics.mel_bands = config.features.mel_bands;
  out.metrics = compute_all(out.original.audio, out.synthesized.audio, metrics);

  auto [model, embedding] =
      joint_embedding(out.original.mfcc.values, out.synthesized.mfcc.values,
                      config.pca_components);
  out.pca = std::move(model);
  out.embedding = std::move(embedding);

  out.original_trajectory = trajectory_of(out.original, config, "original.wav");
  out.synthesized_trajectory =
      trajectory_of(out.synthesized, config, "synthesized.wav");
  return out;
}

PipelineResult run_pipeline(const fs::path& input,
                            const AnalysisConfig& config) {
  return run_pipeline(load_and_preprocess(input, config.preprocess), config);
}

std::string sanitize_name(std::string_view stem) {
  std::string out;
  out.reserve(stem.size());
  for (unsigned char c : stem) {
    out.push_back(std::isalnum(c) || c == '_' || c == '-' ? static_cast<char>(c)
                                                          : '_');
  }
  if (out.empty()) out = "audio";
  return out;
}

std::string make_session_id(std::mt19937_64& rng) {
  const auto bytes = static_cast<std::uint32_t>(rng() >> 32);
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", bytes);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::ordered_json config_to_json(const AnalysisConfig& config) {
  const auto& pre = config.preprocess;
  const auto& feat = config.features;
  const auto& pitch = feat.pitch;
  const auto& synth = config.synthesis;

  nlohmann::ordered_json j;
  j["sample_rate"] = kCanonicalSampleRate;
  j["preprocess"] = {{"max_duration_s", pre.max_duration_s},
                     {"trim", pre.trim},
                     {"remove_silence", pre.remove_silence},
                     {"silence_floor_db", pre.silence_floor_db},
                     {"normalization", "peak"}};
  j["stft"] = stft_json(feat.stft);
  j["features"] = {{"mel_bands", feat.mel_bands},
                   {"mfcc_count", feat.mfcc_count},
                   {"power_floor", kPowerFloor},
                   {"dynamic_range_db", kDynamicRangeDb}};
  j["pitch"] = {{"f_min", pitch.f_min},
                {"f_max", pitch.f_max},
                {"threshold_count", pitch.threshold_count},
                {"beta_a", pitch.beta_a},
                {"beta_b", pitch.beta_b},
                {"bins_per_semitone", pitch.bins_per_semitone},
                {"switch_prob", pitch.switch_prob},
                {"max_semitones_per_frame", pitch.max_semitones_per_frame},
                {"no_trough_prob", pitch.no_trough_prob}};
  j["synthesis"] = {{"gl_iterations", synth.gl_iterations},
                    {"pinv_rcond", synth.pinv_rcond},
                    {"phase_epsilon", synth.phase_epsilon},
                    {"mel_bands", synth.mel_bands}};
  j["pca_components"] = config.pca_components;
  return j;
}

nlohmann::ordered_json metadata_to_json(const SessionRecord& record) {
  nlohmann::ordered_json j;
  j["session_id"] = record.session_id;
  j["audio_name"] = record.audio_name;
  j["created_at"] = record.created_at;
  j["parameters"] = record.parameters;
  j["metrics"] = {{"snr_db", record.metrics.snr_db},
                  {"waveform_corr", record.metrics.waveform_corr},
                  {"spectral_corr", record.metrics.spectral_corr},
                  {"mel_corr", record.metrics.mel_corr}};
  nlohmann::ordered_json files = nlohmann::ordered_json::object();
  for (const auto& [key, name] : record.files) files[key] = name;
  j["files"] = std::move(files);
  return j;
}

SessionRecord metadata_from_json(const nlohmann::ordered_json& doc) {
  try {
    SessionRecord r;
    r.session_id = doc.at("session_id").get<std::string>();
    r.audio_name = doc.at("audio_name").get<std::string>();
    r.created_at = doc.at("created_at").get<std::string>();
    r.parameters = doc.at("parameters");
    const auto& m = doc.at("metrics");
    r.metrics.snr_db = m.at("snr_db").get<double>();
    r.metrics.waveform_corr = m.at("waveform_corr").get<double>();
    r.metrics.spectral_corr = m.at("spectral_corr").get<double>();
    r.metrics.mel_corr = m.at("mel_corr").get<double>();
    for (const auto& [key, name] : session_files()) {
      if (doc.at("files").contains(key)) {
        r.files.emplace_back(key, doc.at("files").at(key).get<std::string>());
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kIoError,
                std::string("malformed metadata document: ") + e.what());
  }
}

SessionRecord create_session(const fs::path& input,
                             const PipelineResult& result,
                             const AnalysisConfig& config,
                             const SessionOptions& options) {
  std::mt19937_64 rng(options.seed ? *options.seed
                                   : (static_cast<std::uint64_t>(
                                          std::random_device{}()) << 32) ^
                                         std::random_device{}());
  SessionRecord record;
  record.audio_name = sanitize_name(input.stem().string());

  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) {
    throw Error(ErrorKind::kIoError,
                "cannot create " + options.out_dir.string() + ": " + ec.message());
  }
  bool created = false;
  for (std::size_t attempt = 0; attempt <= kSessionIdRetries; ++attempt) {
    record.session_id = make_session_id(rng);
    record.folder =
        options.out_dir / (record.audio_name + "_" + record.session_id);
    created = fs::create_directory(record.folder, ec);
    if (ec) {
      throw Error(ErrorKind::kIoError,
                  "cannot create " + record.folder.string() + ": " + ec.message());
    }
    if (created) break;
  }
  if (!created) {
    throw Error(ErrorKind::kCollisionError,
                "session folders for '" + record.audio_name +
                    "' already exist for every generated id");
  }

  record.created_at = utc_timestamp();
  record.parameters = config_to_json(config);
  record.parameters["input"] = input.filename().string();
  record.parameters["seed"] = options.seed ? nlohmann::ordered_json(*options.seed)
                                           : nlohmann::ordered_json(nullptr);
  record.metrics = result.metrics;
  record.files = session_files();

  const fs::path& dir = record.folder;
  write_wav(dir / "original.wav", result.original.audio);
  write_wav(dir / "synthesized.wav", result.synthesized.audio);

  ComparisonInputs figure;
  figure.original = &result.original.audio;
  figure.synthesized = &result.synthesized.audio;
  figure.original_spectrum = &result.original.spectrum;
  figure.synthesized_spectrum = &result.synthesized.spectrum;
  figure.original_mel = &result.original.mel;
  figure.synthesized_mel = &result.synthesized.mel;
  figure.metrics = result.metrics;
  write_png(dir / "comparison.png", render_comparison(figure));
  write_png(dir / "analysis.png", render_embedding(result.embedding));

  write_text(dir / "trajectory_original.json",
             to_json(result.original_trajectory).dump(1) + "\n");
  write_text(dir / "trajectory_synthesized.json",
             to_json(result.synthesized_trajectory).dump(1) + "\n");
  write_text(dir / "metadata.json", metadata_to_json(record).dump(2) + "\n");
  return record;
}

}  // namespace soundplot
