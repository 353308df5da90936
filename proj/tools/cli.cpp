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

#include "soundplot/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "soundplot/csv.hpp"
#include "soundplot/error.hpp"
#include "soundplot/session.hpp"

namespace soundplot {
namespace {

struct Options {
  std::string input;
  std::string out_dir = "data/sessions";
  std::string out_file;
  bool no_trim = false;
  bool remove_silence = false;
  std::size_t gl_iters = 32;
  double fmin = 65.0;
  double fmax = 2093.0;
  std::optional<std::uint64_t> seed;
  bool synthesized = false;
};

void add_input(CLI::App* cmd, Options& o) {
  cmd->add_option("input", o.input, "Input WAV file")->required();
  cmd->add_flag("--no-trim", o.no_trim, "Keep recordings longer than 300 s");
  cmd->add_flag("--remove-silence", o.remove_silence,
                "Drop leading and trailing silence");
  cmd->add_option("--fmin", o.fmin, "Lowest pitch searched (Hz)")
      ->capture_default_str();
  cmd->add_option("--fmax", o.fmax, "Highest pitch searched (Hz)")
      ->capture_default_str();
}

AnalysisConfig to_config(const Options& o) {
  AnalysisConfig c;
  c.preprocess.trim = !o.no_trim;
  c.preprocess.remove_silence = o.remove_silence;
  c.features.pitch.f_min = o.fmin;
  c.features.pitch.f_max = o.fmax;
  c.synthesis.gl_iterations = o.gl_iters;
  return c;
}

AudioBuffer load_input(const Options& o, const AnalysisConfig& c) {
  if (!std::filesystem::exists(o.input)) {
    throw Error(ErrorKind::kFileNotFound, "no such file: " + o.input);
  }
  return load_and_preprocess(o.input, c.preprocess);
}

std::ostream& open_output(const std::string& path, std::ofstream& file,
                          std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  file.open(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::kIoError, "cannot write " + path);
  return file;
}

void print_metrics(std::ostream& out, const QualityMetrics& m) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "SNR (dB)               %8.2f\n"
                "Waveform correlation   %8.3f\n"
                "Spectral correlation   %8.3f\n"
                "Mel correlation        %8.3f\n",
                m.snr_db, m.waveform_corr, m.spectral_corr, m.mel_corr);
  out << buf;
}

int analyze(const Options& o, std::ostream& out) {
  const AnalysisConfig config = to_config(o);
  const AudioBuffer audio = load_input(o, config);
  const PipelineResult result = run_pipeline(audio, config);
  SessionOptions session;
  session.out_dir = o.out_dir;
  session.seed = o.seed;
  const SessionRecord record = create_session(o.input, result, config, session);
  out << "Session " << record.folder.string() << '\n';
  print_metrics(out, result.metrics);
  return 0;
}

int features(const Options& o, std::ostream& out) {
  const AnalysisConfig config = to_config(o);
  AudioBuffer audio = load_input(o, config);
  if (o.synthesized) {
    SynthesisConfig synth = config.synthesis;
    synth.stft = config.features.stft;
    audio = synthesize(audio, synth);
  }
  const StreamAnalysis analysis = analyze_stream(audio, config.features);
  std::ofstream file;
  write_feature_csv(open_output(o.out_file, file, out), analysis);
  return 0;
}

int embedding(const Options& o, std::ostream& out) {
  const AnalysisConfig config = to_config(o);
  const PipelineResult result = run_pipeline(load_input(o, config), config);
  std::ofstream file;
  write_embedding_csv(open_output(o.out_file, file, out), result.embedding);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Birdsong analysis, resynthesis and visualization", "soundplot"};
  app.require_subcommand(1);
  Options o;

  auto* analyze_cmd =
      app.add_subcommand("analyze", "Run the full pipeline and write a session");
  add_input(analyze_cmd, o);
  analyze_cmd->add_option("--out", o.out_dir, "Session root directory")
      ->capture_default_str();
  analyze_cmd->add_option("--gl-iters", o.gl_iters, "Griffin-Lim iterations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--seed", o.seed, "Seed for the session id");

  auto* features_cmd =
      app.add_subcommand("features", "Export per-frame features as CSV");
  add_input(features_cmd, o);
  features_cmd->add_option("--out", o.out_file, "CSV path (default stdout)");
  features_cmd->add_flag("--synthesized", o.synthesized,
                         "Analyze the resynthesized signal instead");
  features_cmd->add_option("--gl-iters", o.gl_iters, "Griffin-Lim iterations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  auto* embedding_cmd =
      app.add_subcommand("embedding", "Export the joint MFCC PCA as CSV");
  add_input(embedding_cmd, o);
  embedding_cmd->add_option("--out", o.out_file, "CSV path (default stdout)");
  embedding_cmd->add_option("--gl-iters", o.gl_iters, "Griffin-Lim iterations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*analyze_cmd) return analyze(o, out);
    if (*features_cmd) return features(o, out);
    if (*embedding_cmd) return embedding(o, out);
  } catch (const Error& e) {
    err << "soundplot: " << e.what() << '\n';
    return e.kind() == ErrorKind::kFileNotFound ? 2 : 1;
  } catch (const std::exception& e) {
    err << "soundplot: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace soundplot
