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

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "soundplot/analysis.hpp"
#include "soundplot/audio_io.hpp"
#include "soundplot/cli.hpp"
#include "soundplot/embedding.hpp"
#include "soundplot/error.hpp"
#include "soundplot/metrics.hpp"
#include "soundplot/pitch.hpp"
#include "soundplot/session.hpp"
#include "soundplot/spectral.hpp"
#include "soundplot/synthesis.hpp"

namespace py = pybind11;
namespace sp = soundplot;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

sp::AudioBuffer to_buffer(const Array& samples, int sample_rate) {
  if (samples.ndim() != 1) throw py::value_error("expected a 1-D sample array");
  sp::AudioBuffer b;
  b.samples.assign(samples.data(), samples.data() + samples.size());
  b.sample_rate = sample_rate;
  return b;
}

Array to_array(const std::vector<double>& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Array to_array(const sp::Matrix<double>& m) {
  Array out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) view(r, c) = m(r, c);
  }
  return out;
}

sp::Matrix<double> to_matrix(const Array& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array");
  auto view = a.unchecked<2>();
  sp::Matrix<double> m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = view(r, c);
  }
  return m;
}

sp::StftConfig stft_config(std::size_t win_size, std::size_t hop) {
  sp::StftConfig c;
  c.win_size = win_size;
  c.hop = hop;
  c.validate();
  return c;
}

py::dict metrics_dict(const sp::QualityMetrics& m) {
  py::dict d;
  d["snr_db"] = m.snr_db;
  d["waveform_corr"] = m.waveform_corr;
  d["spectral_corr"] = m.spectral_corr;
  d["mel_corr"] = m.mel_corr;
  d["aligned_length"] = m.aligned_length;
  return d;
}

py::object parse_json(const std::string& text) {
  return py::module_::import("json").attr("loads")(text);
}

}  // namespace

PYBIND11_MODULE(_soundplot, m) {
  m.doc() = "Birdsong analysis, resynthesis and visualization";
  m.attr("SAMPLE_RATE") = sp::kCanonicalSampleRate;

  py::register_exception<sp::Error>(m, "SoundplotError", PyExc_RuntimeError);

  m.def(
      "load_audio",
      [](const std::filesystem::path& path, bool trim, bool remove_silence) {
        sp::PreprocessConfig c;
        c.trim = trim;
        c.remove_silence = remove_silence;
        const auto b = sp::load_and_preprocess(path, c);
        return py::make_tuple(to_array(b.samples), b.sample_rate);
      },
      py::arg("path"), py::arg("trim") = true, py::arg("remove_silence") = false,
      "Load a WAV file as mono 22050 Hz peak-normalized samples.");

  m.def(
      "write_wav",
      [](const std::filesystem::path& path, const Array& samples, int sample_rate) {
        sp::write_wav(path, to_buffer(samples, sample_rate));
      },
      py::arg("path"), py::arg("samples"), py::arg("sample_rate") = sp::kCanonicalSampleRate);

  m.def(
      "stft_magnitude",
      [](const Array& samples, int sample_rate, std::size_t win_size, std::size_t hop) {
        return to_array(
            sp::magnitude(sp::stft(to_buffer(samples, sample_rate), stft_config(win_size, hop)))
                .values);
      },
      py::arg("samples"), py::arg("sample_rate") = sp::kCanonicalSampleRate,
      py::arg("win_size") = 2048, py::arg("hop") = 512, "Magnitude STFT, bins x frames.");

  m.def(
      "mel_spectrogram",
      [](const Array& samples, int sample_rate, std::size_t bands) {
        const auto mag = sp::magnitude(sp::stft(to_buffer(samples, sample_rate)));
        auto fb = std::make_shared<const sp::MelFilterbank>(
            sp::build_mel_filterbank(bands, mag.bins(), sample_rate, 0.0));
        return to_array(sp::mel_spectrogram(mag, fb).values);
      },
      py::arg("samples"), py::arg("sample_rate") = sp::kCanonicalSampleRate,
      py::arg("bands") = 128, "Mel power spectrogram, bands x frames.");

  m.def(
      "mfcc",
      [](const Array& samples, int sample_rate, std::size_t count) {
        sp::FeatureConfig c;
        c.mfcc_count = count;
        return to_array(sp::analyze_stream(to_buffer(samples, sample_rate), c).mfcc.values);
      },
      py::arg("samples"), py::arg("sample_rate") = sp::kCanonicalSampleRate,
      py::arg("count") = 13, "MFCCs, coefficients x frames.");

  m.def(
      "features",
      [](const Array& samples, int sample_rate) {
        const auto a = sp::analyze_stream(to_buffer(samples, sample_rate));
        py::dict d;
        d["time_s"] = to_array(a.centroid.frame_times);
        d["centroid"] = to_array(a.centroid.scalar());
        d["bandwidth"] = to_array(a.bandwidth.scalar());
        d["rolloff"] = to_array(a.rolloff.scalar());
        d["zcr"] = to_array(a.zcr.scalar());
        d["rms"] = to_array(a.rms.scalar());
        d["contrast"] = to_array(a.contrast.values);
        d["mfcc"] = to_array(a.mfcc.values);
        return d;
      },
      py::arg("samples"), py::arg("sample_rate") = sp::kCanonicalSampleRate,
      "Per-frame spectral features keyed by name.");

  m.def(
      "track_pitch",
      [](const Array& samples, int sample_rate, double f_min, double f_max) {
        sp::PitchConfig c;
        c.f_min = f_min;
        c.f_max = f_max;
        const auto t = sp::track_pitch(to_buffer(samples, sample_rate), c);
        std::vector<double> f0(t.frames(), std::numeric_limits<double>::quiet_NaN());
        for (std::size_t i = 0; i < t.frames(); ++i) {
          if (t.f0[i]) f0[i] = *t.f0[i];
        }
        return py::make_tuple(to_array(t.frame_times), to_array(f0), to_array(t.voiced_prob));
      },
      py::arg("samples"), py::arg("sample_rate") = sp::kCanonicalSampleRate,
      py::arg("f_min") = 65.0, py::arg("f_max") = 2093.0,
      "Probabilistic YIN: (times, f0 with NaN when unvoiced, voiced probability).");

  m.def(
      "griffin_lim",
      [](const Array& magnitude, std::size_t iterations, std::optional<std::size_t> length) {
        sp::MagnitudeSpectrogram target;
        target.values = to_matrix(magnitude);
        sp::SynthesisConfig c;
        c.gl_iterations = iterations;
        const auto r = sp::griffin_lim(target, c, length);
        return py::make_tuple(to_array(r.audio.samples), to_array(r.spectral_convergence));
      },
      py::arg("magnitude"), py::arg("iterations") = 32, py::arg("length") = py::none(),
      "Phase retrieval from a bins x frames magnitude: (audio, convergence).");

  m.def(
      "synthesize",
      [](const Array& samples, int sample_rate, std::size_t iterations) {
        sp::SynthesisConfig c;
        c.gl_iterations = iterations;
        return to_array(sp::synthesize(to_buffer(samples, sample_rate), c).samples);
      },
      py::arg("samples"), py::arg("sample_rate") = sp::kCanonicalSampleRate,
      py::arg("iterations") = 32, "Mel round-trip resynthesis.");

  m.def(
      "compute_metrics",
      [](const Array& reference, const Array& estimate, int sample_rate) {
        return metrics_dict(
            sp::compute_all(to_buffer(reference, sample_rate), to_buffer(estimate, sample_rate)));
      },
      py::arg("reference"), py::arg("estimate"),
      py::arg("sample_rate") = sp::kCanonicalSampleRate);

  m.def(
      "fit_pca",
      [](const Array& frames, std::size_t components) {
        const auto model = sp::fit_pca(to_matrix(frames), components);
        py::dict d;
        d["mean"] = to_array(model.mean);
        d["components"] = to_array(model.components);
        d["explained_variance"] = to_array(model.explained_variance);
        d["explained_variance_ratio"] = to_array(model.explained_variance_ratio);
        d["degenerate"] = model.degenerate;
        return d;
      },
      py::arg("frames"), py::arg("components") = 2, "PCA of a dims x frames matrix.");

  m.def(
      "joint_embedding",
      [](const Array& original, const Array& synthesized, std::size_t components) {
        const auto [model, e] =
            sp::joint_embedding(to_matrix(original), to_matrix(synthesized), components);
        return py::make_tuple(to_array(e.original_points), to_array(e.synthesized_points));
      },
      py::arg("original"), py::arg("synthesized"), py::arg("components") = 2);

  m.def(
      "analyze",
      [](const std::filesystem::path& input, const std::filesystem::path& out_dir,
         std::size_t gl_iterations, std::optional<std::uint64_t> seed) {
        sp::AnalysisConfig config;
        config.synthesis.gl_iterations = gl_iterations;
        const auto result = sp::run_pipeline(input, config);
        sp::SessionOptions opts;
        opts.out_dir = out_dir;
        opts.seed = seed;
        const auto rec = sp::create_session(input, result, config, opts);
        return py::make_tuple(rec.folder, parse_json(sp::metadata_to_json(rec).dump()));
      },
      py::arg("input"), py::arg("out_dir") = "data/sessions", py::arg("gl_iterations") = 32,
      py::arg("seed") = py::none(), "Full pipeline; returns (session folder, metadata).");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = sp::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line tool: (exit code, stdout, stderr).");
}
