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

#include "soundplot/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Dense>

#include "soundplot/error.hpp"

namespace soundplot {

PcaModel fit_pca(const Matrix<double>& frames, std::size_t n_components) {
  const std::size_t dims = frames.rows();
  const std::size_t count = frames.cols();
  if (count < 2 || dims < n_components || n_components == 0) {
    throw Error(ErrorKind::kInvalidConfig,
                "PCA needs at least two frames and dims >= components");
  }
  PcaModel model;
  model.mean.assign(dims, 0.0);
  for (std::size_t m = 0; m < count; ++m) {
    for (std::size_t d = 0; d < dims; ++d) model.mean[d] += frames(d, m);
  }
  for (double& v : model.mean) v /= static_cast<double>(count);

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dims, dims);
  Eigen::VectorXd centered(dims);
  for (std::size_t m = 0; m < count; ++m) {
    for (std::size_t d = 0; d < dims; ++d) {
      centered(d) = frames(d, m) - model.mean[d];
    }
    cov.noalias() += centered * centered.transpose();
  }
  cov /= static_cast<double>(count - 1);
  const double total = cov.trace();

  model.components = Matrix<double>(n_components, dims);
  model.explained_variance.assign(n_components, 0.0);
  model.explained_variance_ratio.assign(n_components, 0.0);
  if (!(total > 0.0)) {
    model.degenerate = true;
    for (std::size_t c = 0; c < n_components; ++c) model.components(c, c) = 1.0;
    return model;
  }

  // Eigenvalues arrive in ascending order.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  for (std::size_t c = 0; c < n_components; ++c) {
    const Eigen::Index col = static_cast<Eigen::Index>(dims - 1 - c);
    Eigen::VectorXd v = vectors.col(col);
    Eigen::Index pivot = 0;
    for (Eigen::Index d = 1; d < v.size(); ++d) {
      if (std::abs(v(d)) > std::abs(v(pivot))) pivot = d;
    }
    if (v(pivot) < 0.0) v = -v;
    for (std::size_t d = 0; d < dims; ++d) {
      model.components(c, d) = v(static_cast<Eigen::Index>(d));
    }
    model.explained_variance[c] = std::max(0.0, values(col));
    model.explained_variance_ratio[c] = model.explained_variance[c] / total;
  }
  return model;
}

Matrix<double> project(const PcaModel& model, const Matrix<double>& frames) {
  if (frames.rows() != model.dims()) {
    throw Error(ErrorKind::kShapeMismatch,
                "frame dimension does not match the PCA model");
  }
  Matrix<double> out(frames.cols(), model.n_components());
  for (std::size_t m = 0; m < frames.cols(); ++m) {
    for (std::size_t c = 0; c < model.n_components(); ++c) {
      double acc = 0.0;
      for (std::size_t d = 0; d < model.dims(); ++d) {
        acc += (frames(d, m) - model.mean[d]) * model.components(c, d);
      }
      out(m, c) = acc;
    }
  }
  return out;
}

std::pair<PcaModel, PairedEmbedding> joint_embedding(
    const Matrix<double>& original, const Matrix<double>& synthesized,
    std::size_t n_components) {
  if (original.rows() != synthesized.rows()) {
    throw Error(ErrorKind::kShapeMismatch,
                "original and synthesized features differ in dimension");
  }
  Matrix<double> joint(original.rows(), original.cols() + synthesized.cols());
  for (std::size_t m = 0; m < original.cols(); ++m) {
    std::copy_n(original.column(m).begin(), original.rows(),
                joint.column(m).begin());
  }
  for (std::size_t m = 0; m < synthesized.cols(); ++m) {
    std::copy_n(synthesized.column(m).begin(), synthesized.rows(),
                joint.column(original.cols() + m).begin());
  }
  PcaModel model = fit_pca(joint, n_components);
  PairedEmbedding embedding;
  embedding.original_points = project(model, original);
  embedding.synthesized_points = project(model, synthesized);
  const std::size_t paired = std::min(original.cols(), synthesized.cols());
  embedding.pairs.reserve(paired);
  for (std::size_t i = 0; i < paired; ++i) embedding.pairs.emplace_back(i, i);
  return {std::move(model), std::move(embedding)};
}

void write_embedding_csv(std::ostream& out, const PairedEmbedding& embedding) {
  out << "frame,source,pc1,pc2\n";
  char buf[64];
  auto emit = [&](const Matrix<double>& points, const char* source) {
    for (std::size_t i = 0; i < points.rows(); ++i) {
      out << i << ',' << source;
      for (std::size_t c = 0; c < std::min<std::size_t>(2, points.cols()); ++c) {
        std::snprintf(buf, sizeof buf, ",%.9g", points(i, c));
        out << buf;
      }
      out << '\n';
    }
  };
  emit(embedding.original_points, "original");
  emit(embedding.synthesized_points, "synthesized");
}

}  // namespace soundplot
