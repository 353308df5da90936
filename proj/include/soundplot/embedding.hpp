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

#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "soundplot/matrix.hpp"

namespace soundplot {

struct PcaModel {
  std::vector<double> mean;
  Matrix<double> components;  // n_components x dims, orthonormal rows
  std::vector<double> explained_variance;
  std::vector<double> explained_variance_ratio;
  /// True when the covariance vanished and canonical axes were substituted.
  bool degenerate = false;

  std::size_t dims() const { return mean.size(); }
  std::size_t n_components() const { return components.rows(); }
};

struct PairedEmbedding {
  Matrix<double> original_points;     // frames x n_components
  Matrix<double> synthesized_points;  // frames' x n_components
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// PCA of a dims x frames matrix: mean-centering, sample covariance with
/// divisor frames - 1, top eigenvectors. Each component's largest-magnitude
/// entry is made positive.
PcaModel fit_pca(const Matrix<double>& frames, std::size_t n_components = 2);

/// (frames - mean)^T projected onto the components; one row per frame.
Matrix<double> project(const PcaModel& model, const Matrix<double>& frames);

/// Fits one model on both frame sets side by side and pairs frame i of the
/// original with frame i of the synthesized set.
std::pair<PcaModel, PairedEmbedding> joint_embedding(
    const Matrix<double>& original, const Matrix<double>& synthesized,
    std::size_t n_components = 2);

/// CSV with header `frame,source,pc1,pc2`.
void write_embedding_csv(std::ostream& out, const PairedEmbedding& embedding);

}  // namespace soundplot
