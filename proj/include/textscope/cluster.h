// Copyright 2026 The textscope Authors.
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

#ifndef TEXTSCOPE_CLUSTER_H_
#define TEXTSCOPE_CLUSTER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "textscope/vectorize.h"

namespace textscope {

inline constexpr std::size_t kDefaultComponents = 250;
inline constexpr double kDefaultDbscanEps = 0.45;
inline constexpr std::size_t kDefaultMinSamples = 3;

// Row-major N x d embedding.
struct ReducedMatrix {
  std::size_t rows = 0;
  std::size_t component_count = 0;
  std::vector<double> values;
  // Eigenvalues of the centered kernel for the kept components, descending.
  std::vector<double> eigenvalues;

  std::span<const double> Row(std::size_t r) const {
    return std::span<const double>(values).subspan(r * component_count,
                                                   component_count);
  }
};

// Linear-kernel PCA: K = X X^T, double-centered, eigendecomposed. Keeps at
// most max_components eigenpairs whose eigenvalue exceeds 1e-10 times the
// largest, scaled by sqrt(eigenvalue) so that row dot products reproduce the
// centered kernel. Throws if fewer than two vectors are given.
ReducedMatrix KernelPca(std::span<const FeatureVector> vectors,
                        std::size_t max_components = kDefaultComponents);

// 1 - cos(u, v). A zero vector is treated as orthogonal to everything
// (distance 1).
double CosineDistance(std::span<const double> u, std::span<const double> v);

inline constexpr int kNoise = -1;

struct ClusterAssignment {
  // Cluster id per row, or kNoise.
  std::vector<int> labels;
  std::size_t cluster_count = 0;
  std::size_t noise_count = 0;
};

// DBSCAN over pairwise cosine distances. A point is core when at least
// min_samples points (itself included) lie within distance <= eps. Clusters
// grow from cores in row order; a border point reachable from several
// clusters stays with the first one to reach it. Cluster ids are then
// renumbered 0..K-1 by descending size, ties by discovery order.
ClusterAssignment Dbscan(const ReducedMatrix& matrix,
                         double eps = kDefaultDbscanEps,
                         std::size_t min_samples = kDefaultMinSamples);

// Same algorithm on a precomputed symmetric distance matrix (row-major n*n).
ClusterAssignment DbscanOnDistances(std::span<const double> distances,
                                    std::size_t n, double eps,
                                    std::size_t min_samples);

// Row-major n*n cosine distance matrix; logs zero-norm rows.
std::vector<double> CosineDistanceMatrix(const ReducedMatrix& matrix);

}  // namespace textscope

#endif  // TEXTSCOPE_CLUSTER_H_
