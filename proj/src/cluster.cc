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

#include "textscope/cluster.h"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "textscope/error.h"
#include "textscope/log.h"

namespace textscope {

namespace {

constexpr double kRelativeEigenCutoff = 1e-10;

double Norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

ReducedMatrix KernelPca(std::span<const FeatureVector> vectors,
                        std::size_t max_components) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  if (n < 2) throw Error("kernel PCA needs at least 2 documents");

  Eigen::MatrixXd kernel(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double k = vectors[i].Dot(vectors[j]);
      kernel(i, j) = k;
      kernel(j, i) = k;
    }
  }
  // Kc = K - 1K - K1 + 1K1 with 1 the matrix of 1/n.
  const Eigen::VectorXd row_means = kernel.rowwise().mean();
  const double grand_mean = row_means.mean();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      kernel(i, j) += grand_mean - row_means(i) - row_means(j);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(kernel);
  if (solver.info() != Eigen::Success) {
    throw Error("kernel PCA: eigendecomposition failed");
  }
  // Eigen returns ascending eigenvalues.
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vecs = solver.eigenvectors();
  const double largest = values(n - 1);

  ReducedMatrix out;
  out.rows = vectors.size();
  std::vector<Eigen::Index> kept;
  if (largest > 0.0) {
    for (Eigen::Index k = n - 1; k >= 0; --k) {
      if (kept.size() >= max_components) break;
      if (values(k) <= kRelativeEigenCutoff * largest) break;
      kept.push_back(k);
    }
  }
  out.component_count = kept.size();
  out.values.assign(out.rows * out.component_count, 0.0);
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const Eigen::Index k = kept[c];
    out.eigenvalues.push_back(values(k));
    // Fix the sign: largest-magnitude coordinate positive.
    Eigen::Index arg = 0;
    vecs.col(k).cwiseAbs().maxCoeff(&arg);
    const double sign = vecs(arg, k) < 0.0 ? -1.0 : 1.0;
    const double scale = sign * std::sqrt(values(k));
    for (Eigen::Index r = 0; r < n; ++r) {
      out.values[static_cast<std::size_t>(r) * out.component_count + c] =
          scale * vecs(r, k);
    }
  }
  log::Debug("kernel PCA: {} documents, {} components kept", out.rows,
             out.component_count);
  return out;
}

double CosineDistance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error("cosine distance: size mismatch");
  const double nu = Norm(u);
  const double nv = Norm(v);
  if (nu == 0.0 || nv == 0.0) return 1.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  const double cos = std::clamp(dot / (nu * nv), -1.0, 1.0);
  return 1.0 - cos;
}

std::vector<double> CosineDistanceMatrix(const ReducedMatrix& matrix) {
  const std::size_t n = matrix.rows;
  std::size_t zero_rows = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (Norm(matrix.Row(i)) == 0.0) ++zero_rows;
  }
  if (zero_rows > 0) {
    log::Warn(
        "{} of {} documents have a zero embedding; their cosine "
        "distance to everything is taken as 1",
        zero_rows, n);
  }
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = CosineDistance(matrix.Row(i), matrix.Row(j));
      d[i * n + j] = dist;
      d[j * n + i] = dist;
    }
    // Identical rows give 0; a zero row is still at distance 0 from itself.
    d[i * n + i] = 0.0;
  }
  return d;
}

ClusterAssignment DbscanOnDistances(std::span<const double> distances,
                                    std::size_t n, double eps,
                                    std::size_t min_samples) {
  if (!(eps > 0.0)) throw Error("dbscan: eps must be > 0");
  if (min_samples < 1) throw Error("dbscan: min_samples must be >= 1");
  if (distances.size() != n * n) {
    throw Error("dbscan: distance matrix has the wrong size");
  }

  std::vector<std::vector<std::size_t>> neighbors(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (distances[i * n + j] <= eps) neighbors[i].push_back(j);
    }
  }
  auto is_core = [&](std::size_t i) {
    return neighbors[i].size() >= min_samples;
  };

  constexpr int kUnassigned = -2;
  std::vector<int> raw(n, kUnassigned);
  int next_id = 0;
  std::deque<std::size_t> frontier;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (raw[seed] != kUnassigned || !is_core(seed)) continue;
    const int id = next_id++;
    raw[seed] = id;
    frontier.assign(1, seed);
    while (!frontier.empty()) {
      const std::size_t p = frontier.front();
      frontier.pop_front();
      if (!is_core(p)) continue;
      for (std::size_t q : neighbors[p]) {
        if (raw[q] != kUnassigned) continue;
        raw[q] = id;
        frontier.push_back(q);
      }
    }
  }

  // Renumber by descending size; stable sort keeps discovery order on ties.
  std::vector<std::size_t> sizes(static_cast<std::size_t>(next_id), 0);
  for (int id : raw) {
    if (id >= 0) ++sizes[static_cast<std::size_t>(id)];
  }
  std::vector<int> order(static_cast<std::size_t>(next_id));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return sizes[static_cast<std::size_t>(a)] >
           sizes[static_cast<std::size_t>(b)];
  });
  std::vector<int> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    rank[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
  }

  ClusterAssignment out;
  out.cluster_count = static_cast<std::size_t>(next_id);
  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i] >= 0) {
      out.labels[i] = rank[static_cast<std::size_t>(raw[i])];
    } else {
      out.labels[i] = kNoise;
      ++out.noise_count;
    }
  }
  return out;
}

ClusterAssignment Dbscan(const ReducedMatrix& matrix, double eps,
                         std::size_t min_samples) {
  const std::vector<double> d = CosineDistanceMatrix(matrix);
  return DbscanOnDistances(d, matrix.rows, eps, min_samples);
}

}  // namespace textscope
