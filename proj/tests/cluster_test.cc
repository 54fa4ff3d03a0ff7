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

#include <doctest.h>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "testing/oracles.h"
#include "testing/synthetic.h"
#include "textscope/error.h"
#include "textscope/random.h"

namespace textscope {
namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double ReconstructionError(const ReducedMatrix& m,
                           const std::vector<double>& kernel) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.rows; ++j) {
      const double e = Dot(m.Row(i), m.Row(j)) - kernel[i * m.rows + j];
      num += e * e;
      den += kernel[i * m.rows + j] * kernel[i * m.rows + j];
    }
  }
  return std::sqrt(num / den);
}

TEST_CASE("KernelPca: three orthogonal one-hot documents") {
  const std::vector<FeatureVector> xs = {
      {"a", {{0, 1.0}}}, {"b", {{1, 1.0}}}, {"c", {{2, 1.0}}}};
  const ReducedMatrix m = KernelPca(xs);
  CHECK(m.rows == 3);
  REQUIRE(m.component_count == 2);
  CHECK(m.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(m.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(ReconstructionError(m, testing::CenteredLinearKernel(xs, 3)) < 1e-12);
}

TEST_CASE("KernelPca: duplicates embed identically") {
  const std::vector<FeatureVector> xs = {{"a", {{0, 0.5}, {3, 0.2}}},
                                         {"b", {{1, 1.0}}},
                                         {"a2", {{0, 0.5}, {3, 0.2}}},
                                         {"c", {{2, 0.7}, {3, 0.1}}}};
  const ReducedMatrix m = KernelPca(xs);
  for (std::size_t k = 0; k < m.component_count; ++k) {
    CHECK(m.Row(0)[k] == doctest::Approx(m.Row(2)[k]).epsilon(1e-9));
  }
}

TEST_CASE("KernelPca: rank bounds") {
  Rng rng(61);
  const auto xs = testing::RandomSparseVectors(rng, 6, 40, 0.5);
  CHECK(KernelPca(xs, 250).component_count <= 5);
  CHECK(KernelPca(xs, 2).component_count == 2);
  const std::vector<FeatureVector> one = {{"a", {{0, 1.0}}}};
  CHECK_THROWS_AS(KernelPca(one), Error);
}

TEST_CASE("Property: embedding reproduces the centered kernel") {
  Rng rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.UniformIndex(29);
    const std::size_t terms = 1 + rng.UniformIndex(60);
    auto xs = testing::RandomSparseVectors(rng, n, terms, 0.2);
    xs[0].entries = {{0, 1.0}};  // keep the kernel nonzero
    const ReducedMatrix m = KernelPca(xs, 250);
    CHECK(ReconstructionError(m, testing::CenteredLinearKernel(xs, terms)) <=
          1e-6);
    for (std::size_t k = 1; k < m.eigenvalues.size(); ++k) {
      CHECK(m.eigenvalues[k - 1] >= m.eigenvalues[k]);
    }
  }
}

TEST_CASE("CosineDistance") {
  const std::vector<double> u = {1.0, 2.0};
  const std::vector<double> w = {-2.0, 1.0};
  const std::vector<double> neg = {-1.0, -2.0};
  const std::vector<double> zero = {0.0, 0.0};
  CHECK(CosineDistance(u, u) == doctest::Approx(0.0));
  CHECK(CosineDistance(u, w) == doctest::Approx(1.0));
  CHECK(CosineDistance(u, neg) == doctest::Approx(2.0));
  CHECK(CosineDistance(u, zero) == 1.0);
  CHECK(CosineDistance(zero, zero) == 1.0);
}

ReducedMatrix FromRows(const std::vector<std::vector<double>>& rows) {
  ReducedMatrix m;
  m.rows = rows.size();
  m.component_count = rows.front().size();
  for (const auto& r : rows)
    m.values.insert(m.values.end(), r.begin(), r.end());
  return m;
}

TEST_CASE("Dbscan examples") {
  SUBCASE("identical points form one cluster") {
    const auto a = Dbscan(FromRows({{1, 1}, {1, 1}, {1, 1}, {1, 1}}));
    CHECK(a.cluster_count == 1);
    CHECK(a.noise_count == 0);
    CHECK(a.labels == std::vector<int>{0, 0, 0, 0});
  }
  SUBCASE("two tight groups") {
    const auto a = Dbscan(FromRows({{1, 0.01},
                                    {0.02, 1},
                                    {1, 0},
                                    {0, 1},
                                    {1, -0.01},
                                    {-0.01, 1},
                                    {0.01, 1}}));
    CHECK(a.cluster_count == 2);
    CHECK(a.noise_count == 0);
    // Larger group first.
    CHECK(a.labels == std::vector<int>{1, 0, 1, 0, 1, 0, 0});
  }
  SUBCASE("mutually distant points are noise") {
    const auto a = Dbscan(FromRows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(a.cluster_count == 0);
    CHECK(a.noise_count == 3);
    CHECK(a.labels == std::vector<int>(3, kNoise));
  }
  SUBCASE("min_samples above N") {
    const auto a = Dbscan(FromRows({{1, 1}, {1, 1}}), 0.45, 3);
    CHECK(a.noise_count == 2);
  }
  SUBCASE("argument checks") {
    CHECK_THROWS_AS(Dbscan(FromRows({{1, 1}}), 0.0, 3), Error);
    CHECK_THROWS_AS(Dbscan(FromRows({{1, 1}}), 0.45, 0), Error);
  }
}

TEST_CASE("A core whose borders were claimed earlier can stand alone") {
  // p0 and q are cores sharing borders a, b, c; p0 reaches them first.
  //        p0   a    b    c    q
  const double far = 1.0, near = 0.1;
  const std::vector<double> d = {0,    near, near, near, far,   //
                                 near, 0,    far,  far,  near,  //
                                 near, far,  0,    far,  near,  //
                                 near, far,  far,  0,    near,  //
                                 far,  near, near, near, 0};
  const auto a = DbscanOnDistances(d, 5, 0.45, 4);
  CHECK(a.labels == std::vector<int>{0, 0, 0, 0, 1});
  CHECK(a.labels == testing::BruteForceDbscan(d, 5, 0.45, 4));
}

TEST_CASE("Property: Dbscan agrees with the brute-force reference") {
  Rng rng(63);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.UniformIndex(50);
    const ReducedMatrix m = testing::RandomDirectionalPoints(rng, n);
    const double eps = 0.01 + 0.6 * rng.UniformReal();
    const std::size_t min_samples = 1 + rng.UniformIndex(6);
    const ClusterAssignment got = Dbscan(m, eps, min_samples);
    const auto expected = testing::BruteForceDbscan(testing::CosineDistances(m),
                                                    n, eps, min_samples);
    CHECK(got.labels == expected);
  }
}

std::vector<bool> Cores(const std::vector<double>& d, std::size_t n, double eps,
                        std::size_t min_samples) {
  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) c += d[i * n + j] <= eps;
    core[i] = c >= min_samples;
  }
  return core;
}

TEST_CASE("Property: assignments are a partition anchored on cores") {
  Rng rng(64);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.UniformIndex(50);
    const ReducedMatrix m = testing::RandomDirectionalPoints(rng, n);
    const double eps = 0.01 + 0.6 * rng.UniformReal();
    const std::size_t min_samples = 1 + rng.UniformIndex(6);
    const auto a = Dbscan(m, eps, min_samples);
    REQUIRE(a.labels.size() == n);
    const auto d = testing::CosineDistances(m);
    const auto core = Cores(d, n, eps, min_samples);
    std::size_t noise = 0;
    std::vector<std::size_t> sizes(a.cluster_count, 0);
    std::vector<bool> has_core(a.cluster_count, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.labels[i] == kNoise) {
        ++noise;
        CHECK_FALSE(core[i]);
        continue;
      }
      REQUIRE(a.labels[i] >= 0);
      REQUIRE(static_cast<std::size_t>(a.labels[i]) < a.cluster_count);
      ++sizes[static_cast<std::size_t>(a.labels[i])];
      if (core[i]) has_core[static_cast<std::size_t>(a.labels[i])] = true;
    }
    CHECK(noise == a.noise_count);
    for (std::size_t c = 0; c < a.cluster_count; ++c) {
      CHECK(has_core[c]);
      if (c > 0) CHECK(sizes[c - 1] >= sizes[c]);
    }
  }
}

TEST_CASE("Property: shrinking eps never merges separate core sets") {
  Rng rng(65);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 5 + rng.UniformIndex(40);
    const ReducedMatrix m = testing::RandomDirectionalPoints(rng, n);
    const double eps_big = 0.05 + 0.5 * rng.UniformReal();
    const double eps_small = eps_big * (0.3 + 0.6 * rng.UniformReal());
    const std::size_t min_samples = 1 + rng.UniformIndex(5);
    const auto big = Dbscan(m, eps_big, min_samples);
    const auto small = Dbscan(m, eps_small, min_samples);
    const auto core =
        Cores(testing::CosineDistances(m), n, eps_small, min_samples);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!core[i] || !core[j]) continue;
        if (big.labels[i] != big.labels[j]) {
          CHECK(small.labels[i] != small.labels[j]);
        }
      }
    }
  }
}

TEST_CASE("CosineDistanceMatrix is symmetric with a zero diagonal") {
  Rng rng(66);
  const ReducedMatrix m = testing::RandomDirectionalPoints(rng, 12);
  const auto d = CosineDistanceMatrix(m);
  const auto expected = testing::CosineDistances(m);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(d[i * 12 + i] == doctest::Approx(0.0));
    for (std::size_t j = 0; j < 12; ++j) {
      CHECK(d[i * 12 + j] == d[j * 12 + i]);
      CHECK(d[i * 12 + j] == doctest::Approx(expected[i * 12 + j]));
    }
  }
}

}  // namespace
}  // namespace textscope
