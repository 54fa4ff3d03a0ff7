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

#ifndef TEXTSCOPE_CLASSIFY_H_
#define TEXTSCOPE_CLASSIFY_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "textscope/vectorize.h"

namespace textscope {

// eta_t = 1 / (lambda * (t + t0)) with t0 chosen so that eta_0 equals
// initial_rate. "inverse_scaling" is the only schedule.
struct LearningRateSchedule {
  std::string name = "inverse_scaling";
  double initial_rate = 1.0;

  double Rate(std::int64_t step, double lambda) const;
};

struct TrainConfig {
  double regularization_strength = 1e-4;
  int epochs = 50;
  std::uint64_t seed = 0;
  LearningRateSchedule schedule;

  // Throws on epochs < 1, lambda <= 0, an unknown schedule, or an initial
  // rate outside (0, 1/lambda].
  void Validate() const;
};

// One-vs-rest linear classifier: score_c(x) = w_c . x + b_c.
class LinearModel {
 public:
  LinearModel() = default;
  LinearModel(std::vector<std::string> classes,
              std::vector<std::vector<double>> weights,
              std::vector<double> biases, std::uint64_t vocab_fingerprint);

  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<std::vector<double>>& weights() const { return weights_; }
  const std::vector<double>& biases() const { return biases_; }
  std::uint64_t vocab_fingerprint() const { return vocab_fingerprint_; }
  std::size_t term_count() const {
    return weights_.empty() ? 0 : weights_.front().size();
  }

  std::optional<std::size_t> ClassIndex(const std::string& name) const;

  double Score(const FeatureVector& x, std::size_t class_index) const;
  // Throws on an unknown class.
  double Score(const FeatureVector& x, const std::string& class_name) const;

  // Argmax of Score; exact ties go to the earlier class.
  const std::string& Predict(const FeatureVector& x) const;

  // Throws unless the fingerprint matches.
  void CheckVocabulary(const Vocabulary& vocab) const;

  bool operator==(const LinearModel&) const = default;

 private:
  std::vector<std::string> classes_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> biases_;
  std::uint64_t vocab_fingerprint_ = 0;
};

// Fits one hinge-loss + L2 binary problem per class (class vs. rest) with
// seeded stochastic subgradient descent. Classes are the sorted distinct
// labels; at least two are required. Same inputs give bit-identical models.
LinearModel Train(std::span<const FeatureVector> vectors,
                  std::span<const std::string> labels, const Vocabulary& vocab,
                  const TrainConfig& config);

// Fraction of vectors whose prediction equals the label.
double Evaluate(const LinearModel& model,
                std::span<const FeatureVector> vectors,
                std::span<const std::string> labels);

std::string SerializeModel(const LinearModel& model);
LinearModel DeserializeModel(std::string_view json_text);
void SaveModel(const LinearModel& model, const std::filesystem::path& path);
LinearModel LoadModel(const std::filesystem::path& path);

}  // namespace textscope

#endif  // TEXTSCOPE_CLASSIFY_H_
