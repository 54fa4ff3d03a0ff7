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

#include "textscope/classify.h"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <set>
#include <sstream>

#include "textscope/error.h"
#include "textscope/random.h"

namespace textscope {
namespace {

constexpr const char* kModelFormat = "textscope-linear-model";
constexpr int kModelVersion = 1;

// Below this the scaled representation w = scale * v is folded back into v.
constexpr double kMinWeightScale = 1e-9;

struct BinaryFit {
  std::vector<double> weights;
  double bias = 0.0;
};

// Hinge loss with L2 penalty on w (not on b). The weight vector is kept as
// scale * v so that the shrink step is O(1) and updates touch only the
// nonzero features of the sample.
BinaryFit FitBinary(std::span<const FeatureVector> vectors,
                    std::span<const double> targets, std::size_t term_count,
                    const TrainConfig& config) {
  const double lambda = config.regularization_strength;
  std::vector<double> v(term_count, 0.0);
  double scale = 1.0;
  double bias = 0.0;

  std::vector<std::size_t> order(vectors.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(config.seed);
  std::int64_t step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.Shuffle(std::span(order));
    for (std::size_t k : order) {
      const FeatureVector& x = vectors[k];
      const double y = targets[k];
      const double eta = config.schedule.Rate(step, lambda);
      double wx = 0.0;
      for (const auto& [i, value] : x.entries) wx += v[i] * value;
      const double margin = y * (scale * wx + bias);

      scale *= std::max(1.0 - eta * lambda, 0.0);
      if (scale < kMinWeightScale) {
        for (double& w : v) w *= scale;
        scale = 1.0;
      }
      if (margin < 1.0) {
        const double g = eta * y / scale;
        for (const auto& [i, value] : x.entries) v[i] += g * value;
        bias += eta * y;
      }
      ++step;
    }
  }
  for (double& w : v) w *= scale;
  return {std::move(v), bias};
}

}  // namespace

double LearningRateSchedule::Rate(std::int64_t step, double lambda) const {
  const double t0 = 1.0 / (lambda * initial_rate);
  return 1.0 / (lambda * (static_cast<double>(step) + t0));
}

void TrainConfig::Validate() const {
  if (epochs < 1) throw Error("epochs must be >= 1");
  if (!(regularization_strength > 0.0)) {
    throw Error("regularization strength must be > 0");
  }
  if (schedule.name != "inverse_scaling") {
    throw Error("unknown learning rate schedule '" + schedule.name + "'");
  }
  if (!(schedule.initial_rate > 0.0) ||
      schedule.initial_rate > 1.0 / regularization_strength) {
    throw Error("initial learning rate must be in (0, 1/lambda]");
  }
}

LinearModel::LinearModel(std::vector<std::string> classes,
                         std::vector<std::vector<double>> weights,
                         std::vector<double> biases,
                         std::uint64_t vocab_fingerprint)
    : classes_(std::move(classes)),
      weights_(std::move(weights)),
      biases_(std::move(biases)),
      vocab_fingerprint_(vocab_fingerprint) {
  if (weights_.size() != classes_.size() || biases_.size() != classes_.size()) {
    throw Error("linear model: classes, weights and biases differ in count");
  }
  for (const auto& w : weights_) {
    if (w.size() != weights_.front().size()) {
      throw Error("linear model: weight vectors differ in length");
    }
  }
}

std::optional<std::size_t> LinearModel::ClassIndex(
    const std::string& name) const {
  auto it = std::find(classes_.begin(), classes_.end(), name);
  if (it == classes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - classes_.begin());
}

double LinearModel::Score(const FeatureVector& x,
                          std::size_t class_index) const {
  const std::vector<double>& w = weights_.at(class_index);
  double sum = 0.0;
  for (const auto& [i, value] : x.entries) sum += w.at(i) * value;
  return sum + biases_[class_index];
}

double LinearModel::Score(const FeatureVector& x,
                          const std::string& class_name) const {
  auto c = ClassIndex(class_name);
  if (!c) throw Error("unknown class '" + class_name + "'");
  return Score(x, *c);
}

const std::string& LinearModel::Predict(const FeatureVector& x) const {
  if (classes_.empty()) throw Error("linear model has no classes");
  std::size_t best = 0;
  double best_score = Score(x, 0);
  for (std::size_t c = 1; c < classes_.size(); ++c) {
    const double s = Score(x, c);
    if (s > best_score) {
      best = c;
      best_score = s;
    }
  }
  return classes_[best];
}

void LinearModel::CheckVocabulary(const Vocabulary& vocab) const {
  if (vocab.Fingerprint() != vocab_fingerprint_ ||
      vocab.size() != term_count()) {
    throw Error(fmt::format(
        "model/vocabulary mismatch (model fingerprint {:016x}, vocabulary "
        "{:016x})",
        vocab_fingerprint_, vocab.Fingerprint()));
  }
}

LinearModel Train(std::span<const FeatureVector> vectors,
                  std::span<const std::string> labels, const Vocabulary& vocab,
                  const TrainConfig& config) {
  config.Validate();
  if (vectors.size() != labels.size()) {
    throw Error(
        fmt::format("{} vectors but {} labels", vectors.size(), labels.size()));
  }
  const std::set<std::string> distinct(labels.begin(), labels.end());
  if (distinct.size() < 2) throw Error("need >= 2 classes");
  for (const FeatureVector& x : vectors) {
    if (!x.entries.empty() && x.entries.back().first >= vocab.size()) {
      throw Error("feature index outside the vocabulary");
    }
  }

  std::vector<std::string> classes(distinct.begin(), distinct.end());
  std::vector<std::vector<double>> weights;
  std::vector<double> biases;
  std::vector<double> targets(labels.size());
  for (const std::string& c : classes) {
    for (std::size_t k = 0; k < labels.size(); ++k) {
      targets[k] = labels[k] == c ? 1.0 : -1.0;
    }
    BinaryFit fit = FitBinary(vectors, targets, vocab.size(), config);
    weights.push_back(std::move(fit.weights));
    biases.push_back(fit.bias);
  }
  return LinearModel(std::move(classes), std::move(weights), std::move(biases),
                     vocab.Fingerprint());
}

double Evaluate(const LinearModel& model,
                std::span<const FeatureVector> vectors,
                std::span<const std::string> labels) {
  if (vectors.size() != labels.size()) {
    throw Error(
        fmt::format("{} vectors but {} labels", vectors.size(), labels.size()));
  }
  if (vectors.empty()) throw Error("no documents to evaluate");
  std::size_t correct = 0;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (model.Predict(vectors[k]) == labels[k]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(vectors.size());
}

std::string SerializeModel(const LinearModel& model) {
  nlohmann::json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["vocab_fingerprint"] = fmt::format("{:016x}", model.vocab_fingerprint());
  j["term_count"] = model.term_count();
  j["classes"] = model.classes();
  j["biases"] = model.biases();
  j["weights"] = model.weights();
  return j.dump();
}

LinearModel DeserializeModel(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (j.at("format") != kModelFormat) throw Error("not a textscope model");
    if (j.at("version") != kModelVersion) {
      throw Error("unsupported model version " + j.at("version").dump());
    }
    const std::string fp = j.at("vocab_fingerprint").get<std::string>();
    std::size_t used = 0;
    const std::uint64_t fingerprint = std::stoull(fp, &used, 16);
    if (used != fp.size()) throw Error("bad vocabulary fingerprint");
    LinearModel model(j.at("classes").get<std::vector<std::string>>(),
                      j.at("weights").get<std::vector<std::vector<double>>>(),
                      j.at("biases").get<std::vector<double>>(), fingerprint);
    if (model.term_count() != j.at("term_count").get<std::size_t>()) {
      throw Error("term_count does not match weight length");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed model file: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(std::string("malformed model file: ") + e.what());
  }
}

void SaveModel(const LinearModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << SerializeModel(model);
  if (!out) throw Error("cannot write model to '" + path.string() + "'");
}

LinearModel LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read model '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return DeserializeModel(buf.str());
}

}  // namespace textscope
