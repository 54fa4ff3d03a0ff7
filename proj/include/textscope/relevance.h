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

#ifndef TEXTSCOPE_RELEVANCE_H_
#define TEXTSCOPE_RELEVANCE_H_

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "textscope/classify.h"
#include "textscope/preprocess.h"
#include "textscope/vectorize.h"

namespace textscope {

enum class Method { kTfidfSum, kLrp, kDistinctive };

std::string MethodName(Method method);
// Accepts "tfidf_sum" (or "tfidf"), "lrp", "distinctive".
Method ParseMethod(const std::string& name);

// Items (documents or vectors) partitioned by class, classes in a fixed
// order. Every per-class reduction iterates in this order.
template <typename T>
struct ClassGroups {
  std::vector<std::string> classes;
  std::vector<std::vector<T>> members;

  // Throws on an unknown class.
  std::size_t IndexOf(const std::string& name) const;
};

// Groups items by label; classes come out sorted. Sizes must match.
template <typename T>
ClassGroups<T> GroupByLabel(std::span<const T> items,
                            std::span<const std::string> labels);

struct ScoreTable {
  std::string class_name;
  Method method = Method::kTfidfSum;
  std::map<std::string, double> scores;
};

// Sum of the class's tf-idf vectors. Terms that score 0 are omitted.
ScoreTable TfidfSum(const ClassGroups<FeatureVector>& groups,
                    const std::string& class_name, const Vocabulary& vocab);

// Per-term decomposition of one document's class score:
//   r_i = w_ci * x_i + b_c / T,  sum_i r_i == score_c(x).
std::vector<double> LrpDecompose(const LinearModel& model,
                                 const FeatureVector& x,
                                 std::size_t class_index);

// Sum of LrpDecompose over the class's documents, for every vocabulary term
// (each term carries n_c * b_c / T even when absent from the class).
ScoreTable Lrp(const ClassGroups<FeatureVector>& groups,
               const LinearModel& model, const Vocabulary& vocab,
               const std::string& class_name);

// Fraction of each class's documents containing at least one of the given
// surface forms. One value per class, in class order.
std::vector<double> OccurrenceRates(const ClassGroups<TokenizedDoc>& groups,
                                    std::span<const std::string> forms);

struct DistinctiveConfig {
  double epsilon = 1e-8;
  void Validate() const;
};

struct RateScores {
  double diff = 0.0;
  double quot = 0.0;
  double dist = 0.0;
};

// Mean plus population standard deviation of the other classes' rates.
double FalsePositiveRate(std::span<const double> other_rates);

// diff = max(tpr - fpr, 0); quot = (clamp(tpr / max(fpr, eps), 1, 4) - 1) / 3;
// dist = (diff + quot) / 2.
RateScores ScoreRates(double tpr, double fpr, double epsilon);

// Distinctive-word tables for every class, in class order. Presence is
// token presence. Terms with r_dist == 0 are omitted. Needs >= 2 classes.
std::vector<ScoreTable> DistinctiveAll(const ClassGroups<TokenizedDoc>& groups,
                                       const DistinctiveConfig& config);
ScoreTable Distinctive(const ClassGroups<TokenizedDoc>& groups,
                       const std::string& class_name,
                       const DistinctiveConfig& config);

// k highest scores, descending, ties by term. Throws if k < 1.
std::vector<std::pair<std::string, double>> TopK(const ScoreTable& table,
                                                 std::size_t k);

// {"class", "method", "scores": [{"term", "score"}, ...]} sorted as TopK.
std::string ScoreTableJson(const ScoreTable& table);

}  // namespace textscope

#endif  // TEXTSCOPE_RELEVANCE_H_
