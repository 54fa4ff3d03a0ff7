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

#include "textscope/relevance.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <unordered_map>
#include <unordered_set>

#include "textscope/error.h"

namespace textscope {

std::string MethodName(Method method) {
  switch (method) {
    case Method::kTfidfSum:
      return "tfidf_sum";
    case Method::kLrp:
      return "lrp";
    case Method::kDistinctive:
      return "distinctive";
  }
  return "?";
}

Method ParseMethod(const std::string& name) {
  if (name == "tfidf_sum" || name == "tfidf") return Method::kTfidfSum;
  if (name == "lrp") return Method::kLrp;
  if (name == "distinctive") return Method::kDistinctive;
  throw Error("unknown scorer '" + name +
              "' (expected tfidf_sum, lrp or distinctive)");
}

template <typename T>
std::size_t ClassGroups<T>::IndexOf(const std::string& name) const {
  auto it = std::find(classes.begin(), classes.end(), name);
  if (it == classes.end()) throw Error("unknown class '" + name + "'");
  return static_cast<std::size_t>(it - classes.begin());
}

template <typename T>
ClassGroups<T> GroupByLabel(std::span<const T> items,
                            std::span<const std::string> labels) {
  if (items.size() != labels.size()) {
    throw Error(
        fmt::format("{} items but {} labels", items.size(), labels.size()));
  }
  std::map<std::string, std::vector<T>> by_label;
  for (std::size_t k = 0; k < items.size(); ++k) {
    by_label[labels[k]].push_back(items[k]);
  }
  ClassGroups<T> groups;
  for (auto& [label, members] : by_label) {
    groups.classes.push_back(label);
    groups.members.push_back(std::move(members));
  }
  return groups;
}

template struct ClassGroups<FeatureVector>;
template struct ClassGroups<TokenizedDoc>;
template ClassGroups<FeatureVector> GroupByLabel(std::span<const FeatureVector>,
                                                 std::span<const std::string>);
template ClassGroups<TokenizedDoc> GroupByLabel(std::span<const TokenizedDoc>,
                                                std::span<const std::string>);

ScoreTable TfidfSum(const ClassGroups<FeatureVector>& groups,
                    const std::string& class_name, const Vocabulary& vocab) {
  const auto& members = groups.members[groups.IndexOf(class_name)];
  if (members.empty()) throw Error("class '" + class_name + "' is empty");
  std::vector<double> sums(vocab.size(), 0.0);
  for (const FeatureVector& x : members) {
    for (const auto& [i, value] : x.entries) sums.at(i) += value;
  }
  ScoreTable table{class_name, Method::kTfidfSum, {}};
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (sums[i] > 0.0) table.scores.emplace(vocab.terms()[i], sums[i]);
  }
  return table;
}

std::vector<double> LrpDecompose(const LinearModel& model,
                                 const FeatureVector& x,
                                 std::size_t class_index) {
  const std::size_t term_count = model.term_count();
  if (term_count == 0) throw Error("model has an empty vocabulary");
  const double share =
      model.biases().at(class_index) / static_cast<double>(term_count);
  const std::vector<double>& w = model.weights()[class_index];
  std::vector<double> relevance(term_count, share);
  for (const auto& [i, value] : x.entries) relevance.at(i) += w[i] * value;
  return relevance;
}

ScoreTable Lrp(const ClassGroups<FeatureVector>& groups,
               const LinearModel& model, const Vocabulary& vocab,
               const std::string& class_name) {
  model.CheckVocabulary(vocab);
  const auto& members = groups.members[groups.IndexOf(class_name)];
  if (members.empty()) throw Error("class '" + class_name + "' is empty");
  auto c = model.ClassIndex(class_name);
  if (!c) throw Error("model has no class '" + class_name + "'");

  const std::size_t term_count = vocab.size();
  const double share = model.biases()[*c] / static_cast<double>(term_count);
  const std::vector<double>& w = model.weights()[*c];
  std::vector<double> weighted(term_count, 0.0);
  for (const FeatureVector& x : members) {
    for (const auto& [i, value] : x.entries) weighted[i] += w[i] * value;
  }
  const double bias_total = static_cast<double>(members.size()) * share;
  ScoreTable table{class_name, Method::kLrp, {}};
  for (std::size_t i = 0; i < term_count; ++i) {
    table.scores.emplace(vocab.terms()[i], weighted[i] + bias_total);
  }
  return table;
}

std::vector<double> OccurrenceRates(const ClassGroups<TokenizedDoc>& groups,
                                    std::span<const std::string> forms) {
  const std::unordered_set<std::string> wanted(forms.begin(), forms.end());
  std::vector<double> rates;
  for (std::size_t c = 0; c < groups.classes.size(); ++c) {
    const auto& members = groups.members[c];
    if (members.empty()) {
      throw Error("class '" + groups.classes[c] + "' is empty");
    }
    std::size_t hits = 0;
    for (const TokenizedDoc& d : members) {
      if (std::any_of(d.tokens.begin(), d.tokens.end(),
                      [&](const std::string& t) { return wanted.count(t); })) {
        ++hits;
      }
    }
    rates.push_back(static_cast<double>(hits) /
                    static_cast<double>(members.size()));
  }
  return rates;
}

void DistinctiveConfig::Validate() const {
  if (!(epsilon > 0.0)) throw Error("epsilon must be > 0");
}

double FalsePositiveRate(std::span<const double> other_rates) {
  if (other_rates.empty()) return 0.0;
  const double n = static_cast<double>(other_rates.size());
  double mean = 0.0;
  for (double r : other_rates) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : other_rates) var += (r - mean) * (r - mean);
  return mean + std::sqrt(var / n);
}

RateScores ScoreRates(double tpr, double fpr, double epsilon) {
  RateScores s;
  s.diff = std::max(tpr - fpr, 0.0);
  const double z = tpr / std::max(fpr, epsilon);
  s.quot = (std::min(std::max(z, 1.0), 4.0) - 1.0) / 3.0;
  s.dist = 0.5 * (s.diff + s.quot);
  return s;
}

std::vector<ScoreTable> DistinctiveAll(const ClassGroups<TokenizedDoc>& groups,
                                       const DistinctiveConfig& config) {
  config.Validate();
  const std::size_t n_classes = groups.classes.size();
  if (n_classes < 2) {
    throw Error("distinctive scoring requires >= 2 classes");
  }

  // Per term, the number of documents of each class containing it.
  std::unordered_map<std::string_view, std::vector<std::int64_t>> counts;
  std::unordered_set<std::string_view> seen;
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (groups.members[c].empty()) {
      throw Error("class '" + groups.classes[c] + "' is empty");
    }
    for (const TokenizedDoc& d : groups.members[c]) {
      seen.clear();
      for (const std::string& t : d.tokens) {
        if (!seen.insert(t).second) continue;
        auto& row = counts[t];
        if (row.empty()) row.assign(n_classes, 0);
        ++row[c];
      }
    }
  }

  std::vector<ScoreTable> tables;
  for (std::size_t c = 0; c < n_classes; ++c) {
    tables.push_back({groups.classes[c], Method::kDistinctive, {}});
  }
  std::vector<double> tpr(n_classes);
  std::vector<double> others(n_classes - 1);
  for (const auto& [term, row] : counts) {
    for (std::size_t c = 0; c < n_classes; ++c) {
      tpr[c] = static_cast<double>(row[c]) /
               static_cast<double>(groups.members[c].size());
    }
    for (std::size_t c = 0; c < n_classes; ++c) {
      if (tpr[c] == 0.0) continue;  // r_dist is 0 without any occurrence
      std::size_t o = 0;
      for (std::size_t l = 0; l < n_classes; ++l) {
        if (l != c) others[o++] = tpr[l];
      }
      const RateScores s =
          ScoreRates(tpr[c], FalsePositiveRate(others), config.epsilon);
      if (s.dist > 0.0) tables[c].scores.emplace(term, s.dist);
    }
  }
  return tables;
}

ScoreTable Distinctive(const ClassGroups<TokenizedDoc>& groups,
                       const std::string& class_name,
                       const DistinctiveConfig& config) {
  const std::size_t c = groups.IndexOf(class_name);
  return std::move(DistinctiveAll(groups, config)[c]);
}

std::vector<std::pair<std::string, double>> TopK(const ScoreTable& table,
                                                 std::size_t k) {
  if (k < 1) throw Error("k must be >= 1");
  std::vector<std::pair<std::string, double>> all(table.scores.begin(),
                                                  table.scores.end());
  auto by_score = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };
  const std::size_t n = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n),
                    all.end(), by_score);
  all.resize(n);
  return all;
}

std::string ScoreTableJson(const ScoreTable& table) {
  nlohmann::ordered_json j;
  j["class"] = table.class_name;
  j["method"] = MethodName(table.method);
  auto scores = nlohmann::ordered_json::array();
  for (const auto& [term, score] :
       TopK(table, std::max<std::size_t>(table.scores.size(), 1))) {
    scores.push_back({{"term", term}, {"score", score}});
  }
  j["scores"] = std::move(scores);
  return j.dump(1);
}

}  // namespace textscope
