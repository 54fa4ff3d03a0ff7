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

#include <doctest.h>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "testing/oracles.h"
#include "testing/synthetic.h"
#include "textscope/error.h"
#include "textscope/random.h"

namespace textscope {
namespace {

using Tokens = std::vector<std::string>;

// Neumaier-compensated sum.
double AccurateSum(const std::vector<double>& values) {
  double sum = 0.0;
  double c = 0.0;
  for (double v : values) {
    const double t = sum + v;
    c += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + c;
}

ClassGroups<FeatureVector> VectorGroups(std::vector<FeatureVector> vectors,
                                        std::vector<std::string> labels) {
  return GroupByLabel<FeatureVector>(vectors, labels);
}

ClassGroups<TokenizedDoc> DocGroups(std::vector<std::vector<Tokens>> classes) {
  std::vector<TokenizedDoc> docs;
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (auto& tokens : classes[c]) {
      docs.push_back({fmt::format("d{}", docs.size()), tokens});
      labels.push_back(fmt::format("c{}", c));
    }
  }
  return GroupByLabel<TokenizedDoc>(docs, labels);
}

const Vocabulary kVocab({"a", "b", "c"}, {1, 1, 2}, 2);

TEST_CASE("Method names") {
  CHECK(ParseMethod("tfidf_sum") == Method::kTfidfSum);
  CHECK(ParseMethod("tfidf") == Method::kTfidfSum);
  CHECK(ParseMethod(MethodName(Method::kLrp)) == Method::kLrp);
  CHECK(ParseMethod(MethodName(Method::kDistinctive)) == Method::kDistinctive);
  CHECK_THROWS_AS(ParseMethod("pmi"), Error);
}

TEST_CASE("GroupByLabel sorts classes and keeps member order") {
  std::vector<FeatureVector> vectors = {{"1", {}}, {"2", {}}, {"3", {}}};
  std::vector<std::string> labels = {"z", "a", "z"};
  const auto groups = GroupByLabel<FeatureVector>(vectors, labels);
  CHECK(groups.classes == std::vector<std::string>{"a", "z"});
  CHECK(groups.members[1][0].doc_id == "1");
  CHECK(groups.members[1][1].doc_id == "3");
  CHECK(groups.IndexOf("z") == 1);
  CHECK_THROWS_AS(groups.IndexOf("q"), Error);
  labels.pop_back();
  CHECK_THROWS_AS(GroupByLabel<FeatureVector>(vectors, labels), Error);
}

TEST_CASE("TfidfSum") {
  const FeatureVector x{"1", {{0, 0.25}, {1, 0.5}}};
  SUBCASE("one document gives its own vector") {
    const auto t = TfidfSum(VectorGroups({x}, {"k"}), "k", kVocab);
    CHECK(t.method == Method::kTfidfSum);
    CHECK(t.scores == std::map<std::string, double>{{"a", 0.25}, {"b", 0.5}});
  }
  SUBCASE("two identical documents double every score") {
    const auto t = TfidfSum(VectorGroups({x, x}, {"k", "k"}), "k", kVocab);
    CHECK(t.scores == std::map<std::string, double>{{"a", 0.5}, {"b", 1.0}});
  }
  SUBCASE("idf-0 terms score 0 and are omitted") {
    const std::vector<TokenizedDoc> docs = {{"1", {"the", "x", "the"}},
                                            {"2", {"the", "y"}}};
    const Vocabulary v = BuildVocabulary(docs);
    const auto vectors = Vectorize(docs, v);
    const auto t = TfidfSum(VectorGroups(vectors, {"k", "k"}), "k", v);
    CHECK(t.scores.count("the") == 0);
    CHECK(t.scores.size() == 2);
  }
  SUBCASE("unknown class") {
    CHECK_THROWS_AS(TfidfSum(VectorGroups({x}, {"k"}), "q", kVocab), Error);
  }
}

TEST_CASE("LrpDecompose and Lrp") {
  const LinearModel model({"neg", "pos"}, {{-1.0, 0.0, 0.5}, {1.0, 0.0, -0.5}},
                          {0.3, 0.0}, kVocab.Fingerprint());
  const FeatureVector x{"1", {{0, 0.2}, {2, 0.4}}};
  SUBCASE("sum equals the class score") {
    for (std::size_t c = 0; c < 2; ++c) {
      const auto r = LrpDecompose(model, x, c);
      REQUIRE(r.size() == 3);
      CHECK(AccurateSum(r) == doctest::Approx(model.Score(x, c)));
    }
  }
  SUBCASE("bias share spreads over every term") {
    const auto t =
        Lrp(VectorGroups({x, x}, {"neg", "neg"}), model, kVocab, "neg");
    CHECK(t.scores.size() == 3);
    CHECK(t.scores.at("b") == doctest::Approx(2 * 0.3 / 3));
    CHECK(t.scores.at("a") == doctest::Approx(2 * (-0.2 + 0.1)));
  }
  SUBCASE("zero bias and absent term score 0") {
    const auto t = Lrp(VectorGroups({x}, {"pos"}), model, kVocab, "pos");
    CHECK(t.scores.at("b") == 0.0);
    CHECK(t.scores.at("c") < 0.0);  // negative weight, present term
    CHECK(t.scores.at("a") > 0.0);
  }
  SUBCASE("fingerprint mismatch") {
    const Vocabulary other({"a", "b", "d"}, {1, 1, 2}, 2);
    CHECK_THROWS_AS(Lrp(VectorGroups({x}, {"pos"}), model, other, "pos"),
                    Error);
  }
}

TEST_CASE("Property: LRP conservation on random models") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t terms = 1 + rng.UniformIndex(200);
    std::vector<std::vector<double>> w(3, std::vector<double>(terms));
    std::vector<double> b(3);
    for (std::size_t c = 0; c < 3; ++c) {
      for (double& v : w[c]) v = rng.UniformReal() * 4 - 2;
      b[c] = rng.UniformReal() * 2 - 1;
    }
    const LinearModel model({"x", "y", "z"}, w, b, 0);
    const FeatureVector x = testing::RandomSparseVectors(rng, 1, terms, 0.3)[0];
    for (std::size_t c = 0; c < 3; ++c) {
      const double s = model.Score(x, c);
      const double sum = AccurateSum(LrpDecompose(model, x, c));
      CHECK(std::abs(sum - s) <= 1e-9 * std::max(std::abs(s), 1e-300));
    }
  }
}

TEST_CASE("OccurrenceRates") {
  const auto groups = DocGroups({{{"a", "b"}, {"a"}, {"c"}},
                                 {{"a"}, {"a", "x"}},
                                 {{"men"}, {"man"}, {"q"}, {"q"}}});
  const Tokens a = {"a"};
  CHECK(OccurrenceRates(groups, a) == std::vector<double>{2.0 / 3.0, 1.0, 0.0});
  const Tokens forms = {"man", "men"};
  CHECK(OccurrenceRates(groups, forms) == std::vector<double>{0, 0, 0.5});
}

TEST_CASE("ScoreRates") {
  const double eps = 1e-8;
  SUBCASE("quot saturates: TPR 0.3 and 1.0 tie at FPR 0.05") {
    CHECK(ScoreRates(0.3, 0.05, eps).quot == 1.0);
    CHECK(ScoreRates(1.0, 0.05, eps).quot == 1.0);
  }
  SUBCASE("corner") {
    const RateScores s = ScoreRates(1.0, 0.0, eps);
    CHECK(s.diff == 1.0);
    CHECK(s.quot == 1.0);
    CHECK(s.dist == 1.0);
  }
  SUBCASE("uninformative word") {
    const RateScores s = ScoreRates(0.4, 0.4, eps);
    CHECK(s.diff == 0.0);
    CHECK(s.quot == 0.0);
    CHECK(s.dist == 0.0);
  }
  SUBCASE("direct evaluation") {
    const RateScores s = ScoreRates(0.3, 0.05, eps);
    CHECK(s.diff == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(s.dist == doctest::Approx(0.625).epsilon(1e-12));
  }
  SUBCASE("quot midrange") {
    // z = 2 -> (2 - 1) / 3.
    CHECK(ScoreRates(0.4, 0.2, eps).quot == doctest::Approx(1.0 / 3.0));
  }
}

TEST_CASE("FalsePositiveRate is mean plus population std") {
  const double two[] = {0.4};
  CHECK(FalsePositiveRate(two) == 0.4);
  const double rates[] = {0.2, 0.6};
  CHECK(FalsePositiveRate(rates) == doctest::Approx(0.4 + 0.2));
  const double high[] = {1.0, 1.0, 0.0};
  CHECK(FalsePositiveRate(high) > 1.0 - 1e-12);
}

TEST_CASE("Property: rate scores stay in [0, 1] and follow the surface") {
  const double eps = 1e-8;
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      const double tpr = i / 40.0;
      const double fpr = j / 40.0 * 1.5;  // FPR can exceed 1
      const RateScores s = ScoreRates(tpr, fpr, eps);
      CHECK(s.diff >= 0.0);
      CHECK(s.diff <= 1.0);
      CHECK(s.quot >= 0.0);
      CHECK(s.quot <= 1.0);
      CHECK(s.dist >= 0.0);
      CHECK(s.dist <= 1.0);
      if (i > 0) CHECK(ScoreRates((i - 1) / 40.0, fpr, eps).dist <= s.dist);
      if (j > 0) {
        CHECK(ScoreRates(tpr, (j - 1) / 40.0 * 1.5, eps).dist >= s.dist);
      }
    }
  }
}

TEST_CASE("Distinctive matches the plain formula") {
  Rng rng(51);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n_classes = 2 + rng.UniformIndex(4);
    std::vector<std::vector<Tokens>> classes(n_classes);
    for (auto& docs : classes) {
      const std::size_t n = 1 + rng.UniformIndex(8);
      for (std::size_t d = 0; d < n; ++d) {
        Tokens tokens;
        const std::size_t len = 1 + rng.UniformIndex(6);
        for (std::size_t k = 0; k < len; ++k) {
          tokens.push_back(fmt::format("w{}", rng.UniformIndex(10)));
        }
        docs.push_back(tokens);
      }
    }
    const auto groups = DocGroups(classes);
    const auto tables = DistinctiveAll(groups, {});
    REQUIRE(tables.size() == n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
      CHECK(tables[c].class_name == fmt::format("c{}", c));
      for (int w = 0; w < 10; ++w) {
        const std::string term = fmt::format("w{}", w);
        const double expected =
            testing::DistinctiveOracle(classes, c, term, 1e-8);
        const auto it = tables[c].scores.find(term);
        const double got = it == tables[c].scores.end() ? 0.0 : it->second;
        CHECK(got == doctest::Approx(expected).epsilon(1e-12));
      }
      const auto single = Distinctive(groups, tables[c].class_name, {});
      CHECK(single.scores == tables[c].scores);
    }
  }
}

TEST_CASE("Property: distinctive is invariant under duplicating documents") {
  Rng rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<Tokens>> classes(3);
    for (auto& docs : classes) {
      for (int d = 0; d < 5; ++d) {
        Tokens tokens;
        for (int k = 0; k < 4; ++k) {
          tokens.push_back(fmt::format("w{}", rng.UniformIndex(8)));
        }
        docs.push_back(tokens);
      }
    }
    auto doubled = classes;
    for (auto& docs : doubled) {
      const auto copy = docs;
      docs.insert(docs.end(), copy.begin(), copy.end());
    }
    const auto a = DistinctiveAll(DocGroups(classes), {});
    const auto b = DistinctiveAll(DocGroups(doubled), {});
    for (std::size_t c = 0; c < 3; ++c) CHECK(a[c].scores == b[c].scores);
  }
}

TEST_CASE("Exclusive terms in a two-class corpus have quot 1") {
  const auto groups =
      DocGroups({{{"only", "x"}, {"x"}, {"x"}, {"x"}}, {{"x"}, {"y"}}});
  const auto table = Distinctive(groups, "c0", {});
  // TPR 0.25, FPR 0: diff 0.25, quot 1.
  CHECK(table.scores.at("only") == doctest::Approx(0.625));
}

TEST_CASE("Distinctive errors") {
  const auto one = DocGroups({{{"a"}}});
  CHECK_THROWS_WITH_AS(DistinctiveAll(one, {}),
                       "distinctive scoring requires >= 2 classes", Error);
  DistinctiveConfig bad;
  bad.epsilon = 0.0;
  CHECK_THROWS_AS(bad.Validate(), Error);
}

TEST_CASE("TopK") {
  ScoreTable t{"k", Method::kTfidfSum, {{"a", 2.0}, {"b", 1.0}}};
  using Ranked = std::vector<std::pair<std::string, double>>;
  CHECK(TopK(t, 1) == Ranked{{"a", 2.0}});
  CHECK(TopK(t, 5) == Ranked{{"a", 2.0}, {"b", 1.0}});
  ScoreTable tie{"k", Method::kTfidfSum, {{"b", 1.0}, {"a", 1.0}}};
  CHECK(TopK(tie, 1) == Ranked{{"a", 1.0}});
  CHECK_THROWS_AS(TopK(t, 0), Error);
}

TEST_CASE("ScoreTableJson") {
  ScoreTable t{"k", Method::kLrp, {{"a", -1.0}, {"b", 0.5}}};
  const auto j = nlohmann::json::parse(ScoreTableJson(t));
  CHECK(j.at("class") == "k");
  CHECK(j.at("method") == "lrp");
  REQUIRE(j.at("scores").size() == 2);
  CHECK(j.at("scores")[0].at("term") == "b");
  CHECK(j.at("scores")[1].at("score") == -1.0);
}

}  // namespace
}  // namespace textscope
