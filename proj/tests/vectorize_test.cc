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

#include "textscope/vectorize.h"

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "textscope/error.h"
#include "textscope/random.h"

namespace textscope {
namespace {

using Tokens = std::vector<std::string>;

std::vector<TokenizedDoc> Docs(std::vector<Tokens> token_lists) {
  std::vector<TokenizedDoc> docs;
  for (std::size_t i = 0; i < token_lists.size(); ++i) {
    docs.push_back({"d" + std::to_string(i), std::move(token_lists[i])});
  }
  return docs;
}

TEST_CASE("BuildVocabulary counts documents, not tokens") {
  const Vocabulary v = BuildVocabulary(Docs({{"b", "a"}, {"c", "b"}}));
  CHECK(v.terms() == Tokens{"a", "b", "c"});
  CHECK(v.doc_freq() == std::vector<std::int64_t>{1, 2, 1});
  CHECK(v.n_docs() == 2);

  const Vocabulary single = BuildVocabulary(Docs({{"a", "a", "a"}}));
  CHECK(single.doc_freq() == std::vector<std::int64_t>{1});

  const Vocabulary with_empty = BuildVocabulary(Docs({{}, {"a"}}));
  CHECK(with_empty.terms() == Tokens{"a"});
  CHECK(with_empty.n_docs() == 2);
}

TEST_CASE("BuildVocabulary rejects an empty corpus") {
  CHECK_THROWS_WITH_AS(BuildVocabulary(Docs({{}, {}})), "empty corpus", Error);
  CHECK_THROWS_AS(BuildVocabulary({}), Error);
}

TEST_CASE("Idf is the natural log ratio") {
  const Vocabulary v({"a", "b", "c"}, {1, 4, 2}, 4);
  CHECK(v.Idf(0) == doctest::Approx(1.3862943611198906).epsilon(1e-15));
  CHECK(v.Idf(1) == 0.0);
  CHECK(v.Idf(2) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
}

TEST_CASE("Vocabulary validates its invariants") {
  CHECK_THROWS_AS(Vocabulary({"b", "a"}, {1, 1}, 2), Error);
  CHECK_THROWS_AS(Vocabulary({"a", "a"}, {1, 1}, 2), Error);
  CHECK_THROWS_AS(Vocabulary({"a"}, {0}, 2), Error);
  CHECK_THROWS_AS(Vocabulary({"a"}, {3}, 2), Error);
  CHECK_THROWS_AS(Vocabulary({"a", "b"}, {1}, 2), Error);
}

TEST_CASE("Vectorize uses length-normalized tf") {
  const auto docs = Docs({{"a", "b", "b"}, {"c"}});
  const Vocabulary v = BuildVocabulary(docs);
  const FeatureVector x = Vectorize(docs[0], v);
  const double ln2 = std::log(2.0);
  REQUIRE(x.entries.size() == 2);
  CHECK(x.Get(*v.Find("a")) == doctest::Approx(ln2 / 3).epsilon(1e-15));
  CHECK(x.Get(*v.Find("b")) == doctest::Approx(2 * ln2 / 3).epsilon(1e-15));
  CHECK(x.Get(*v.Find("c")) == 0.0);
  CHECK(x.doc_id == "d0");
}

TEST_CASE("Vectorize drops zero-idf terms and handles edge cases") {
  const auto docs = Docs({{"the", "cat"}, {"the", "dog"}, {}});
  const Vocabulary v = BuildVocabulary(docs);
  const auto every = Docs({{"the", "cat"}, {"the", "dog"}});
  const Vocabulary w = BuildVocabulary(every);
  CHECK(Vectorize(every[0], w).Get(*w.Find("the")) == 0.0);
  CHECK(Vectorize(every[0], w).entries.size() == 1);
  CHECK(Vectorize(docs[2], v).empty());
  // Out-of-vocabulary tokens count toward the length only.
  const FeatureVector x = Vectorize({"q", {"cat", "zebra"}}, w);
  CHECK(x.Get(*w.Find("cat")) ==
        doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("FeatureVector::Dot") {
  const FeatureVector a{"a", {{0, 1.0}, {2, 2.0}, {5, 3.0}}};
  const FeatureVector b{"b", {{2, 4.0}, {3, 1.0}, {5, -1.0}}};
  CHECK(a.Dot(b) == 5.0);
  CHECK(b.Dot(a) == 5.0);
  CHECK(a.Dot(FeatureVector{}) == 0.0);
}

std::vector<TokenizedDoc> RandomDocs(Rng& rng) {
  std::vector<TokenizedDoc> docs;
  const std::size_t n = 2 + rng.UniformIndex(10);
  for (std::size_t d = 0; d < n; ++d) {
    TokenizedDoc doc{"d" + std::to_string(d), {}};
    const std::size_t len = rng.UniformIndex(15);
    for (std::size_t i = 0; i < len; ++i) {
      doc.tokens.push_back("t" + std::to_string(rng.UniformIndex(12)));
    }
    doc.tokens.push_back("common");
    docs.push_back(doc);
  }
  return docs;
}

TEST_CASE("Property: vectors are sorted, positive and in range") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto docs = RandomDocs(rng);
    const Vocabulary v = BuildVocabulary(docs);
    const auto common = *v.Find("common");
    for (const FeatureVector& x : Vectorize(docs, v)) {
      for (std::size_t i = 0; i < x.entries.size(); ++i) {
        CHECK(x.entries[i].second > 0.0);
        CHECK(x.entries[i].first < v.size());
        CHECK(x.entries[i].first != common);
        if (i > 0) CHECK(x.entries[i - 1].first < x.entries[i].first);
      }
    }
  }
}

TEST_CASE("Property: permuting tokens leaves the vector unchanged") {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto docs = RandomDocs(rng);
    const Vocabulary v = BuildVocabulary(docs);
    for (const TokenizedDoc& doc : docs) {
      TokenizedDoc shuffled = doc;
      rng.Shuffle(std::span<std::string>(shuffled.tokens));
      CHECK(Vectorize(shuffled, v) == Vectorize(doc, v));
    }
  }
}

TEST_CASE("Vocabulary TSV round-trips with the fingerprint") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Vocabulary v = BuildVocabulary(RandomDocs(rng));
    const Vocabulary back = ParseVocabularyTsv(FormatVocabularyTsv(v));
    CHECK(back == v);
    CHECK(back.Fingerprint() == v.Fingerprint());
  }
  const Vocabulary a({"a", "b"}, {1, 2}, 2);
  const Vocabulary b({"a", "b"}, {1, 1}, 2);
  CHECK(a.Fingerprint() != b.Fingerprint());
  CHECK_THROWS_AS(ParseVocabularyTsv("a\t1\t0.5\n"), Error);
}

}  // namespace
}  // namespace textscope
