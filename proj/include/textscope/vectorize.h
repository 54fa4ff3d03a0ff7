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

#ifndef TEXTSCOPE_VECTORIZE_H_
#define TEXTSCOPE_VECTORIZE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "textscope/preprocess.h"

namespace textscope {

using TermIndex = std::uint32_t;

// Sorted term list with document frequencies. Indices follow the sorted
// order, so the same corpus always yields the same indexing.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Terms must be strictly increasing; every doc_freq in [1, n_docs].
  Vocabulary(std::vector<std::string> terms, std::vector<std::int64_t> doc_freq,
             std::int64_t n_docs);

  std::size_t size() const { return terms_.size(); }
  std::int64_t n_docs() const { return n_docs_; }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::int64_t>& doc_freq() const { return doc_freq_; }
  const std::string& term(TermIndex i) const { return terms_.at(i); }

  std::optional<TermIndex> Find(std::string_view term) const;

  // ln(n_docs / doc_freq).
  double Idf(TermIndex i) const;

  // FNV-1a over terms, document frequencies and n_docs. Ties a trained
  // model to the vocabulary it was trained against.
  std::uint64_t Fingerprint() const;

  bool operator==(const Vocabulary& o) const {
    return terms_ == o.terms_ && doc_freq_ == o.doc_freq_ &&
           n_docs_ == o.n_docs_;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::int64_t> doc_freq_;
  std::int64_t n_docs_ = 0;
  std::unordered_map<std::string_view, TermIndex> index_;
};

// Throws "empty corpus" if no document has a token. Empty documents still
// count towards n_docs.
Vocabulary BuildVocabulary(std::span<const TokenizedDoc> docs);

// Sparse tf-idf vector; entries sorted by index, all values > 0.
struct FeatureVector {
  std::string doc_id;
  std::vector<std::pair<TermIndex, double>> entries;

  bool empty() const { return entries.empty(); }
  // 0 when the index is not stored.
  double Get(TermIndex i) const;
  double Dot(const FeatureVector& other) const;

  bool operator==(const FeatureVector&) const = default;
};

// tf = occurrences / document length; x = tf * idf. Out-of-vocabulary
// tokens are ignored (but still count towards the length).
FeatureVector Vectorize(const TokenizedDoc& doc, const Vocabulary& vocab);
std::vector<FeatureVector> Vectorize(std::span<const TokenizedDoc> docs,
                                     const Vocabulary& vocab);

// term \t doc_freq \t idf, preceded by a "#n_docs\t<N>" line.
std::string FormatVocabularyTsv(const Vocabulary& vocab);
Vocabulary ParseVocabularyTsv(std::string_view tsv);

}  // namespace textscope

#endif  // TEXTSCOPE_VECTORIZE_H_
