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

#ifndef TEXTSCOPE_PREPROCESS_H_
#define TEXTSCOPE_PREPROCESS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "textscope/corpus.h"

namespace textscope {

// Separator used when joining detected phrases ("new_york"). Tokenize never
// produces it, so joined tokens cannot collide with raw ones.
inline constexpr char kJoinChar = '_';

struct TokenizedDoc {
  std::string id;
  std::vector<std::string> tokens;

  bool operator==(const TokenizedDoc&) const = default;
};

// Lowercases, turns every non-alphanumeric character into a separator and
// splits. Digits count as alphanumeric. Non-ASCII letters (Latin, Greek,
// Cyrillic, CJK) are kept; other non-ASCII code points and malformed UTF-8
// bytes act as separators.
std::vector<std::string> Tokenize(std::string_view text);

std::vector<TokenizedDoc> TokenizeCorpus(const Corpus& corpus);

struct BigramStats {
  std::int64_t pair_count = 0;
  double score = 0.0;

  bool operator==(const BigramStats&) const = default;
};

// Adjacent token pairs seen at least twice, with
//   score(a b) = count(a b) / max(count(a), count(b)).
class BigramTable {
 public:
  struct PairLess {
    using is_transparent = void;
    template <typename A, typename B>
    bool operator()(const A& x, const B& y) const {
      const int c =
          std::string_view(x.first).compare(std::string_view(y.first));
      if (c != 0) return c < 0;
      return std::string_view(x.second) < std::string_view(y.second);
    }
  };
  using Key = std::pair<std::string, std::string>;
  using Map = std::map<Key, BigramStats, PairLess>;

  BigramTable() = default;
  explicit BigramTable(Map entries) : entries_(std::move(entries)) {}

  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::optional<BigramStats> Find(std::string_view a, std::string_view b) const;

  // Entries ordered by descending score, then lexicographically.
  std::vector<std::pair<Key, BigramStats>> Ranked() const;

  bool operator==(const BigramTable&) const = default;

 private:
  Map entries_;
};

// Counts never cross document boundaries; unigram counts are token
// occurrences over all documents.
BigramTable ScoreBigrams(std::span<const TokenizedDoc> docs);

// Single greedy left-to-right pass. The token being built is compared via
// its last constituent word, so passing chains collapse into one token.
// Throws unless 0 < threshold <= 1.
TokenizedDoc JoinBigrams(const TokenizedDoc& doc, const BigramTable& table,
                         double threshold);
std::vector<TokenizedDoc> JoinBigrams(std::span<const TokenizedDoc> docs,
                                      const BigramTable& table,
                                      double threshold);

// Fraction of table entries whose score is >= threshold (0 for an empty
// table).
double FractionPassing(const BigramTable& table, double threshold);

struct CalibrationPoint {
  double threshold = 0.0;
  double original_fraction = 0.0;
  double shuffled_fraction = 0.0;
};

struct CalibrationReport {
  std::uint64_t seed = 0;
  std::size_t original_bigrams = 0;
  std::size_t shuffled_bigrams = 0;
  std::vector<CalibrationPoint> points;
};

std::vector<double> DefaultCalibrationThresholds();

// Scores the corpus as given and again after shuffling the words of each
// document independently; reports the passing fraction of both tables at
// every threshold.
CalibrationReport ShuffleCalibration(std::span<const TokenizedDoc> docs,
                                     std::uint64_t seed,
                                     std::span<const double> thresholds);
CalibrationReport ShuffleCalibration(std::span<const TokenizedDoc> docs,
                                     std::uint64_t seed);

// token_a \t token_b \t pair_count \t score, in Ranked() order. Scores use
// the shortest representation that parses back to the same double.
std::string FormatBigramTsv(const BigramTable& table);
BigramTable ParseBigramTsv(std::string_view tsv);

}  // namespace textscope

#endif  // TEXTSCOPE_PREPROCESS_H_
