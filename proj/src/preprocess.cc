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

#include "textscope/preprocess.h"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "textscope/error.h"
#include "textscope/random.h"

namespace textscope {
namespace {

// Decodes one UTF-8 sequence starting at text[i]. Returns the code point
// and advances i; malformed input yields U+FFFD and consumes one byte.
char32_t DecodeUtf8(std::string_view text, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(text[i]);
  auto cont = [&](std::size_t k) -> int {
    if (i + k >= text.size()) return -1;
    const auto b = static_cast<unsigned char>(text[i + k]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    const int c = cont(k);
    if (c < 0) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | static_cast<char32_t>(c);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++i;
    return 0xFFFD;
  }
  i += len;
  return cp;
}

void AppendUtf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool IsWordCodepoint(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
           (cp >= 'A' && cp <= 'Z');
  }
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x370 && cp <= 0x3FF) return cp != 0x37E && cp != 0x387;
  if (cp >= 0x400 && cp <= 0x52F) return cp < 0x482 || cp > 0x489;
  if (cp >= 0x3040 && cp <= 0x30FF) return true;  // kana
  if (cp >= 0x4E00 && cp <= 0x9FFF) return true;  // CJK ideographs
  if (cp >= 0xAC00 && cp <= 0xD7AF) return true;  // hangul
  return false;
}

char32_t ToLower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

void ValidateThreshold(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(
        fmt::format("bigram threshold must be in (0, 1], got {}", threshold));
  }
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t cp = DecodeUtf8(text, i);
    if (IsWordCodepoint(cp)) {
      AppendUtf8(ToLower(cp), current);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<TokenizedDoc> TokenizeCorpus(const Corpus& corpus) {
  std::vector<TokenizedDoc> out;
  out.reserve(corpus.size());
  for (const Document& d : corpus.documents()) {
    out.push_back({d.id, Tokenize(d.text)});
  }
  return out;
}

std::optional<BigramStats> BigramTable::Find(std::string_view a,
                                             std::string_view b) const {
  auto it = entries_.find(std::pair<std::string_view, std::string_view>(a, b));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<BigramTable::Key, BigramStats>> BigramTable::Ranked()
    const {
  std::vector<std::pair<Key, BigramStats>> out(entries_.begin(),
                                               entries_.end());
  // entries_ is already lexicographic; a stable sort keeps that for ties.
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.second.score > y.second.score;
  });
  return out;
}

BigramTable ScoreBigrams(std::span<const TokenizedDoc> docs) {
  std::unordered_map<std::string_view, std::int64_t> unigrams;
  BigramTable::Map pairs;
  for (const TokenizedDoc& doc : docs) {
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      ++unigrams[doc.tokens[i]];
      if (i + 1 < doc.tokens.size()) {
        auto key = std::pair<std::string_view, std::string_view>(
            doc.tokens[i], doc.tokens[i + 1]);
        auto it = pairs.find(key);
        if (it == pairs.end()) {
          it = pairs
                   .emplace(BigramTable::Key(key.first, key.second),
                            BigramStats{})
                   .first;
        }
        ++it->second.pair_count;
      }
    }
  }
  for (auto it = pairs.begin(); it != pairs.end();) {
    if (it->second.pair_count < 2) {
      it = pairs.erase(it);
      continue;
    }
    const std::int64_t denom =
        std::max(unigrams.at(it->first.first), unigrams.at(it->first.second));
    it->second.score =
        static_cast<double>(it->second.pair_count) / static_cast<double>(denom);
    ++it;
  }
  return BigramTable(std::move(pairs));
}

TokenizedDoc JoinBigrams(const TokenizedDoc& doc, const BigramTable& table,
                         double threshold) {
  ValidateThreshold(threshold);
  TokenizedDoc out{doc.id, {}};
  if (doc.tokens.empty()) return out;
  out.tokens.reserve(doc.tokens.size());
  std::string current = doc.tokens.front();
  std::string_view last_word = doc.tokens.front();
  for (std::size_t i = 1; i < doc.tokens.size(); ++i) {
    const std::string& next = doc.tokens[i];
    auto stats = table.Find(last_word, next);
    if (stats && stats->score >= threshold) {
      current += kJoinChar;
      current += next;
    } else {
      out.tokens.push_back(std::move(current));
      current = next;
    }
    last_word = next;
  }
  out.tokens.push_back(std::move(current));
  return out;
}

std::vector<TokenizedDoc> JoinBigrams(std::span<const TokenizedDoc> docs,
                                      const BigramTable& table,
                                      double threshold) {
  std::vector<TokenizedDoc> out;
  out.reserve(docs.size());
  for (const TokenizedDoc& d : docs)
    out.push_back(JoinBigrams(d, table, threshold));
  return out;
}

double FractionPassing(const BigramTable& table, double threshold) {
  if (table.empty()) return 0.0;
  std::size_t passing = 0;
  for (const auto& [key, stats] : table.entries()) {
    if (stats.score >= threshold) ++passing;
  }
  return static_cast<double>(passing) / static_cast<double>(table.size());
}

std::vector<double> DefaultCalibrationThresholds() {
  return {0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
}

CalibrationReport ShuffleCalibration(std::span<const TokenizedDoc> docs,
                                     std::uint64_t seed,
                                     std::span<const double> thresholds) {
  std::vector<TokenizedDoc> shuffled(docs.begin(), docs.end());
  Rng rng(seed);
  for (TokenizedDoc& d : shuffled) rng.Shuffle(std::span(d.tokens));

  const BigramTable original = ScoreBigrams(docs);
  const BigramTable random = ScoreBigrams(shuffled);
  CalibrationReport report;
  report.seed = seed;
  report.original_bigrams = original.size();
  report.shuffled_bigrams = random.size();
  for (double t : thresholds) {
    report.points.push_back(
        {t, FractionPassing(original, t), FractionPassing(random, t)});
  }
  return report;
}

CalibrationReport ShuffleCalibration(std::span<const TokenizedDoc> docs,
                                     std::uint64_t seed) {
  const std::vector<double> grid = DefaultCalibrationThresholds();
  return ShuffleCalibration(docs, seed, grid);
}

std::string FormatBigramTsv(const BigramTable& table) {
  std::string out;
  for (const auto& [key, stats] : table.Ranked()) {
    fmt::format_to(std::back_inserter(out), "{}\t{}\t{}\t{}\n", key.first,
                   key.second, stats.pair_count, stats.score);
  }
  return out;
}

BigramTable ParseBigramTsv(std::string_view tsv) {
  BigramTable::Map entries;
  std::size_t line_no = 0;
  while (!tsv.empty()) {
    const std::size_t eol = tsv.find('\n');
    std::string_view line = tsv.substr(0, eol);
    tsv = eol == std::string_view::npos ? std::string_view()
                                        : tsv.substr(eol + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    auto fail = [&]() -> Error {
      return Error(
          fmt::format("bigram table line {}: malformed entry", line_no));
    };
    if (fields.size() != 4) throw fail();
    BigramStats stats;
    auto [p1, e1] =
        std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(),
                        stats.pair_count);
    if (e1 != std::errc() || p1 != fields[2].data() + fields[2].size()) {
      throw fail();
    }
    try {
      std::size_t used = 0;
      const std::string score_text(fields[3]);
      stats.score = std::stod(score_text, &used);
      if (used != score_text.size()) throw fail();
    } catch (const std::logic_error&) {
      throw fail();
    }
    entries.emplace(BigramTable::Key(fields[0], fields[1]), stats);
  }
  return BigramTable(std::move(entries));
}

}  // namespace textscope
