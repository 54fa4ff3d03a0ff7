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

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <unordered_set>

#include "textscope/error.h"

namespace textscope {

Vocabulary::Vocabulary(std::vector<std::string> terms,
                       std::vector<std::int64_t> doc_freq, std::int64_t n_docs)
    : terms_(std::move(terms)),
      doc_freq_(std::move(doc_freq)),
      n_docs_(n_docs) {
  if (terms_.size() != doc_freq_.size()) {
    throw Error("vocabulary: terms and doc_freq differ in length");
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0 && !(terms_[i - 1] < terms_[i])) {
      throw Error("vocabulary: terms must be sorted and unique");
    }
    if (doc_freq_[i] < 1 || doc_freq_[i] > n_docs_) {
      throw Error(
          fmt::format("vocabulary: doc_freq of '{}' out of range", terms_[i]));
    }
  }
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    index_.emplace(terms_[i], static_cast<TermIndex>(i));
  }
}

std::optional<TermIndex> Vocabulary::Find(std::string_view term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Vocabulary::Idf(TermIndex i) const {
  return std::log(static_cast<double>(n_docs_) /
                  static_cast<double>(doc_freq_.at(i)));
}

std::uint64_t Vocabulary::Fingerprint() const {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  auto mix_int = [&mix](std::int64_t v) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i)
      bytes[i] = static_cast<unsigned char>(v >> (8 * i));
    mix(bytes, 8);
  };
  mix_int(n_docs_);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    mix_int(static_cast<std::int64_t>(terms_[i].size()));
    mix(terms_[i].data(), terms_[i].size());
    mix_int(doc_freq_[i]);
  }
  return h;
}

Vocabulary BuildVocabulary(std::span<const TokenizedDoc> docs) {
  std::map<std::string_view, std::int64_t> df;
  bool any_tokens = false;
  std::unordered_set<std::string_view> seen;
  for (const TokenizedDoc& doc : docs) {
    seen.clear();
    for (const std::string& t : doc.tokens) {
      if (seen.insert(t).second) ++df[t];
    }
    any_tokens = any_tokens || !doc.tokens.empty();
  }
  if (!any_tokens) throw Error("empty corpus");
  std::vector<std::string> terms;
  std::vector<std::int64_t> freq;
  terms.reserve(df.size());
  freq.reserve(df.size());
  for (const auto& [term, count] : df) {
    terms.emplace_back(term);
    freq.push_back(count);
  }
  return Vocabulary(std::move(terms), std::move(freq),
                    static_cast<std::int64_t>(docs.size()));
}

double FeatureVector::Get(TermIndex i) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), i,
                             [](const std::pair<TermIndex, double>& e,
                                TermIndex k) { return e.first < k; });
  return it != entries.end() && it->first == i ? it->second : 0.0;
}

double FeatureVector::Dot(const FeatureVector& other) const {
  double sum = 0.0;
  auto a = entries.begin();
  auto b = other.entries.begin();
  while (a != entries.end() && b != other.entries.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      sum += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return sum;
}

FeatureVector Vectorize(const TokenizedDoc& doc, const Vocabulary& vocab) {
  FeatureVector out{doc.id, {}};
  if (doc.tokens.empty()) return out;
  std::map<TermIndex, std::int64_t> counts;
  for (const std::string& t : doc.tokens) {
    if (auto i = vocab.Find(t)) ++counts[*i];
  }
  const double length = static_cast<double>(doc.tokens.size());
  for (const auto& [index, count] : counts) {
    const double value = static_cast<double>(count) / length * vocab.Idf(index);
    if (value > 0.0) out.entries.emplace_back(index, value);
  }
  return out;
}

std::vector<FeatureVector> Vectorize(std::span<const TokenizedDoc> docs,
                                     const Vocabulary& vocab) {
  std::vector<FeatureVector> out;
  out.reserve(docs.size());
  for (const TokenizedDoc& d : docs) out.push_back(Vectorize(d, vocab));
  return out;
}

std::string FormatVocabularyTsv(const Vocabulary& vocab) {
  std::string out = fmt::format("#n_docs\t{}\n", vocab.n_docs());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    fmt::format_to(std::back_inserter(out), "{}\t{}\t{}\n", vocab.terms()[i],
                   vocab.doc_freq()[i], vocab.Idf(static_cast<TermIndex>(i)));
  }
  return out;
}

Vocabulary ParseVocabularyTsv(std::string_view tsv) {
  std::vector<std::string> terms;
  std::vector<std::int64_t> freq;
  std::optional<std::int64_t> n_docs;
  std::size_t line_no = 0;
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw Error(
          fmt::format("vocabulary line {}: bad integer '{}'", line_no, s));
    }
    return v;
  };
  while (!tsv.empty()) {
    const std::size_t eol = tsv.find('\n');
    std::string_view line = tsv.substr(0, eol);
    tsv = eol == std::string_view::npos ? std::string_view()
                                        : tsv.substr(eol + 1);
    ++line_no;
    if (line.empty()) continue;
    const std::size_t tab1 = line.find('\t');
    if (tab1 == std::string_view::npos) {
      throw Error(fmt::format("vocabulary line {}: malformed entry", line_no));
    }
    if (line.starts_with("#n_docs\t")) {
      n_docs = parse_int(line.substr(tab1 + 1));
      continue;
    }
    const std::size_t tab2 = line.find('\t', tab1 + 1);
    terms.emplace_back(line.substr(0, tab1));
    freq.push_back(parse_int(line.substr(
        tab1 + 1, tab2 == std::string_view::npos ? std::string_view::npos
                                                 : tab2 - tab1 - 1)));
  }
  if (!n_docs) throw Error("vocabulary: missing #n_docs header");
  return Vocabulary(std::move(terms), std::move(freq), *n_docs);
}

}  // namespace textscope
