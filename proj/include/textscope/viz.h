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

#ifndef TEXTSCOPE_VIZ_H_
#define TEXTSCOPE_VIZ_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "textscope/classify.h"
#include "textscope/preprocess.h"
#include "textscope/relevance.h"
#include "textscope/vectorize.h"

namespace textscope {

enum class Sign { kPositive, kNegative };

struct CloudEntry {
  std::string term;
  double score = 0.0;  // sized by |score|
  Sign sign = Sign::kPositive;
};

struct WordCloudSpec {
  std::vector<CloudEntry> entries;  // descending |score|
  std::size_t max_words = 50;
  double width = 800.0;
  double height = 600.0;
  double min_font = 10.0;
  double max_font = 64.0;
  std::uint64_t seed = 0;
};

// Top max_words terms by |score| (ties by term), zero scores dropped; the
// sign follows the score.
WordCloudSpec MakeCloudSpec(const ScoreTable& table, std::size_t max_words,
                            std::uint64_t seed);

// Two-sided cloud: up to max_words/2 positive-scoring terms from each table,
// the first drawn with Sign::kPositive and the second with Sign::kNegative.
WordCloudSpec MakeTwoSidedCloudSpec(const ScoreTable& up,
                                    const ScoreTable& down,
                                    std::size_t max_words, std::uint64_t seed);

struct Box {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  // Open intersection: boxes that only touch do not intersect.
  bool Intersects(const Box& o) const {
    return x < o.x + o.width && o.x < x + width && y < o.y + o.height &&
           o.y < y + height;
  }
};

// Fixed text metrics so layouts do not depend on installed fonts.
inline constexpr double kAscent = 0.92;      // em above the baseline
inline constexpr double kLineHeight = 1.18;  // em, box height
double TextWidth(std::string_view text, double font_size);

double FontSize(double score, double max_score, double min_font,
                double max_font);

struct PlacedWord {
  CloudEntry entry;
  double font_size = 0.0;
  Box box;
};

struct CloudLayout {
  double width = 0.0;
  double height = 0.0;
  std::vector<PlacedWord> words;
  std::vector<std::string> dropped;
};

inline constexpr int kMaxSpiralSteps = 10000;

// Places words largest first on an outward archimedean spiral from the
// canvas center; the first position whose box stays on the canvas and hits
// no earlier box wins. Words that do not fit within kMaxSpiralSteps are
// dropped. The seed only rotates each word's spiral start.
// Throws "nothing to draw" when no entry has a nonzero score.
CloudLayout LayoutCloud(const WordCloudSpec& spec);

struct CloudMetadata {
  std::string class_name;
  std::string method;
  std::uint64_t seed = 0;
};

inline constexpr const char* kPositiveColor = "#238b45";
inline constexpr const char* kNegativeColor = "#cb181d";

// Standalone SVG 1.1, one <text> per placed word. Each text carries
// textLength equal to its layout box width.
std::string RenderSvg(const CloudLayout& layout, const CloudMetadata& meta);

struct HighlightDoc {
  std::string doc_id;
  std::string class_name;
  Method method = Method::kLrp;
  std::vector<std::string> tokens;
  std::vector<double> relevance;  // one per token
};

// Token relevance for class c: w_ci * x_i / occurrences(t_i) + b_c / L,
// L the document length. Summing over the tokens gives the class score.
HighlightDoc LrpHighlight(const TokenizedDoc& doc, const LinearModel& model,
                          const std::string& class_name,
                          const Vocabulary& vocab);

// Token relevance x_i / occurrences(t_i); sums to the vector's L1 norm.
HighlightDoc TfidfHighlight(const TokenizedDoc& doc, const Vocabulary& vocab);

// Self-contained HTML with inline CSS. Background opacity is
// |relevance| / max |relevance|.
std::string RenderHighlightHtml(const HighlightDoc& doc);

std::string HighlightHtml(const TokenizedDoc& doc, const LinearModel& model,
                          const std::string& class_name,
                          const Vocabulary& vocab);

std::string EscapeXml(std::string_view text);

}  // namespace textscope

#endif  // TEXTSCOPE_VIZ_H_
