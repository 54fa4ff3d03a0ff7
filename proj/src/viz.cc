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

#include "textscope/viz.h"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include "textscope/error.h"
#include "textscope/log.h"
#include "textscope/random.h"

namespace textscope {
namespace {

// Helvetica advance widths in 1/1000 em.
constexpr std::array<int, 26> kLowerWidths = {
    556, 556, 500, 556, 556, 278, 556, 556, 222, 222, 500, 222, 833,
    556, 556, 556, 556, 333, 500, 278, 556, 500, 722, 500, 500, 500};
constexpr std::array<int, 26> kUpperWidths = {
    667, 667, 722, 722, 667, 611, 778, 722, 278, 500, 667, 556, 833,
    722, 778, 667, 778, 722, 667, 611, 722, 667, 944, 667, 667, 611};
constexpr int kDigitWidth = 556;
constexpr int kUnderscoreWidth = 556;
constexpr int kOtherAsciiWidth = 500;
constexpr int kNonAsciiWidth = 600;
constexpr int kWideWidth = 1000;

constexpr double kSpiralStep = 0.1;     // radians per step
constexpr double kSpiralSpacing = 0.5;  // pixels of radius per radian
constexpr double kBoxPadding = 1.0;     // pixels kept free around a word

std::string Fixed(double v) { return fmt::format("{:.2f}", v); }

// "--" may not appear inside an XML comment.
std::string CommentSafe(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '-' && !out.empty() && out.back() == '-') out.push_back(' ');
    out.push_back(c);
  }
  if (!out.empty() && out.back() == '-') out.push_back(' ');
  return out;
}

void SortEntries(std::vector<CloudEntry>& entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const CloudEntry& a, const CloudEntry& b) {
                     const double ma = std::abs(a.score);
                     const double mb = std::abs(b.score);
                     if (ma != mb) return ma > mb;
                     return a.term < b.term;
                   });
}

}  // namespace

WordCloudSpec MakeCloudSpec(const ScoreTable& table, std::size_t max_words,
                            std::uint64_t seed) {
  WordCloudSpec spec;
  spec.max_words = max_words;
  spec.seed = seed;
  for (const auto& [term, score] : table.scores) {
    if (score == 0.0) continue;
    spec.entries.push_back(
        {term, score, score > 0.0 ? Sign::kPositive : Sign::kNegative});
  }
  SortEntries(spec.entries);
  if (spec.entries.size() > max_words) spec.entries.resize(max_words);
  return spec;
}

WordCloudSpec MakeTwoSidedCloudSpec(const ScoreTable& up,
                                    const ScoreTable& down,
                                    std::size_t max_words, std::uint64_t seed) {
  WordCloudSpec spec;
  spec.max_words = max_words;
  spec.seed = seed;
  const std::size_t per_side = std::max<std::size_t>(max_words / 2, 1);
  auto take = [&](const ScoreTable& table, Sign sign) {
    for (const auto& [term, score] : TopK(table, per_side)) {
      if (score > 0.0) spec.entries.push_back({term, score, sign});
    }
  };
  take(up, Sign::kPositive);
  take(down, Sign::kNegative);
  SortEntries(spec.entries);
  if (spec.entries.size() > max_words) spec.entries.resize(max_words);
  return spec;
}

double TextWidth(std::string_view text, double font_size) {
  int units = 0;
  for (std::size_t i = 0; i < text.size();) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < 0x80) {
      if (c >= 'a' && c <= 'z') {
        units += kLowerWidths[c - 'a'];
      } else if (c >= 'A' && c <= 'Z') {
        units += kUpperWidths[c - 'A'];
      } else if (c >= '0' && c <= '9') {
        units += kDigitWidth;
      } else if (c == '_') {
        units += kUnderscoreWidth;
      } else {
        units += kOtherAsciiWidth;
      }
      ++i;
      continue;
    }
    // Count one advance per UTF-8 sequence; 3- and 4-byte sequences are
    // mostly CJK and drawn full width.
    std::size_t len = 1;
    if ((c & 0xE0) == 0xC0)
      len = 2;
    else if ((c & 0xF0) == 0xE0)
      len = 3;
    else if ((c & 0xF8) == 0xF0)
      len = 4;
    units += len >= 3 ? kWideWidth : kNonAsciiWidth;
    i += len;
  }
  return font_size * units / 1000.0;
}

double FontSize(double score, double max_score, double min_font,
                double max_font) {
  if (max_score <= 0.0) return min_font;
  const double ratio = std::clamp(std::abs(score) / max_score, 0.0, 1.0);
  return min_font + (max_font - min_font) * std::sqrt(ratio);
}

CloudLayout LayoutCloud(const WordCloudSpec& spec) {
  std::vector<CloudEntry> entries;
  for (const CloudEntry& e : spec.entries) {
    if (e.score != 0.0 && std::isfinite(e.score)) entries.push_back(e);
  }
  if (entries.empty()) throw Error("nothing to draw");
  SortEntries(entries);
  if (entries.size() > spec.max_words) entries.resize(spec.max_words);

  const double max_score = std::abs(entries.front().score);
  const double cx = spec.width / 2.0;
  const double cy = spec.height / 2.0;
  const double aspect = spec.height > 0.0 ? spec.width / spec.height : 1.0;

  CloudLayout layout;
  layout.width = spec.width;
  layout.height = spec.height;
  Rng rng(spec.seed);
  for (const CloudEntry& e : entries) {
    const double font =
        FontSize(e.score, max_score, spec.min_font, spec.max_font);
    const double w = TextWidth(e.term, font);
    const double h = font * kLineHeight;
    const double phase = rng.UniformReal() * 2.0 * std::numbers::pi;

    bool placed = false;
    for (int step = 0; step < kMaxSpiralSteps && !placed; ++step) {
      const double theta = step * kSpiralStep;
      const double r = kSpiralSpacing * theta;
      const double x = cx + r * std::cos(theta + phase) * aspect - w / 2.0;
      const double y = cy + r * std::sin(theta + phase) - h / 2.0;
      if (x < 0.0 || y < 0.0 || x + w > spec.width || y + h > spec.height) {
        continue;
      }
      const Box padded{x - kBoxPadding, y - kBoxPadding, w + 2 * kBoxPadding,
                       h + 2 * kBoxPadding};
      const bool collides = std::any_of(
          layout.words.begin(), layout.words.end(),
          [&](const PlacedWord& p) { return p.box.Intersects(padded); });
      if (collides) continue;
      layout.words.push_back({e, font, Box{x, y, w, h}});
      placed = true;
    }
    if (!placed) {
      log::Warn("word cloud: no room for '{}', dropped", e.term);
      layout.dropped.push_back(e.term);
    }
  }
  return layout;
}

std::string EscapeXml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&#39;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string RenderSvg(const CloudLayout& layout, const CloudMetadata& meta) {
  std::string out;
  auto it = std::back_inserter(out);
  out +=
      "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      "<!DOCTYPE svg PUBLIC \"-//W3C//DTD SVG 1.1//EN\" "
      "\"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd\">\n";
  fmt::format_to(it,
                 "<!-- textscope word cloud; class: {}; method: {}; "
                 "seed: {}; words: {} -->\n",
                 CommentSafe(meta.class_name), CommentSafe(meta.method),
                 meta.seed, layout.words.size());
  fmt::format_to(it,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                 "width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
                 Fixed(layout.width), Fixed(layout.height));
  fmt::format_to(it, "<title>{} ({})</title>\n", EscapeXml(meta.class_name),
                 EscapeXml(meta.method));
  out +=
      "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" "
      "fill=\"#ffffff\"/>\n";
  out += "<g font-family=\"Helvetica, Arial, sans-serif\">\n";
  for (const PlacedWord& p : layout.words) {
    fmt::format_to(
        it,
        "<text x=\"{}\" y=\"{}\" font-size=\"{}\" textLength=\"{}\" "
        "lengthAdjust=\"spacingAndGlyphs\" fill=\"{}\">{}</text>\n",
        Fixed(p.box.x), Fixed(p.box.y + kAscent * p.font_size),
        Fixed(p.font_size), Fixed(p.box.width),
        p.entry.sign == Sign::kPositive ? kPositiveColor : kNegativeColor,
        EscapeXml(p.entry.term));
  }
  out += "</g>\n</svg>\n";
  return out;
}

HighlightDoc LrpHighlight(const TokenizedDoc& doc, const LinearModel& model,
                          const std::string& class_name,
                          const Vocabulary& vocab) {
  if (doc.tokens.empty()) {
    throw Error("document '" + doc.id + "' has no tokens to highlight");
  }
  model.CheckVocabulary(vocab);
  auto c = model.ClassIndex(class_name);
  if (!c) throw Error("unknown class '" + class_name + "'");

  const FeatureVector x = Vectorize(doc, vocab);
  std::map<std::string_view, int> occurrences;
  for (const std::string& t : doc.tokens) ++occurrences[t];
  const std::vector<double>& w = model.weights()[*c];
  const double bias_share =
      model.biases()[*c] / static_cast<double>(doc.tokens.size());

  HighlightDoc out{doc.id, class_name, Method::kLrp, doc.tokens, {}};
  out.relevance.reserve(doc.tokens.size());
  for (const std::string& t : doc.tokens) {
    double r = bias_share;
    if (auto i = vocab.Find(t)) r += w[*i] * x.Get(*i) / occurrences[t];
    out.relevance.push_back(r);
  }
  return out;
}

HighlightDoc TfidfHighlight(const TokenizedDoc& doc, const Vocabulary& vocab) {
  if (doc.tokens.empty()) {
    throw Error("document '" + doc.id + "' has no tokens to highlight");
  }
  const FeatureVector x = Vectorize(doc, vocab);
  std::map<std::string_view, int> occurrences;
  for (const std::string& t : doc.tokens) ++occurrences[t];
  HighlightDoc out{doc.id, "", Method::kTfidfSum, doc.tokens, {}};
  for (const std::string& t : doc.tokens) {
    auto i = vocab.Find(t);
    out.relevance.push_back(i ? x.Get(*i) / occurrences[t] : 0.0);
  }
  return out;
}

std::string RenderHighlightHtml(const HighlightDoc& doc) {
  if (doc.tokens.size() != doc.relevance.size()) {
    throw Error("highlight: token and relevance counts differ");
  }
  double max_abs = 0.0;
  double total = 0.0;
  for (double r : doc.relevance) {
    max_abs = std::max(max_abs, std::abs(r));
    total += r;
  }
  const std::string title =
      doc.method == Method::kLrp
          ? fmt::format("{} &middot; class {} &middot; LRP",
                        EscapeXml(doc.doc_id), EscapeXml(doc.class_name))
          : fmt::format("{} &middot; tf-idf", EscapeXml(doc.doc_id));

  std::string out;
  auto it = std::back_inserter(out);
  out +=
      "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  fmt::format_to(it, "<title>{}</title>\n", title);
  out +=
      "<style>\n"
      "body { font-family: Helvetica, Arial, sans-serif; max-width: 48em; "
      "margin: 2em auto; line-height: 1.9; }\n"
      "h1 { font-size: 1.1em; }\n"
      ".meta { color: #555; font-size: 0.9em; }\n"
      ".tok { padding: 0.1em 0.15em; border-radius: 0.2em; }\n"
      "</style>\n</head>\n<body>\n";
  fmt::format_to(it, "<h1>{}</h1>\n", title);
  fmt::format_to(it,
                 "<p class=\"meta\">tokens: {}; sum of relevances: {:.6g}; "
                 "max |relevance|: {:.6g}</p>\n<p>\n",
                 doc.tokens.size(), total, max_abs);
  for (std::size_t k = 0; k < doc.tokens.size(); ++k) {
    const double r = doc.relevance[k];
    const double alpha = max_abs > 0.0 ? std::abs(r) / max_abs : 0.0;
    const char* rgb = "214,39,40";  // positive relevance
    if (doc.method != Method::kLrp) {
      rgb = "44,127,184";
    } else if (r < 0.0) {
      rgb = "33,102,172";
    }
    fmt::format_to(it,
                   "<span class=\"tok\" title=\"{:.6g}\" "
                   "style=\"background-color: rgba({},{:.3f})\">{}</span>\n",
                   r, rgb, alpha, EscapeXml(doc.tokens[k]));
  }
  out += "</p>\n</body>\n</html>\n";
  return out;
}

std::string HighlightHtml(const TokenizedDoc& doc, const LinearModel& model,
                          const std::string& class_name,
                          const Vocabulary& vocab) {
  return RenderHighlightHtml(LrpHighlight(doc, model, class_name, vocab));
}

}  // namespace textscope
