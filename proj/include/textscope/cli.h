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

#ifndef TEXTSCOPE_CLI_H_
#define TEXTSCOPE_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "textscope/corpus.h"
#include "textscope/relevance.h"

namespace textscope {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitIncomplete = 2;  // ran, but some outputs were not
                                           // produced (e.g. no clusters)

struct RunConfig {
  std::string command;
  std::filesystem::path input;
  CorpusFormat format = CorpusFormat::kDirs;
  bool bigrams = false;
  double bigram_threshold = 0.1;
  std::vector<Method> scorers = {Method::kTfidfSum, Method::kLrp,
                                 Method::kDistinctive};
  std::size_t top_k = 50;
  double min_sim = 0.55;
  std::size_t min_samples = 3;
  std::size_t components = 250;
  double split = 0.2;
  std::uint64_t seed = 0;
  std::filesystem::path out;
  double accuracy_floor = 0.6;

  // highlight
  std::string doc_id;
  std::string class_name;
  Method highlight_method = Method::kLrp;

  // compare
  std::string group_a;
  std::string group_b;

  // bigrams
  bool calibrate = false;

  // Throws on out-of-range values.
  void Validate() const;
};

std::string ConfigToJson(const RunConfig& config);
RunConfig ConfigFromJson(std::string_view json_text);

// Reads the "config" object of a run_manifest.json.
RunConfig LoadManifest(const std::filesystem::path& path);

// Document selector for `compare`:
//   label=NAME          documents with this label
//   date=FROM..TO       pub_date/date metadata within [FROM, TO], compared on
//                       the leading characters; either bound may be empty
//   id-prefix=PREFIX    ids starting with PREFIX
//   meta.KEY=VALUE      metadata KEY equal to VALUE
class DocFilter {
 public:
  static DocFilter Parse(const std::string& expression);
  bool Matches(const Document& doc) const;
  const std::string& expression() const { return expression_; }

 private:
  enum class Kind { kLabel, kDate, kIdPrefix, kMeta };
  Kind kind_ = Kind::kLabel;
  std::string expression_;
  std::string key_;
  std::string value_;
  std::string from_;
  std::string to_;
};

// Labeled-corpus workflow: per class and scorer a ScoreTable JSON and a
// word cloud SVG, plus vocabulary.tsv, bigrams.tsv (with --bigrams),
// model.json (with lrp) and run_manifest.json.
int CmdAnalyze(const RunConfig& config, std::ostream& console);

// Unlabeled workflow: kernel PCA + DBSCAN, clusters.json, and distinctive
// tables and clouds per cluster.
int CmdCluster(const RunConfig& config, std::ostream& console);

// Heatmap of one document from an analyze output directory; written to
// <out>/highlight/.
int CmdHighlight(const RunConfig& config, std::ostream& console);

// Distinctive words of two document groups against each other.
int CmdCompare(const RunConfig& config, std::ostream& console);

// Bigram table as TSV (or the shuffle calibration report) on `log`.
int CmdBigrams(const RunConfig& config, std::ostream& console);

// Dispatches on config.command; library errors become kExitError.
int RunCommand(const RunConfig& config, std::ostream& console);

// File-name-safe form: [A-Za-z0-9._-] kept, everything else '_'.
std::string SafeFileName(const std::string& name);

}  // namespace textscope

#endif  // TEXTSCOPE_CLI_H_
