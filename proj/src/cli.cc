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

#include "textscope/cli.h"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "textscope/classify.h"
#include "textscope/cluster.h"
#include "textscope/error.h"
#include "textscope/log.h"
#include "textscope/preprocess.h"
#include "textscope/random.h"
#include "textscope/vectorize.h"
#include "textscope/viz.h"

namespace textscope {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kManifestName = "run_manifest.json";
constexpr int kManifestVersion = 1;

void WriteFile(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("cannot write '" + path.string() + "'");
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void PrepareOutDir(const fs::path& out) {
  if (out.empty()) throw Error("an output directory (--out) is required");
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    throw Error("cannot create output directory '" + out.string() + "'");
  }
}

void WriteManifest(const RunConfig& config, const fs::path& dir) {
  json j;
  j["tool"] = "textscope";
  j["version"] = kVersion;
  j["manifest_version"] = kManifestVersion;
  j["config"] = json::parse(ConfigToJson(config));
  WriteFile(dir / kManifestName, j.dump(2) + "\n");
}

// Tokenized documents plus the bigram table they were joined with.
struct Prepared {
  std::vector<TokenizedDoc> docs;
  std::optional<BigramTable> bigrams;
};

Prepared Preprocess(std::vector<TokenizedDoc> docs, const RunConfig& config) {
  Prepared p;
  if (config.bigrams) {
    p.bigrams = ScoreBigrams(docs);
    docs = JoinBigrams(docs, *p.bigrams, config.bigram_threshold);
  }
  p.docs = std::move(docs);
  return p;
}

std::vector<TokenizedDoc> TokenizeDocs(
    const std::vector<const Document*>& docs) {
  std::vector<TokenizedDoc> out;
  out.reserve(docs.size());
  for (const Document* d : docs) out.push_back({d->id, Tokenize(d->text)});
  return out;
}

// Drops token-less documents (after joining) and reports how many.
template <typename Extra>
void DropEmpty(std::vector<TokenizedDoc>& docs, std::vector<Extra>& extra,
               std::ostream& console) {
  std::size_t kept = 0;
  for (std::size_t k = 0; k < docs.size(); ++k) {
    if (docs[k].tokens.empty()) continue;
    if (kept != k) {
      docs[kept] = std::move(docs[k]);
      extra[kept] = std::move(extra[k]);
    }
    ++kept;
  }
  if (kept != docs.size()) {
    fmt::print(console, "skipped {} empty document(s)\n", docs.size() - kept);
  }
  docs.resize(kept);
  extra.resize(kept);
}

void WriteTableAndCloud(const ScoreTable& table, const RunConfig& config,
                        const fs::path& stem) {
  WriteFile(fs::path(stem.string() + ".json"), ScoreTableJson(table) + "\n");
  const WordCloudSpec spec = MakeCloudSpec(table, config.top_k, config.seed);
  if (spec.entries.empty()) {
    throw Error(
        fmt::format("class '{}' has no nonzero {} scores; nothing to "
                    "draw",
                    table.class_name, MethodName(table.method)));
  }
  const CloudLayout layout = LayoutCloud(spec);
  WriteFile(fs::path(stem.string() + ".svg"),
            RenderSvg(layout, {table.class_name, MethodName(table.method),
                               config.seed}));
}

bool Wants(const RunConfig& config, Method m) {
  return std::find(config.scorers.begin(), config.scorers.end(), m) !=
         config.scorers.end();
}

// Stratified split: per class (sorted), floor(fraction * n) documents are
// held out, always leaving at least one for training.
void SplitIndices(const std::vector<std::string>& labels, double fraction,
                  std::uint64_t seed, std::vector<std::size_t>& train,
                  std::vector<std::size_t>& test) {
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t k = 0; k < labels.size(); ++k)
    by_class[labels[k]].push_back(k);
  Rng rng(seed);
  for (auto& [label, idx] : by_class) {
    rng.Shuffle(std::span(idx));
    std::size_t n_test =
        static_cast<std::size_t>(fraction * static_cast<double>(idx.size()));
    n_test = std::min(n_test, idx.size() - 1);
    test.insert(test.end(), idx.begin(), idx.begin() + n_test);
    train.insert(train.end(), idx.begin() + n_test, idx.end());
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
}

template <typename T>
std::vector<T> Pick(const std::vector<T>& items,
                    const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(items[i]);
  return out;
}

void CheckUniqueFileNames(const std::vector<std::string>& classes) {
  std::map<std::string, std::string> seen;
  for (const std::string& c : classes) {
    auto [it, inserted] = seen.emplace(SafeFileName(c), c);
    if (!inserted) {
      throw Error(fmt::format("classes '{}' and '{}' map to the same file name",
                              it->second, c));
    }
  }
}

}  // namespace

std::string SafeFileName(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    out.push_back(ok ? c : '_');
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

void RunConfig::Validate() const {
  if (!(bigram_threshold > 0.0 && bigram_threshold <= 1.0)) {
    throw Error("--bigram-threshold must be in (0, 1]");
  }
  if (!(split > 0.0 && split < 1.0)) throw Error("--split must be in (0, 1)");
  if (!(min_sim > 0.0 && min_sim < 1.0)) {
    throw Error("--min-sim must be in (0, 1)");
  }
  if (min_samples < 1) throw Error("--min-samples must be >= 1");
  if (components < 1) throw Error("--components must be >= 1");
  if (top_k < 1) throw Error("--top-k must be >= 1");
  if (scorers.empty()) throw Error("at least one --scorer is required");
  if (input.empty()) throw Error("an input path (--input) is required");
}

std::string ConfigToJson(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["input"] = c.input.generic_string();
  j["format"] = CorpusFormatName(c.format);
  j["bigrams"] = c.bigrams;
  j["bigram_threshold"] = c.bigram_threshold;
  json scorers = json::array();
  for (Method m : c.scorers) scorers.push_back(MethodName(m));
  j["scorers"] = scorers;
  j["top_k"] = c.top_k;
  j["min_sim"] = c.min_sim;
  j["min_samples"] = c.min_samples;
  j["components"] = c.components;
  j["split"] = c.split;
  j["seed"] = c.seed;
  j["out"] = c.out.generic_string();
  j["accuracy_floor"] = c.accuracy_floor;
  j["doc_id"] = c.doc_id;
  j["class_name"] = c.class_name;
  j["highlight_method"] = MethodName(c.highlight_method);
  j["group_a"] = c.group_a;
  j["group_b"] = c.group_b;
  j["calibrate"] = c.calibrate;
  return j.dump();
}

RunConfig ConfigFromJson(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.input = j.at("input").get<std::string>();
    c.format = ParseCorpusFormat(j.at("format").get<std::string>());
    c.bigrams = j.at("bigrams").get<bool>();
    c.bigram_threshold = j.at("bigram_threshold").get<double>();
    c.scorers.clear();
    for (const auto& s : j.at("scorers")) {
      c.scorers.push_back(ParseMethod(s.get<std::string>()));
    }
    c.top_k = j.at("top_k").get<std::size_t>();
    c.min_sim = j.at("min_sim").get<double>();
    c.min_samples = j.at("min_samples").get<std::size_t>();
    c.components = j.at("components").get<std::size_t>();
    c.split = j.at("split").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.out = j.at("out").get<std::string>();
    c.accuracy_floor = j.value("accuracy_floor", 0.6);
    c.doc_id = j.value("doc_id", "");
    c.class_name = j.value("class_name", "");
    c.highlight_method = ParseMethod(j.value("highlight_method", "lrp"));
    c.group_a = j.value("group_a", "");
    c.group_b = j.value("group_b", "");
    c.calibrate = j.value("calibrate", false);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed run configuration: ") + e.what());
  }
}

RunConfig LoadManifest(const fs::path& path) {
  try {
    const auto j = nlohmann::json::parse(ReadFile(path));
    return ConfigFromJson(j.at("config").dump());
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed manifest '" + path.string() + "': " + e.what());
  }
}

DocFilter DocFilter::Parse(const std::string& expression) {
  DocFilter f;
  f.expression_ = expression;
  const std::size_t eq = expression.find('=');
  if (eq == std::string::npos) {
    throw Error("bad document filter '" + expression +
                "' (expected label=, date=, id-prefix= or meta.KEY=)");
  }
  const std::string kind = expression.substr(0, eq);
  f.value_ = expression.substr(eq + 1);
  if (kind == "label") {
    f.kind_ = Kind::kLabel;
  } else if (kind == "id-prefix") {
    f.kind_ = Kind::kIdPrefix;
  } else if (kind == "date") {
    f.kind_ = Kind::kDate;
    const std::size_t dots = f.value_.find("..");
    if (dots == std::string::npos) {
      f.from_ = f.to_ = f.value_;
    } else {
      f.from_ = f.value_.substr(0, dots);
      f.to_ = f.value_.substr(dots + 2);
    }
    if (f.from_.empty() && f.to_.empty()) {
      throw Error("date filter '" + expression + "' has no bounds");
    }
  } else if (kind.starts_with("meta.") && kind.size() > 5) {
    f.kind_ = Kind::kMeta;
    f.key_ = kind.substr(5);
  } else {
    throw Error("unknown document filter '" + kind + "'");
  }
  return f;
}

bool DocFilter::Matches(const Document& doc) const {
  switch (kind_) {
    case Kind::kLabel:
      return doc.label && *doc.label == value_;
    case Kind::kIdPrefix:
      return doc.id.starts_with(value_);
    case Kind::kMeta: {
      auto it = doc.metadata.find(key_);
      return it != doc.metadata.end() && it->second == value_;
    }
    case Kind::kDate: {
      auto it = doc.metadata.find("pub_date");
      if (it == doc.metadata.end()) it = doc.metadata.find("date");
      if (it == doc.metadata.end() || it->second.empty()) return false;
      const std::string& date = it->second;
      if (!from_.empty() && date.compare(0, from_.size(), from_) < 0) {
        return false;
      }
      if (!to_.empty() && date.compare(0, to_.size(), to_) > 0) return false;
      return true;
    }
  }
  return false;
}

int CmdAnalyze(const RunConfig& config, std::ostream& console) {
  config.Validate();
  const Corpus corpus = LoadCorpus(config.input, config.format);
  if (!corpus.labeled()) {
    throw Error(
        "corpus has no class labels; use `textscope cluster` for "
        "unlabeled corpora");
  }
  std::vector<const Document*> labeled;
  std::vector<std::string> labels;
  for (const Document& d : corpus.documents()) {
    if (!d.label) continue;
    labeled.push_back(&d);
    labels.push_back(*d.label);
  }
  if (labeled.size() != corpus.size()) {
    fmt::print(console, "skipped {} unlabeled document(s)\n",
               corpus.size() - labeled.size());
  }
  if (corpus.label_set().size() < 2) {
    throw Error("need >= 2 classes, corpus has " +
                std::to_string(corpus.label_set().size()));
  }
  PrepareOutDir(config.out);

  Prepared prepared = Preprocess(TokenizeDocs(labeled), config);
  DropEmpty(prepared.docs, labels, console);
  std::vector<TokenizedDoc>& docs = prepared.docs;
  if (prepared.bigrams) {
    WriteFile(config.out / "bigrams.tsv", FormatBigramTsv(*prepared.bigrams));
  }

  const Vocabulary vocab = BuildVocabulary(docs);
  WriteFile(config.out / "vocabulary.tsv", FormatVocabularyTsv(vocab));
  const std::vector<FeatureVector> vectors = Vectorize(docs, vocab);
  fmt::print(console, "documents: {}, classes: {}, terms: {}\n", docs.size(),
             std::set<std::string>(labels.begin(), labels.end()).size(),
             vocab.size());

  const auto vector_groups = GroupByLabel<FeatureVector>(vectors, labels);
  const auto token_groups = GroupByLabel<TokenizedDoc>(docs, labels);
  if (vector_groups.classes.size() < 2) {
    throw Error("need >= 2 non-empty classes");
  }
  CheckUniqueFileNames(vector_groups.classes);

  std::optional<LinearModel> model;
  if (Wants(config, Method::kLrp)) {
    std::vector<std::size_t> train_idx, test_idx;
    SplitIndices(labels, config.split, config.seed, train_idx, test_idx);
    TrainConfig train_config;
    train_config.seed = config.seed;
    const auto train_labels = Pick(labels, train_idx);
    if (std::set<std::string>(train_labels.begin(), train_labels.end()).size() <
        2) {
      throw Error("training split has fewer than 2 classes");
    }
    model = Train(Pick(vectors, train_idx), train_labels, vocab, train_config);
    SaveModel(*model, config.out / "model.json");
    if (test_idx.empty()) {
      fmt::print(console, "held-out split is empty; accuracy not measured\n");
    } else {
      const double acc =
          Evaluate(*model, Pick(vectors, test_idx), Pick(labels, test_idx));
      fmt::print(console, "held-out accuracy: {:.4f} ({} documents)\n", acc,
                 test_idx.size());
      if (acc < config.accuracy_floor) {
        fmt::print(console,
                   "warning: accuracy below {:.2f}; LRP relevances of an "
                   "inaccurate classifier are not meaningful\n",
                   config.accuracy_floor);
      }
    }
  }

  std::vector<ScoreTable> distinctive;
  if (Wants(config, Method::kDistinctive)) {
    distinctive = DistinctiveAll(token_groups, DistinctiveConfig{});
  }
  std::size_t written = 0;
  for (std::size_t c = 0; c < vector_groups.classes.size(); ++c) {
    const std::string& cls = vector_groups.classes[c];
    const std::string stem = SafeFileName(cls);
    for (Method m : {Method::kTfidfSum, Method::kLrp, Method::kDistinctive}) {
      if (!Wants(config, m)) continue;
      ScoreTable table;
      switch (m) {
        case Method::kTfidfSum:
          table = TfidfSum(vector_groups, cls, vocab);
          break;
        case Method::kLrp:
          table = Lrp(vector_groups, *model, vocab, cls);
          break;
        case Method::kDistinctive:
          table = distinctive[c];
          break;
      }
      WriteTableAndCloud(table, config,
                         config.out / (stem + "_" + MethodName(m)));
      ++written;
    }
  }
  WriteManifest(config, config.out);
  fmt::print(console, "wrote {} score tables and word clouds to {}\n", written,
             config.out.string());
  return kExitOk;
}

int CmdCluster(const RunConfig& config, std::ostream& console) {
  config.Validate();
  const Corpus corpus = LoadCorpus(config.input, config.format);
  PrepareOutDir(config.out);
  std::vector<const Document*> all;
  for (const Document& d : corpus.documents()) all.push_back(&d);
  Prepared prepared = Preprocess(TokenizeDocs(all), config);
  std::vector<std::string> ids;
  for (const Document* d : all) ids.push_back(d->id);
  DropEmpty(prepared.docs, ids, console);
  const std::vector<TokenizedDoc>& docs = prepared.docs;
  if (docs.size() < 2)
    throw Error("clustering needs at least 2 non-empty documents");

  const Vocabulary vocab = BuildVocabulary(docs);
  const std::vector<FeatureVector> vectors = Vectorize(docs, vocab);
  const ReducedMatrix reduced = KernelPca(vectors, config.components);
  const ClusterAssignment assignment =
      Dbscan(reduced, 1.0 - config.min_sim, config.min_samples);

  std::map<std::string, int> cluster_of;
  for (std::size_t k = 0; k < docs.size(); ++k) {
    cluster_of[docs[k].id] = assignment.labels[k];
  }
  json out = json::array();
  for (const Document& d : corpus.documents()) {
    auto it = cluster_of.find(d.id);
    json entry;
    entry["id"] = d.id;
    if (it == cluster_of.end() || it->second == kNoise) {
      entry["cluster"] = "noise";
    } else {
      entry["cluster"] = it->second;
    }
    out.push_back(std::move(entry));
  }
  WriteFile(config.out / "clusters.json", out.dump(2) + "\n");
  const std::size_t noise =
      corpus.size() - (docs.size() - assignment.noise_count);
  fmt::print(
      console, "documents: {}, components: {}, clusters: {}, noise: {}\n",
      corpus.size(), reduced.component_count, assignment.cluster_count, noise);

  if (assignment.cluster_count < 2) {
    WriteManifest(config, config.out);
    fmt::print(console,
               "{}; only clusters.json was written (distinctive scoring "
               "needs at least 2 clusters)\n",
               assignment.cluster_count == 0 ? "no clusters found"
                                             : "only one cluster found");
    return kExitIncomplete;
  }

  ClassGroups<TokenizedDoc> groups;
  groups.members.resize(assignment.cluster_count);
  for (std::size_t c = 0; c < assignment.cluster_count; ++c) {
    groups.classes.push_back("cluster_" + std::to_string(c));
  }
  for (std::size_t k = 0; k < docs.size(); ++k) {
    if (assignment.labels[k] == kNoise) continue;
    groups.members[static_cast<std::size_t>(assignment.labels[k])].push_back(
        docs[k]);
  }
  const std::vector<ScoreTable> tables =
      DistinctiveAll(groups, DistinctiveConfig{});
  for (std::size_t c = 0; c < tables.size(); ++c) {
    WriteTableAndCloud(tables[c], config,
                       config.out / (groups.classes[c] + "_distinctive"));
    const auto top = TopK(tables[c], 5);
    std::string words;
    for (const auto& [term, score] : top)
      words += (words.empty() ? "" : ", ") + term;
    fmt::print(console, "{} ({} documents): {}\n", groups.classes[c],
               groups.members[c].size(), words);
  }
  WriteManifest(config, config.out);
  return kExitOk;
}

int CmdHighlight(const RunConfig& config, std::ostream& console) {
  config.Validate();
  if (config.doc_id.empty()) throw Error("--doc is required");
  if (config.out.empty()) {
    throw Error("--out must name the directory written by `analyze`");
  }
  const fs::path manifest_path = config.out / kManifestName;
  if (!fs::exists(manifest_path)) {
    throw Error("no " + std::string(kManifestName) + " in '" +
                config.out.string() + "'; run `textscope analyze` first");
  }
  const RunConfig analyzed = LoadManifest(manifest_path);
  const Vocabulary vocab =
      ParseVocabularyTsv(ReadFile(config.out / "vocabulary.tsv"));

  const Corpus corpus = LoadCorpus(config.input, config.format);
  const Document* doc = corpus.Find(config.doc_id);
  if (doc == nullptr)
    throw Error("unknown document id '" + config.doc_id + "'");
  TokenizedDoc tokens{doc->id, Tokenize(doc->text)};
  if (analyzed.bigrams) {
    const BigramTable table =
        ParseBigramTsv(ReadFile(config.out / "bigrams.tsv"));
    tokens = JoinBigrams(tokens, table, analyzed.bigram_threshold);
  }

  HighlightDoc highlight;
  std::string class_part;
  if (config.highlight_method == Method::kLrp) {
    const fs::path model_path = config.out / "model.json";
    if (!fs::exists(model_path)) {
      throw Error("no saved model in '" + config.out.string() +
                  "'; run `textscope analyze` with the lrp scorer first");
    }
    const LinearModel model = LoadModel(model_path);
    if (config.class_name.empty()) throw Error("--class is required for lrp");
    if (!model.ClassIndex(config.class_name)) {
      throw Error("unknown class '" + config.class_name + "'");
    }
    highlight = LrpHighlight(tokens, model, config.class_name, vocab);
    class_part = "_" + SafeFileName(config.class_name);
  } else if (config.highlight_method == Method::kTfidfSum) {
    if (!config.class_name.empty()) {
      const auto& ls = corpus.label_set();
      if (std::find(ls.begin(), ls.end(), config.class_name) == ls.end()) {
        throw Error("unknown class '" + config.class_name + "'");
      }
    }
    highlight = TfidfHighlight(tokens, vocab);
    highlight.class_name = config.class_name;
  } else {
    throw Error("highlight supports the lrp and tfidf methods");
  }

  const fs::path dir = config.out / "highlight";
  PrepareOutDir(dir);
  const fs::path file = dir / (SafeFileName(doc->id) + class_part + "_" +
                               MethodName(config.highlight_method) + ".html");
  WriteFile(file, RenderHighlightHtml(highlight));
  WriteManifest(config, dir);
  fmt::print(console, "wrote {}\n", file.string());
  return kExitOk;
}

int CmdCompare(const RunConfig& config, std::ostream& console) {
  config.Validate();
  const DocFilter filter_a = DocFilter::Parse(config.group_a);
  const DocFilter filter_b = DocFilter::Parse(config.group_b);
  const Corpus corpus = LoadCorpus(config.input, config.format);

  std::vector<const Document*> selected;
  std::vector<std::string> group;
  std::size_t n_a = 0, n_b = 0, overlap = 0;
  for (const Document& d : corpus.documents()) {
    const bool a = filter_a.Matches(d);
    const bool b = filter_b.Matches(d);
    if (a && b) ++overlap;
    if (a) ++n_a;
    if (b) ++n_b;
    if (a != b) {
      selected.push_back(&d);
      group.push_back(a ? "group_a" : "group_b");
    }
  }
  if (overlap > 0) {
    throw Error(
        fmt::format("document groups overlap ({} documents match "
                    "both filters)",
                    overlap));
  }
  if (n_a == 0) throw Error("group A ('" + config.group_a + "') is empty");
  if (n_b == 0) throw Error("group B ('" + config.group_b + "') is empty");
  PrepareOutDir(config.out);

  Prepared prepared = Preprocess(TokenizeDocs(selected), config);
  const auto groups = GroupByLabel<TokenizedDoc>(prepared.docs, group);
  const std::vector<ScoreTable> tables =
      DistinctiveAll(groups, DistinctiveConfig{});
  for (const ScoreTable& t : tables) {
    WriteFile(config.out / ("compare_" + t.class_name + "_distinctive.json"),
              ScoreTableJson(t) + "\n");
  }
  fmt::print(console,
             "group A: {} documents ({}), group B: {} documents ({})\n", n_a,
             config.group_a, n_b, config.group_b);

  const WordCloudSpec spec =
      MakeTwoSidedCloudSpec(tables[0], tables[1], config.top_k, config.seed);
  if (spec.entries.empty()) {
    WriteManifest(config, config.out);
    fmt::print(console,
               "no distinctive words in either group; no cloud drawn\n");
    return kExitIncomplete;
  }
  const CloudLayout layout = LayoutCloud(spec);
  WriteFile(config.out / "compare.svg",
            RenderSvg(layout, {config.group_a + " vs " + config.group_b,
                               "distinctive", config.seed}));
  WriteManifest(config, config.out);
  return kExitOk;
}

int CmdBigrams(const RunConfig& config, std::ostream& console) {
  config.Validate();
  const Corpus corpus = LoadCorpus(config.input, config.format);
  const std::vector<TokenizedDoc> docs = TokenizeCorpus(corpus);
  std::string text;
  if (config.calibrate) {
    const CalibrationReport report = ShuffleCalibration(docs, config.seed);
    text = fmt::format(
        "# threshold\toriginal_fraction\tshuffled_fraction\t(seed {}, {} "
        "original and {} shuffled bigrams)\n",
        report.seed, report.original_bigrams, report.shuffled_bigrams);
    for (const CalibrationPoint& p : report.points) {
      fmt::format_to(std::back_inserter(text), "{}\t{:.6f}\t{:.6f}\n",
                     p.threshold, p.original_fraction, p.shuffled_fraction);
    }
  } else {
    text = FormatBigramTsv(ScoreBigrams(docs));
  }
  console << text;
  if (!config.out.empty()) {
    PrepareOutDir(config.out);
    WriteFile(config.out /
                  (config.calibrate ? "bigram_calibration.tsv" : "bigrams.tsv"),
              text);
    WriteManifest(config, config.out);
  }
  return kExitOk;
}

int RunCommand(const RunConfig& config, std::ostream& console) {
  try {
    if (config.command == "analyze") return CmdAnalyze(config, console);
    if (config.command == "cluster") return CmdCluster(config, console);
    if (config.command == "highlight") return CmdHighlight(config, console);
    if (config.command == "compare") return CmdCompare(config, console);
    if (config.command == "bigrams") return CmdBigrams(config, console);
    throw Error("unknown command '" + config.command + "'");
  } catch (const Error& e) {
    log::Err("{}", e.what());
    return kExitError;
  } catch (const std::filesystem::filesystem_error& e) {
    log::Err("{}", e.what());
    return kExitError;
  }
}

}  // namespace textscope
