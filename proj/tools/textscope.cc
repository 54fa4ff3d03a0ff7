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

// textscope: relevant words per class or cluster of a text corpus.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "textscope/cli.h"
#include "textscope/error.h"
#include "textscope/log.h"

namespace {

using textscope::RunConfig;

struct Flags {
  std::string input;
  std::string format;
  bool bigrams = false;
  double bigram_threshold = 0.1;
  std::vector<std::string> scorers;
  std::size_t top_k = 50;
  double min_sim = 0.55;
  std::size_t min_samples = 3;
  std::size_t components = 250;
  double split = 0.2;
  std::uint64_t seed = 0;
  std::string out;
  double accuracy_floor = 0.6;
  std::string manifest;
  std::string doc_id;
  std::string class_name;
  std::string method = "lrp";
  std::string group_a;
  std::string group_b;
  bool calibrate = false;
};

void AddCommon(CLI::App* cmd, Flags& f) {
  cmd->add_option("--input", f.input, "Corpus directory or file");
  cmd->add_option("--format", f.format,
                  "Corpus format: dirs, jsonl or nyt (default: dirs for a "
                  "directory, jsonl for *.jsonl, nyt for *.json)");
  cmd->add_flag("--bigrams", f.bigrams, "Join detected bigrams into phrases");
  cmd->add_option("--bigram-threshold", f.bigram_threshold,
                  "Minimum bigram score for joining")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--manifest", f.manifest,
                  "Re-run from a run_manifest.json (--out overrides)");
}

textscope::CorpusFormat GuessFormat(const std::string& input,
                                    const std::string& format) {
  if (!format.empty()) return textscope::ParseCorpusFormat(format);
  const std::filesystem::path p(input);
  if (p.extension() == ".jsonl") return textscope::CorpusFormat::kJsonl;
  if (p.extension() == ".json") return textscope::CorpusFormat::kNyt;
  return textscope::CorpusFormat::kDirs;
}

RunConfig ToConfig(const std::string& command, const Flags& f) {
  if (!f.manifest.empty()) {
    RunConfig c = textscope::LoadManifest(f.manifest);
    if (c.command != command) {
      throw textscope::Error("manifest is for `" + c.command + "`, not `" +
                             command + "`");
    }
    if (!f.out.empty()) c.out = f.out;
    return c;
  }
  RunConfig c;
  c.command = command;
  c.input = f.input;
  c.format = GuessFormat(f.input, f.format);
  c.bigrams = f.bigrams;
  c.bigram_threshold = f.bigram_threshold;
  if (!f.scorers.empty()) {
    c.scorers.clear();
    for (const std::string& s : f.scorers) {
      if (s == "all") {
        c.scorers = {textscope::Method::kTfidfSum, textscope::Method::kLrp,
                     textscope::Method::kDistinctive};
        break;
      }
      const auto m = textscope::ParseMethod(s);
      if (std::find(c.scorers.begin(), c.scorers.end(), m) == c.scorers.end()) {
        c.scorers.push_back(m);
      }
    }
  }
  c.top_k = f.top_k;
  c.min_sim = f.min_sim;
  c.min_samples = f.min_samples;
  c.components = f.components;
  c.split = f.split;
  c.seed = f.seed;
  c.out = f.out;
  c.accuracy_floor = f.accuracy_floor;
  c.doc_id = f.doc_id;
  c.class_name = f.class_name;
  c.highlight_method = textscope::ParseMethod(f.method);
  c.group_a = f.group_a;
  c.group_b = f.group_b;
  c.calibrate = f.calibrate;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  textscope::log::InitFromEnv();

  CLI::App app{"textscope: relevant words per class or cluster of a corpus"};
  app.set_version_flag("--version", std::string(textscope::kVersion));
  app.require_subcommand(1);
  Flags f;

  auto* analyze = app.add_subcommand(
      "analyze",
      "Score and draw relevant words for each class of a labeled "
      "corpus");
  AddCommon(analyze, f);
  analyze
      ->add_option("--scorer", f.scorers,
                   "tfidf_sum, lrp, distinctive or all (comma separated)")
      ->delimiter(',');
  analyze->add_option("--top-k", f.top_k, "Words per cloud")
      ->capture_default_str();
  analyze->add_option("--split", f.split, "Held-out fraction for accuracy")
      ->capture_default_str();
  analyze
      ->add_option("--accuracy-floor", f.accuracy_floor,
                   "Warn when held-out accuracy is below this")
      ->capture_default_str();

  auto* cluster = app.add_subcommand(
      "cluster",
      "Cluster an unlabeled corpus and draw distinctive words per "
      "cluster");
  AddCommon(cluster, f);
  cluster
      ->add_option("--min-sim", f.min_sim,
                   "Minimum cosine similarity (eps = 1 - min_sim)")
      ->capture_default_str();
  cluster
      ->add_option("--min-samples", f.min_samples,
                   "Points needed for a core point")
      ->capture_default_str();
  cluster
      ->add_option("--components", f.components,
                   "Maximum kernel PCA components")
      ->capture_default_str();
  cluster->add_option("--top-k", f.top_k, "Words per cloud")
      ->capture_default_str();

  auto* highlight = app.add_subcommand(
      "highlight", "Heatmap of one document using the outputs of `analyze`");
  AddCommon(highlight, f);
  highlight->add_option("--doc", f.doc_id, "Document id");
  highlight->add_option("--class", f.class_name, "Class to explain (lrp)");
  highlight->add_option("--method", f.method, "lrp or tfidf")
      ->capture_default_str();

  auto* compare =
      app.add_subcommand("compare", "Distinctive words of two document groups");
  AddCommon(compare, f);
  compare->add_option("--group-a", f.group_a,
                      "Filter: label=NAME, date=FROM..TO, id-prefix=P, "
                      "meta.KEY=VALUE");
  compare->add_option("--group-b", f.group_b, "Filter for the second group");
  compare->add_option("--top-k", f.top_k, "Words in the cloud")
      ->capture_default_str();

  auto* bigrams = app.add_subcommand(
      "bigrams", "Print the bigram table (TSV) or the shuffle calibration");
  AddCommon(bigrams, f);
  bigrams->add_flag("--calibrate", f.calibrate,
                    "Compare score distributions against shuffled documents");

  CLI11_PARSE(app, argc, argv);

  std::string command;
  for (const auto* sub : {analyze, cluster, highlight, compare, bigrams}) {
    if (sub->parsed()) command = sub->get_name();
  }
  try {
    const RunConfig config = ToConfig(command, f);
    return textscope::RunCommand(config, std::cout);
  } catch (const textscope::Error& e) {
    textscope::log::Err("{}", e.what());
    return textscope::kExitError;
  }
}
