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

#ifndef TEXTSCOPE_CORPUS_H_
#define TEXTSCOPE_CORPUS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace textscope {

struct Document {
  std::string id;
  std::string text;
  std::optional<std::string> label;
  // Extra string fields carried from the source (e.g. "pub_date").
  std::map<std::string, std::string> metadata;

  bool operator==(const Document&) const = default;
};

// Immutable, id-sorted collection of documents. Construction validates id
// uniqueness and derives the sorted set of distinct labels.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  const std::vector<std::string>& label_set() const { return label_set_; }
  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }
  bool labeled() const { return !label_set_.empty(); }

  // Returns nullptr when no document has this id.
  const Document* Find(const std::string& id) const;

 private:
  std::vector<Document> documents_;
  std::vector<std::string> label_set_;
};

// Directory layout: either loose .txt files (unlabeled) or one subdirectory
// of .txt files per class. Files with other extensions are ignored.
Corpus LoadDir(const std::filesystem::path& path);

// One JSON object per line: {"id": ..., "text": ..., "label": ...}. A
// missing id becomes the 1-based line number. Other string-valued keys are
// kept as metadata. Blank lines are skipped.
Corpus LoadJsonl(const std::filesystem::path& path);

// Local copy of a New York Times Archive API response. Text is the snippet,
// falling back to the headline; pub_date is kept as metadata.
Corpus LoadNytArchive(const std::filesystem::path& path);

enum class CorpusFormat { kDirs, kJsonl, kNyt };

Corpus LoadCorpus(const std::filesystem::path& path, CorpusFormat format);
CorpusFormat ParseCorpusFormat(const std::string& name);
std::string CorpusFormatName(CorpusFormat format);

// Canonical JSON serialization; equal corpora give identical bytes.
std::string SerializeCorpus(const Corpus& corpus);

}  // namespace textscope

#endif  // TEXTSCOPE_CORPUS_H_
