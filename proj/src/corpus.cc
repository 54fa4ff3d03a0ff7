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

#include "textscope/corpus.h"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "textscope/error.h"

namespace textscope {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("error while reading '" + path.string() + "'");
  return buf.str();
}

bool IsHidden(const fs::path& p) {
  const std::string name = p.filename().string();
  return !name.empty() && name[0] == '.';
}

bool IsTxt(const fs::directory_entry& e) {
  return e.is_regular_file() && e.path().extension() == ".txt" &&
         !IsHidden(e.path());
}

std::optional<std::string> OptString(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

Corpus::Corpus(std::vector<Document> documents)
    : documents_(std::move(documents)) {
  std::sort(documents_.begin(), documents_.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < documents_.size(); ++i) {
    if (documents_[i].id == documents_[i - 1].id) {
      throw Error("duplicate document id '" + documents_[i].id + "'");
    }
  }
  std::set<std::string> labels;
  for (const Document& d : documents_) {
    if (d.label) labels.insert(*d.label);
  }
  label_set_.assign(labels.begin(), labels.end());
}

const Document* Corpus::Find(const std::string& id) const {
  auto it = std::lower_bound(
      documents_.begin(), documents_.end(), id,
      [](const Document& d, const std::string& key) { return d.id < key; });
  if (it == documents_.end() || it->id != id) return nullptr;
  return &*it;
}

Corpus LoadDir(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) {
    throw Error("'" + path.string() + "' is not a directory");
  }
  std::vector<fs::path> loose;
  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (IsHidden(entry.path())) continue;
    if (entry.is_directory()) {
      class_dirs.push_back(entry.path());
    } else if (IsTxt(entry)) {
      loose.push_back(entry.path());
    }
  }
  if (!loose.empty() && !class_dirs.empty()) {
    throw Error("'" + path.string() +
                "' mixes loose .txt files with class subdirectories");
  }

  std::vector<Document> docs;
  for (const fs::path& file : loose) {
    docs.push_back({fs::relative(file, path).generic_string(),
                    ReadFile(file),
                    std::nullopt,
                    {}});
  }
  for (const fs::path& dir : class_dirs) {
    const std::string label = dir.filename().string();
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (!IsTxt(entry)) continue;
      docs.push_back({fs::relative(entry.path(), path).generic_string(),
                      ReadFile(entry.path()),
                      label,
                      {}});
    }
  }
  return Corpus(std::move(docs));
}

Corpus LoadJsonl(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path.string() + "'");
  std::vector<Document> docs;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where =
        path.string() + ":" + std::to_string(line_no) + ": ";
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(where + "malformed JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) throw Error(where + "expected a JSON object");
    Document doc;
    try {
      auto text = OptString(obj, "text");
      if (!text) throw Error("missing \"text\"");
      doc.text = std::move(*text);
      auto id = OptString(obj, "id");
      doc.id = id ? *id : std::to_string(line_no);
      doc.label = OptString(obj, "label");
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
    for (const auto& [key, value] : obj.items()) {
      if (key == "id" || key == "text" || key == "label") continue;
      if (value.is_string()) doc.metadata[key] = value.get<std::string>();
    }
    if (!seen.insert(doc.id).second) {
      throw Error(where + "duplicate id '" + doc.id + "'");
    }
    docs.push_back(std::move(doc));
  }
  if (in.bad()) throw Error("error while reading '" + path.string() + "'");
  return Corpus(std::move(docs));
}

Corpus LoadNytArchive(const fs::path& path) {
  json root;
  try {
    root = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw Error("'" + path.string() + "': parse error (" + e.what() + ")");
  }
  const json* docs_json = nullptr;
  if (root.is_object() && root.contains("response") &&
      root["response"].is_object() && root["response"].contains("docs") &&
      root["response"]["docs"].is_array()) {
    docs_json = &root["response"]["docs"];
  }
  if (docs_json == nullptr) {
    throw Error("'" + path.string() + "': missing response.docs array");
  }

  std::vector<Document> docs;
  std::size_t index = 0;
  for (const json& entry : *docs_json) {
    ++index;
    if (!entry.is_object()) {
      throw Error("'" + path.string() + "': response.docs[" +
                  std::to_string(index - 1) + "] is not an object");
    }
    auto string_at = [&](const char* key) -> std::string {
      auto it = entry.find(key);
      return it != entry.end() && it->is_string() ? it->get<std::string>()
                                                  : std::string();
    };
    std::string headline;
    if (auto it = entry.find("headline"); it != entry.end()) {
      if (it->is_string()) {
        headline = it->get<std::string>();
      } else if (it->is_object() && it->contains("main") &&
                 (*it)["main"].is_string()) {
        headline = (*it)["main"].get<std::string>();
      }
    }
    Document doc;
    doc.text = string_at("snippet");
    if (doc.text.empty()) doc.text = headline;
    doc.id = string_at("_id");
    if (doc.id.empty()) doc.id = string_at("web_url");
    if (doc.id.empty()) {
      std::string n = std::to_string(index);
      doc.id = "nyt-" + std::string(n.size() < 6 ? 6 - n.size() : 0, '0') + n;
    }
    doc.metadata["pub_date"] = string_at("pub_date");
    if (!headline.empty()) doc.metadata["headline"] = headline;
    docs.push_back(std::move(doc));
  }
  return Corpus(std::move(docs));
}

Corpus LoadCorpus(const fs::path& path, CorpusFormat format) {
  switch (format) {
    case CorpusFormat::kDirs:
      return LoadDir(path);
    case CorpusFormat::kJsonl:
      return LoadJsonl(path);
    case CorpusFormat::kNyt:
      return LoadNytArchive(path);
  }
  throw Error("unknown corpus format");
}

CorpusFormat ParseCorpusFormat(const std::string& name) {
  if (name == "dirs") return CorpusFormat::kDirs;
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "nyt") return CorpusFormat::kNyt;
  throw Error("unknown format '" + name + "' (expected dirs, jsonl or nyt)");
}

std::string CorpusFormatName(CorpusFormat format) {
  switch (format) {
    case CorpusFormat::kDirs:
      return "dirs";
    case CorpusFormat::kJsonl:
      return "jsonl";
    case CorpusFormat::kNyt:
      return "nyt";
  }
  return "?";
}

std::string SerializeCorpus(const Corpus& corpus) {
  json docs = json::array();
  for (const Document& d : corpus.documents()) {
    json j = {{"id", d.id}, {"text", d.text}};
    j["label"] = d.label ? json(*d.label) : json(nullptr);
    j["metadata"] = d.metadata;
    docs.push_back(std::move(j));
  }
  json root = {{"label_set", corpus.label_set()}, {"documents", docs}};
  return root.dump();
}

}  // namespace textscope
