// Copyright 2026 The qapipe Authors.
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

#include "qapipe/retrieval.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qapipe/errors.h"
#include "qapipe/extraction.h"

namespace qapipe {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::vector<RawDocument> load_corpus(const std::filesystem::path &path) {
  namespace fs = std::filesystem;
  std::vector<RawDocument> docs;
  if (fs::is_directory(path)) {
    for (const auto &entry : fs::directory_iterator(path)) {
      if (!entry.is_regular_file() || entry.path().extension() != ".txt") {
        continue;
      }
      docs.push_back(
          RawDocument{entry.path().stem().string(), read_file(entry.path())});
    }
    std::sort(docs.begin(), docs.end(),
              [](const RawDocument &a, const RawDocument &b) {
                return a.id < b.id;
              });
    return docs;
  }
  if (!fs::exists(path)) throw ConfigError("corpus not found: " + path.string());
  std::ifstream in(path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json obj = json::parse(line);
      docs.push_back(RawDocument{obj.at("id").get<std::string>(),
                                 obj.at("text").get<std::string>()});
    } catch (const json::exception &e) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": " +
                      e.what());
    }
  }
  return docs;
}

Document make_document(std::string id, std::string raw, const StopList &stops,
                       const Segmenter &segmenter) {
  Document doc;
  doc.id = std::move(id);
  doc.raw_text = std::move(raw);
  std::vector<Token> tokens = tokenize(normalize(doc.raw_text), segmenter);
  for (const Token &t : remove_stop_words(tokens, stops)) {
    ++doc.term_counts[t.stem];
  }
  return doc;
}

double tf_weight(int count) {
  return count > 0 ? 1.0 + std::log(static_cast<double>(count)) : 0.0;
}

Index Index::build(std::span<const Document> corpus) {
  if (corpus.empty()) throw EmptyCorpus();
  Index index;
  for (const Document &doc : corpus) {
    if (index.by_id_.count(doc.id)) throw DuplicateDocId(doc.id);
    auto d = static_cast<std::uint32_t>(index.ids_.size());
    index.by_id_[doc.id] = d;
    index.ids_.push_back(doc.id);
    index.texts_.push_back(doc.raw_text);
    for (const auto &[term, count] : doc.term_counts) {
      if (count <= 0) continue;
      index.postings_[term].push_back(
          Posting{d, static_cast<std::uint32_t>(count)});
    }
  }
  index.finish();
  return index;
}

void Index::finish() {
  std::vector<double> sq(ids_.size(), 0.0);
  for (const auto &[term, list] : postings_) {
    double w_idf = idf(term);
    for (const Posting &p : list) {
      double w = tf_weight(static_cast<int>(p.tf)) * w_idf;
      sq[p.doc] += w * w;
    }
  }
  norms_.resize(ids_.size());
  for (std::size_t d = 0; d < ids_.size(); ++d) norms_[d] = std::sqrt(sq[d]);
}

double Index::idf(const std::string &term) const {
  auto it = postings_.find(term);
  if (it == postings_.end() || it->second.empty()) return 0.0;
  return std::log(static_cast<double>(ids_.size()) /
                  static_cast<double>(it->second.size()));
}

const std::vector<Posting> *Index::postings(const std::string &term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? nullptr : &it->second;
}

std::vector<std::string> Index::vocabulary() const {
  std::vector<std::string> out;
  for (const auto &[term, list] : postings_) out.push_back(term);
  return out;
}

const std::string *Index::find_text(const std::string &id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &texts_[it->second];
}

std::string Index::to_json_text() const {
  json doc;
  doc["version"] = kVersion;
  doc["N"] = ids_.size();
  json docs = json::array();
  for (std::size_t d = 0; d < ids_.size(); ++d) {
    docs.push_back({{"id", ids_[d]}, {"text", texts_[d]}});
  }
  doc["docs"] = docs;
  json postings = json::object();
  for (const auto &[term, list] : postings_) {
    json entries = json::array();
    for (const Posting &p : list) entries.push_back({ids_[p.doc], p.tf});
    postings[term] = entries;
  }
  doc["postings"] = postings;
  json norms = json::object();
  for (std::size_t d = 0; d < ids_.size(); ++d) norms[ids_[d]] = norms_[d];
  doc["norms"] = norms;
  return doc.dump() + "\n";
}

void Index::save(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write index: " + path.string());
  out << to_json_text();
}

Index Index::from_json_text(std::string_view text, const std::string &source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw DataError(source + ": malformed index file: " + e.what());
  }
  try {
    if (doc.value("version", 0) != kVersion) {
      throw DataError(source + ": unsupported index version");
    }
    Index index;
    for (const auto &d : doc.at("docs")) {
      std::string id = d.at("id").get<std::string>();
      if (index.by_id_.count(id)) throw DuplicateDocId(id);
      index.by_id_[id] = index.ids_.size();
      index.ids_.push_back(id);
      index.texts_.push_back(d.at("text").get<std::string>());
    }
    if (index.ids_.empty()) throw EmptyCorpus();
    if (doc.at("N").get<std::size_t>() != index.ids_.size()) {
      throw DataError(source + ": N does not match document count");
    }
    for (const auto &[term, entries] : doc.at("postings").items()) {
      auto &list = index.postings_[term];
      for (const auto &e : entries) {
        auto it = index.by_id_.find(e.at(0).get<std::string>());
        if (it == index.by_id_.end()) {
          throw DataError(source + ": posting for unknown document in '" +
                          term + "'");
        }
        list.push_back(Posting{static_cast<std::uint32_t>(it->second),
                               e.at(1).get<std::uint32_t>()});
      }
    }
    index.finish();
    return index;
  } catch (const json::exception &e) {
    throw DataError(source + ": malformed index file: " + e.what());
  }
}

Index Index::load(const std::filesystem::path &path) {
  return from_json_text(read_file(path), path.string());
}

std::vector<ScoredDoc> retrieve(const Index &index, const ExpandedQuery &query,
                                std::size_t k) {
  if (k == 0) throw ConfigError("k must be >= 1");
  std::vector<double> dot(index.doc_count(), 0.0);
  double q_sq = 0.0;
  for (const QueryTerm &qt : query.terms) {
    const auto *list = index.postings(qt.term);
    if (list == nullptr) continue;
    double idf = index.idf(qt.term);
    double q = qt.weight * idf;
    if (q == 0.0) continue;
    q_sq += q * q;
    for (const Posting &p : *list) {
      dot[p.doc] += q * tf_weight(static_cast<int>(p.tf)) * idf;
    }
  }
  std::vector<ScoredDoc> scored;
  if (q_sq == 0.0) return scored;
  double q_norm = std::sqrt(q_sq);
  for (std::size_t d = 0; d < index.doc_count(); ++d) {
    if (dot[d] <= 0.0 || index.norm(d) == 0.0) continue;
    scored.push_back(ScoredDoc{index.doc_id(d), dot[d] / (q_norm * index.norm(d))});
  }
  std::sort(scored.begin(), scored.end(),
            [](const ScoredDoc &a, const ScoredDoc &b) {
              if (a.score != b.score) return a.score > b.score;
              return a.id < b.id;
            });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

std::vector<Passage> select_passages(const Index &index,
                                     std::span<const ScoredDoc> ranked,
                                     std::size_t m) {
  if (m == 0) throw ConfigError("m must be >= 1");
  std::vector<Passage> out;
  for (std::size_t i = 0; i < ranked.size() && i < m; ++i) {
    const std::string *text = index.find_text(ranked[i].id);
    if (text == nullptr) continue;
    for (const auto &s : segment_sentences(normalize(*text), ranked[i].id)) {
      out.push_back(Passage{s.doc_id, s.index, s.text});
    }
  }
  return out;
}

}  // namespace qapipe
