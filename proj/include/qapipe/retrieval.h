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

#ifndef QAPIPE_RETRIEVAL_H_
#define QAPIPE_RETRIEVAL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qapipe/expansion.h"
#include "qapipe/text.h"

namespace qapipe {

struct RawDocument {
  std::string id;
  std::string text;
};

// Reads a directory of *.txt files (file stem = id, sorted by id) or a JSONL
// file of {"id", "text"} objects.
std::vector<RawDocument> load_corpus(const std::filesystem::path &path);

struct Document {
  std::string id;
  std::string raw_text;
  std::map<std::string, int> term_counts;
};

// Stems of the content tokens of raw, same front end as questions.
Document make_document(std::string id, std::string raw, const StopList &stops,
                       const Segmenter &segmenter = Segmenter::Default());

struct Posting {
  std::uint32_t doc = 0;
  std::uint32_t tf = 0;
};

struct ScoredDoc {
  std::string id;
  double score = 0.0;
};

// Inverted index with tf = 1 + ln(count), idf = ln(N / df), cosine scoring.
class Index {
 public:
  static constexpr int kVersion = 1;

  // Throws EmptyCorpus, DuplicateDocId.
  static Index build(std::span<const Document> corpus);

  static Index load(const std::filesystem::path &path);
  static Index from_json_text(std::string_view text, const std::string &source);
  void save(const std::filesystem::path &path) const;
  std::string to_json_text() const;

  std::size_t doc_count() const { return ids_.size(); }
  const std::string &doc_id(std::size_t i) const { return ids_[i]; }
  const std::string &doc_text(std::size_t i) const { return texts_[i]; }
  const std::string *find_text(const std::string &id) const;

  double idf(const std::string &term) const;
  double norm(std::size_t doc) const { return norms_[doc]; }
  const std::vector<Posting> *postings(const std::string &term) const;
  std::vector<std::string> vocabulary() const;

 private:
  void finish();

  std::vector<std::string> ids_;
  std::vector<std::string> texts_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::map<std::string, std::vector<Posting>> postings_;
  std::vector<double> norms_;
};

double tf_weight(int count);

// Top-k documents by cosine between the weighted query (term weight x idf)
// and the document tf-idf vectors. Zero scores are dropped; ties go to the
// smaller doc id.
std::vector<ScoredDoc> retrieve(const Index &index, const ExpandedQuery &query,
                                std::size_t k);

struct Passage {
  std::string doc_id;
  std::size_t sentence = 0;
  std::string text;
};

// Sentences of the first m documents of ranked, in rank order then sentence
// order.
std::vector<Passage> select_passages(const Index &index,
                                     std::span<const ScoredDoc> ranked,
                                     std::size_t m);

}  // namespace qapipe

#endif  // QAPIPE_RETRIEVAL_H_
