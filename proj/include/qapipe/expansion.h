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

#ifndef QAPIPE_EXPANSION_H_
#define QAPIPE_EXPANSION_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qapipe/tagger.h"

namespace qapipe {

// Headword -> synonyms, all normalized. Headwords are bare stems.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;

  // TSV: "headword TAB syn1,syn2,...", '#' comments. Duplicate headwords are
  // rejected with the offending line number.
  static SynonymLexicon load(const std::filesystem::path &path);
  static SynonymLexicon parse(std::istream &in, const std::string &source);

  void add(const std::string &headword, const std::vector<std::string> &syns);
  const std::vector<std::string> *find(const std::string &headword) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::string, std::vector<std::string>> entries_;
};

constexpr double kDefaultSynonymWeight = 0.5;

struct QueryTerm {
  std::string term;
  double weight = 1.0;
  // Empty for original terms; the source stem for synonyms.
  std::string synonym_of;

  bool is_original() const { return synonym_of.empty(); }
  friend bool operator==(const QueryTerm &, const QueryTerm &) = default;
};

struct ExpandedQuery {
  std::vector<QueryTerm> terms;

  const QueryTerm *find(const std::string &term) const;
};

// Originals are the stems of all content tokens at weight 1. Noun- and
// adjective-tagged stems add their lexicon synonyms (one hop) at syn_weight.
// A term seen twice keeps its larger weight.
ExpandedQuery expand(std::span<const TaggedToken> tagged,
                     const SynonymLexicon &lexicon,
                     double syn_weight = kDefaultSynonymWeight);

}  // namespace qapipe

#endif  // QAPIPE_EXPANSION_H_
