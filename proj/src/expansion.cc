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

#include "qapipe/expansion.h"

#include <fstream>
#include <istream>

#include "qapipe/errors.h"

namespace qapipe {

namespace {

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

SynonymLexicon SynonymLexicon::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon: " + path.string());
  return parse(in, path.string());
}

SynonymLexicon SynonymLexicon::parse(std::istream &in,
                                     const std::string &source) {
  SynonymLexicon lexicon;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line[0] == '#') continue;
    auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(where() + "expected 'headword<TAB>synonyms'");
    }
    std::string head = normalize_string(trim(line.substr(0, tab)));
    if (head.empty()) throw DataError(where() + "empty headword");
    std::vector<std::string> syns;
    std::string rest = line.substr(tab + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      auto comma = rest.find(',', pos);
      if (comma == std::string::npos) comma = rest.size();
      std::string syn = normalize_string(trim(rest.substr(pos, comma - pos)));
      if (!syn.empty() && syn != head) syns.push_back(syn);
      pos = comma + 1;
    }
    if (syns.empty()) throw DataError(where() + "no synonyms for " + head);
    if (lexicon.find(head) != nullptr) {
      throw DataError(where() + "duplicate headword " + head);
    }
    lexicon.add(head, syns);
  }
  return lexicon;
}

void SynonymLexicon::add(const std::string &headword,
                         const std::vector<std::string> &syns) {
  entries_[headword] = syns;
}

const std::vector<std::string> *SynonymLexicon::find(
    const std::string &headword) const {
  auto it = entries_.find(headword);
  return it == entries_.end() ? nullptr : &it->second;
}

const QueryTerm *ExpandedQuery::find(const std::string &term) const {
  for (const auto &t : terms) {
    if (t.term == term) return &t;
  }
  return nullptr;
}

ExpandedQuery expand(std::span<const TaggedToken> tagged,
                     const SynonymLexicon &lexicon, double syn_weight) {
  if (!(syn_weight > 0.0 && syn_weight <= 1.0)) {
    throw ConfigError("synonym weight must be in (0, 1]");
  }
  ExpandedQuery query;
  auto upsert = [&query](const std::string &term, double weight,
                         const std::string &source) {
    for (auto &t : query.terms) {
      if (t.term != term) continue;
      if (weight > t.weight) {
        t.weight = weight;
        t.synonym_of = source;
      }
      return;
    }
    query.terms.push_back(QueryTerm{term, weight, source});
  };

  for (const auto &t : tagged) upsert(t.token.stem, 1.0, "");
  for (const auto &t : tagged) {
    if (!is_noun(t.tag) && !is_adjective(t.tag)) continue;
    const auto *syns = lexicon.find(t.token.stem);
    if (syns == nullptr) continue;
    for (const auto &syn : *syns) upsert(syn, syn_weight, t.token.stem);
  }
  return query;
}

}  // namespace qapipe
