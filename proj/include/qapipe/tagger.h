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

#ifndef QAPIPE_TAGGER_H_
#define QAPIPE_TAGGER_H_

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qapipe/text.h"

namespace qapipe {

// Penn-Arabic style tags. DT-prefixed tags mark words carrying the article.
enum class PosTag {
  NN, NNS, NNP, DTNN, DTNNS, DTNNP, JJ, DTJJ, RB,
  VBD, VBP, VBN, IN, CC, WP, PRP, CD, PUNC, UNK,
};

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view name);
const std::vector<PosTag> &all_pos_tags();

bool is_noun(PosTag tag);
bool is_adjective(PosTag tag);
bool is_verb(PosTag tag);
bool is_definite(PosTag tag);

struct TaggedToken {
  Token token;
  PosTag tag = PosTag::UNK;

  friend bool operator==(const TaggedToken &, const TaggedToken &) = default;
};

// Contract for POS tagging: one tag per input token, in order.
class TaggerBackend {
 public:
  virtual ~TaggerBackend() = default;
  virtual std::vector<PosTag> tag(std::span<const Token> tokens) const = 0;
  virtual std::string name() const = 0;
};

// Closed-class and small open-class word tables for the heuristic tagger.
// All entries are normalized.
struct TaggerLexicon {
  std::unordered_set<std::string> interrogatives;  // also relative pronouns
  std::unordered_set<std::string> prepositions;
  std::unordered_set<std::string> conjunctions;
  std::unordered_set<std::string> pronouns;
  std::unordered_set<std::string> adverbs;
  std::unordered_set<std::string> number_words;
  std::unordered_set<std::string> adjectives;
  // Ordinals and superlatives that may precede their noun (أول أمريكي).
  std::unordered_set<std::string> prenominal_adjectives;
  // Known verbs with their tense tag (VBD or VBP).
  std::unordered_map<std::string, PosTag> verbs;

  static const TaggerLexicon &Default();
};

PosTag heuristic_tag_one(const Token &token, const TaggerLexicon &lexicon);

// Per-token cascade followed by one contextual pass: an adjective that has no
// noun to its left and does not precede one is re-tagged as a noun.
class HeuristicTagger : public TaggerBackend {
 public:
  HeuristicTagger() : lexicon_(&TaggerLexicon::Default()) {}
  explicit HeuristicTagger(const TaggerLexicon &lexicon) : lexicon_(&lexicon) {}

  std::vector<PosTag> tag(std::span<const Token> tokens) const override;
  std::string name() const override { return "heuristic"; }

 private:
  const TaggerLexicon *lexicon_;
};

// Replays tags read from a pre-tagged file ("surface TAB tag" lines, blank
// line between sentences). A sentence is found by its sequence of normalized
// surfaces. Unknown sentences go to the fallback backend if one is set and
// raise BackendFailure otherwise.
class PretaggedTagger : public TaggerBackend {
 public:
  static PretaggedTagger load(const std::filesystem::path &path);
  static PretaggedTagger parse(std::istream &in, const std::string &source);

  void set_fallback(std::shared_ptr<const TaggerBackend> fallback) {
    fallback_ = std::move(fallback);
  }
  std::size_t sentence_count() const { return sentences_.size(); }

  std::vector<PosTag> tag(std::span<const Token> tokens) const override;
  std::string name() const override { return "pretagged"; }

 private:
  std::unordered_map<std::string, std::vector<PosTag>> sentences_;
  std::shared_ptr<const TaggerBackend> fallback_;
};

// Runs the backend and checks its output: one tag per token, and DT tags
// only on words carrying the article.
std::vector<TaggedToken> tag(std::span<const Token> tokens,
                             const TaggerBackend &backend);

std::vector<TaggedToken> remove_stop_words(std::span<const TaggedToken> tokens,
                                           const StopList &stops);

}  // namespace qapipe

#endif  // QAPIPE_TAGGER_H_
