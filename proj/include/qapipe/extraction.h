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

#ifndef QAPIPE_EXTRACTION_H_
#define QAPIPE_EXTRACTION_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "qapipe/analysis.h"
#include "qapipe/expansion.h"
#include "qapipe/focus.h"
#include "qapipe/tagger.h"
#include "qapipe/text.h"

namespace qapipe {

struct Sentence {
  std::string doc_id;
  std::size_t index = 0;
  std::string text;  // normalized
  CharSpan span;     // in the normalized document
  std::vector<TaggedToken> tagged;
  std::vector<std::string> stems;  // content stems
};

// Splits on . ؟ ? ! ؛ . A period after a one-letter word or between two
// digits is not a boundary. Sentences come back untagged.
std::vector<Sentence> segment_sentences(const NormalizedText &text,
                                        const std::string &doc_id);

// Fills sentence->tagged and sentence->stems.
void annotate(Sentence *sentence, const TaggerBackend &backend,
              const StopList &stops,
              const Segmenter &segmenter = Segmenter::Default());

enum class EntityKind { kPerson, kLocation, kOrganization };

std::string_view to_string(EntityKind kind);

struct NamedEntity {
  EntityKind kind;
  TokenSpan span;
  std::string text;
};

// Entity names per kind, each a sequence of normalized words.
class Gazetteers {
 public:
  Gazetteers();

  // Reads person.txt, location.txt and organization.txt from dir.
  static Gazetteers load(const std::filesystem::path &dir);

  void add(EntityKind kind, std::string_view entry);
  void add_title(std::string_view title);

  struct Entry {
    std::vector<std::string> words;
    std::string text;
    std::vector<EntityKind> kinds;
  };
  const std::vector<Entry> &entries() const { return entries_; }
  bool is_title(const std::string &word) const { return titles_.count(word); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> by_text_;
  std::unordered_set<std::string> titles_;
};

class EntityRecognizer {
 public:
  virtual ~EntityRecognizer() = default;
  virtual std::vector<NamedEntity> recognize(const Sentence &s) const = 0;
};

// Longest-match gazetteer scan plus title triggers (الدكتور X Y -> PERSON)
// and the locative rule (في + ambiguous name -> LOCATION). Overlaps resolve
// longest first, then leftmost.
class GazetteerRecognizer : public EntityRecognizer {
 public:
  explicit GazetteerRecognizer(const Gazetteers &gazetteers)
      : gazetteers_(&gazetteers) {}
  std::vector<NamedEntity> recognize(const Sentence &s) const override;

 private:
  const Gazetteers *gazetteers_;
};

std::vector<NamedEntity> ner(const Sentence &sentence,
                             const Gazetteers &gazetteers);

enum class CandidateKind { kEntity, kNumeric, kSentence };

std::string_view to_string(CandidateKind kind);

struct AnswerCandidate {
  std::string text;
  CandidateKind kind = CandidateKind::kSentence;
  std::string doc_id;
  std::size_t sentence = 0;
  double score = 0.0;
  std::vector<std::string> context;  // content stems of the host sentence
};

// Pattern families per NUMERIC fine class. Throws UnsupportedFineClass.
std::vector<AnswerCandidate> extract_numeric(const Sentence &sentence,
                                             std::string_view fine);

// Matched substrings of text for one fine class, longest non-overlapping.
std::vector<std::string> numeric_matches(std::string_view text,
                                         std::string_view fine);

// Cosine between the weighted query vector and the sentence's stem counts.
double semantic_similarity(const ExpandedQuery &query,
                           std::span<const std::string> sentence_stems);
double semantic_similarity(const ExpandedQuery &query, const Sentence &s);

// HUMAN -> PERSON entities (ORGANIZATION for HUMAN:group), LOCATION ->
// LOCATION entities, NUMERIC -> patterns, DESCRIPTION and ENTITY -> whole
// sentences. Base score is the host sentence similarity. Entity and numeric
// candidates with equal text are merged; entities named in the question are
// skipped.
std::vector<AnswerCandidate> extract_answers(const QuestionAnalysis &analysis,
                                             std::span<const Sentence> passages,
                                             const EntityRecognizer &ner);

constexpr double kFocusBonus = 0.5;

// score += 0.5 x (share of focus terms present in the host sentence), then
// sort descending with ties on (doc id, sentence, text), keep top.
std::vector<AnswerCandidate> rank_answers(
    std::vector<AnswerCandidate> candidates,
    std::span<const std::string> focus_terms, std::size_t top);

}  // namespace qapipe

#endif  // QAPIPE_EXTRACTION_H_
