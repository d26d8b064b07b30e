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

#ifndef QAPIPE_EVAL_H_
#define QAPIPE_EVAL_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qapipe/classifier.h"
#include "qapipe/extraction.h"

namespace qapipe {

class Pipeline;

struct EvalQuestion {
  std::string id;
  std::string text;
  std::optional<QuestionClass> gold_class;
  std::vector<std::string> answer_patterns;
};

// JSONL: {"id", "text", "class" (optional), "answers": [regex, ...]}.
// Patterns are compiled on load. Throws DataError with the line number.
std::vector<EvalQuestion> load_questions(const std::filesystem::path &path);
std::vector<EvalQuestion> parse_questions(std::istream &in,
                                          const std::string &source);

// Mean of 1/r over the list, 0 contributing nothing. Throws EmptyList.
double mrr(std::span<const int> ranks);

// Normalizes a pattern like text, leaving backslash escapes untouched.
std::string normalize_pattern(std::string_view pattern);

// 1-based position of the first text containing a match of any pattern, 0
// if none. Throws BadPattern.
int first_correct_rank(std::span<const std::string> texts,
                       std::span<const std::string> patterns);
int first_correct_rank(std::span<const AnswerCandidate> candidates,
                       std::span<const std::string> patterns);

struct TypeScore {
  std::size_t n = 0;
  double mrr = 0.0;

  friend bool operator==(const TypeScore &, const TypeScore &) = default;
};

struct QuestionResult {
  std::string id;
  CoarseClass type = CoarseClass::kHuman;
  int rank = 0;
  std::string predicted;  // "COARSE:fine", empty if unknown
  std::string error;

  friend bool operator==(const QuestionResult &, const QuestionResult &) =
      default;
};

struct EvalReport {
  std::size_t top = 0;
  std::map<CoarseClass, TypeScore> per_type;
  double average = 0.0;
  // "macro" when every type has the same count, "micro" otherwise.
  std::string average_mode;
  std::vector<QuestionResult> per_question;

  std::string to_json_text() const;
  static EvalReport from_json_text(std::string_view text,
                                   const std::string &source);

  // Question Type / Number / MRR, one row per type in report order, then
  // AVERAGE. MRR values print as ".78".
  std::string render_table() const;

  friend bool operator==(const EvalReport &, const EvalReport &) = default;
};

// Two-decimal value without the leading zero: 0.646 -> ".65", 1 -> "1.00".
std::string format_mrr(double value);

// Aggregates per-question ranks into a report.
EvalReport report_from_ranks(std::vector<QuestionResult> results,
                             std::size_t top);

// Rank file: "id TAB COARSE TAB rank" lines, '#' comments.
std::vector<QuestionResult> load_rank_file(const std::filesystem::path &path);
std::vector<QuestionResult> parse_rank_file(std::istream &in,
                                            const std::string &source);

// Answers one question; returns ranked candidates and the predicted label.
using AnswerFn = std::function<std::pair<std::vector<AnswerCandidate>,
                                         std::string>(const EvalQuestion &)>;

// Questions are grouped by gold coarse type. A failing question gets rank 0
// and its error message; the run continues. Throws EmptyList on an empty
// dataset and MissingGoldClass when a question has no gold class.
EvalReport evaluate(const AnswerFn &answer,
                    std::span<const EvalQuestion> dataset, std::size_t top);
EvalReport evaluate(const Pipeline &pipeline,
                    std::span<const EvalQuestion> dataset, std::size_t top);

struct ClassAccuracy {
  std::size_t n = 0;
  double coarse = 0.0;
  double fine = 0.0;
  // (gold label, predicted label) -> count
  std::map<std::pair<std::string, std::string>, std::size_t> confusion;
};

// Throws MissingGoldClass.
ClassAccuracy classify_accuracy(const Model &model,
                                std::span<const EvalQuestion> dataset,
                                const QuestionTagger &tagger);

}  // namespace qapipe

#endif  // QAPIPE_EVAL_H_
