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

#ifndef QAPIPE_ANALYSIS_H_
#define QAPIPE_ANALYSIS_H_

#include <optional>
#include <string>
#include <vector>

#include "qapipe/classifier.h"
#include "qapipe/expansion.h"
#include "qapipe/focus.h"
#include "qapipe/tagger.h"
#include "qapipe/text.h"

namespace qapipe {

// Everything the question-analysis stage knows about one question.
struct QuestionAnalysis {
  std::string text;
  NormalizedText normalized;
  std::vector<TaggedToken> tagged;   // all tokens
  std::vector<TaggedToken> content;  // stop words removed
  ExpandedQuery expanded;
  std::optional<QuestionClass> qclass;
  double margin = 0.0;
  std::vector<Chunk> chunks;
  std::optional<Focus> focus;
  std::vector<std::string> focus_terms;
};

}  // namespace qapipe

#endif  // QAPIPE_ANALYSIS_H_
