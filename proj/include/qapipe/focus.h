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

#ifndef QAPIPE_FOCUS_H_
#define QAPIPE_FOCUS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qapipe/tagger.h"

namespace qapipe {

// Half-open token-index range.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t i) const { return i >= begin && i < end; }
  friend bool operator==(const TokenSpan &, const TokenSpan &) = default;
};

enum class ChunkKind { kNP, kPP, kRelClause };

std::string_view to_string(ChunkKind kind);

struct Chunk {
  TokenSpan span;
  ChunkKind kind = ChunkKind::kNP;

  friend bool operator==(const Chunk &, const Chunk &) = default;
};

// Shallow chunking over the tag sequence. Three passes, each producing
// non-overlapping chunks:
//   NP     := [JJ] Noun+ Adj*   (the optional JJ only when it opens the NP)
//   PP     := IN NP
//   RELCL  := WP right after an NP, or a verb right after an indefinite NP,
//             running through the end of the next NP (or to the end)
// The result is sorted by (begin, end, kind).
std::vector<Chunk> chunk_nps(std::span<const TaggedToken> tagged);
std::vector<Chunk> chunk_tags(std::span<const PosTag> tags);

enum class ModifierKind { kAdj, kAdv, kComp };

std::string_view to_string(ModifierKind kind);

struct Modifier {
  ModifierKind kind;
  TokenSpan span;

  friend bool operator==(const Modifier &, const Modifier &) = default;
};

struct Focus {
  TokenSpan span;
  std::size_t head = 0;
  // The NP the focus was built from; span extends it with adverbs and an
  // attached clause.
  TokenSpan np;
  std::vector<Modifier> modifiers;
};

// Focus = first NP after the interrogative word, extended through trailing
// adverbs and an attached RELCL/PP. nullopt when the question has no NP.
std::optional<Focus> extract_focus(std::span<const TaggedToken> tagged,
                                   std::span<const Chunk> chunks);

// Stems of the focus span, with stop words removed.
std::vector<std::string> focus_terms(const Focus &focus,
                                     std::span<const TaggedToken> tagged,
                                     const StopList &stops);

// Surface text of a token range, space separated.
std::string span_text(std::span<const TaggedToken> tagged, TokenSpan span);

}  // namespace qapipe

#endif  // QAPIPE_FOCUS_H_
