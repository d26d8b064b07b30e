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

#include "qapipe/focus.h"

#include <algorithm>
#include <tuple>

namespace qapipe {

std::string_view to_string(ChunkKind kind) {
  switch (kind) {
    case ChunkKind::kNP:
      return "NP";
    case ChunkKind::kPP:
      return "PP";
    case ChunkKind::kRelClause:
      return "RELCL";
  }
  return "NP";
}

std::string_view to_string(ModifierKind kind) {
  switch (kind) {
    case ModifierKind::kAdj:
      return "ADJ";
    case ModifierKind::kAdv:
      return "ADV";
    case ModifierKind::kComp:
      return "COMP";
  }
  return "ADJ";
}

namespace {

std::vector<TokenSpan> noun_phrases(std::span<const PosTag> tags) {
  std::vector<TokenSpan> nps;
  const std::size_t n = tags.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    if (tags[i] == PosTag::JJ && i + 1 < n && is_noun(tags[i + 1])) j = i + 1;
    if (!is_noun(tags[j])) {
      ++i;
      continue;
    }
    std::size_t k = j;
    while (k < n && is_noun(tags[k])) ++k;
    while (k < n && is_adjective(tags[k])) ++k;
    nps.push_back(TokenSpan{i, k});
    i = k;
  }
  return nps;
}

const TokenSpan *np_ending_at(const std::vector<TokenSpan> &nps,
                              std::size_t end) {
  for (const auto &np : nps) {
    if (np.end == end) return &np;
  }
  return nullptr;
}

const TokenSpan *np_starting_at(const std::vector<TokenSpan> &nps,
                                std::size_t begin) {
  for (const auto &np : nps) {
    if (np.begin == begin) return &np;
  }
  return nullptr;
}

bool indefinite(std::span<const PosTag> tags, const TokenSpan &np) {
  for (std::size_t i = np.end; i > np.begin; --i) {
    if (is_noun(tags[i - 1])) return !is_definite(tags[i - 1]);
  }
  return false;
}

}  // namespace

std::vector<Chunk> chunk_tags(std::span<const PosTag> tags) {
  const std::size_t n = tags.size();
  std::vector<TokenSpan> nps = noun_phrases(tags);
  std::vector<Chunk> chunks;
  for (const auto &np : nps) chunks.push_back(Chunk{np, ChunkKind::kNP});

  for (std::size_t i = 1; i < n;) {
    const TokenSpan *before = np_ending_at(nps, i);
    bool opens = before != nullptr &&
                 (tags[i] == PosTag::WP ||
                  (is_verb(tags[i]) && indefinite(tags, *before)));
    if (!opens) {
      ++i;
      continue;
    }
    std::size_t end = n;
    for (const auto &np : nps) {
      if (np.begin > i) {
        end = np.end;
        break;
      }
    }
    chunks.push_back(Chunk{TokenSpan{i, end}, ChunkKind::kRelClause});
    i = end;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (tags[i] != PosTag::IN) continue;
    if (const TokenSpan *np = np_starting_at(nps, i + 1)) {
      chunks.push_back(Chunk{TokenSpan{i, np->end}, ChunkKind::kPP});
    }
  }

  std::sort(chunks.begin(), chunks.end(), [](const Chunk &a, const Chunk &b) {
    return std::tie(a.span.begin, a.span.end, a.kind) <
           std::tie(b.span.begin, b.span.end, b.kind);
  });
  return chunks;
}

std::vector<Chunk> chunk_nps(std::span<const TaggedToken> tagged) {
  std::vector<PosTag> tags;
  tags.reserve(tagged.size());
  for (const auto &t : tagged) tags.push_back(t.tag);
  return chunk_tags(tags);
}

std::optional<Focus> extract_focus(std::span<const TaggedToken> tagged,
                                   std::span<const Chunk> chunks) {
  std::optional<std::size_t> wh;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (tagged[i].tag == PosTag::WP) {
      wh = i;
      break;
    }
  }
  const Chunk *chosen = nullptr;
  for (const auto &c : chunks) {
    if (c.kind != ChunkKind::kNP) continue;
    if (!wh || c.span.begin > *wh) {
      chosen = &c;
      break;
    }
  }
  if (chosen == nullptr) {
    for (const auto &c : chunks) {
      if (c.kind == ChunkKind::kNP) {
        chosen = &c;
        break;
      }
    }
  }
  if (chosen == nullptr) return std::nullopt;

  Focus focus;
  focus.np = chosen->span;
  focus.head = focus.np.begin;
  while (focus.head < focus.np.end && !is_noun(tagged[focus.head].tag)) {
    ++focus.head;
  }
  for (std::size_t i = focus.np.begin; i < focus.np.end; ++i) {
    if (is_adjective(tagged[i].tag)) {
      focus.modifiers.push_back(Modifier{ModifierKind::kAdj, {i, i + 1}});
    }
  }
  std::size_t end = focus.np.end;
  while (end < tagged.size() && tagged[end].tag == PosTag::RB) ++end;
  if (end > focus.np.end) {
    focus.modifiers.push_back(
        Modifier{ModifierKind::kAdv, {focus.np.end, end}});
  }
  for (const auto &c : chunks) {
    if (c.span.begin == end &&
        (c.kind == ChunkKind::kRelClause || c.kind == ChunkKind::kPP)) {
      focus.modifiers.push_back(Modifier{ModifierKind::kComp, c.span});
      end = c.span.end;
      break;
    }
  }
  focus.span = TokenSpan{focus.np.begin, end};
  return focus;
}

std::vector<std::string> focus_terms(const Focus &focus,
                                     std::span<const TaggedToken> tagged,
                                     const StopList &stops) {
  std::vector<std::string> terms;
  for (std::size_t i = focus.span.begin; i < focus.span.end; ++i) {
    const Token &t = tagged[i].token;
    if (is_stop_token(t, stops)) continue;
    if (std::find(terms.begin(), terms.end(), t.stem) == terms.end()) {
      terms.push_back(t.stem);
    }
  }
  return terms;
}

std::string span_text(std::span<const TaggedToken> tagged, TokenSpan span) {
  std::string out;
  for (std::size_t i = span.begin; i < span.end && i < tagged.size(); ++i) {
    if (!out.empty()) out.push_back(' ');
    out += tagged[i].token.surface;
  }
  return out;
}

}  // namespace qapipe
