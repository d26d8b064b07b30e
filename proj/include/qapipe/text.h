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

#ifndef QAPIPE_TEXT_H_
#define QAPIPE_TEXT_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace qapipe {

// Text after diacritic/tatweel removal, alef folding and Latin lowercasing.
// offsets[i] is the code-point index in the original input of text[i].
struct NormalizedText {
  std::u32string text;
  std::vector<std::size_t> offsets;

  std::string utf8() const;
  std::size_t size() const { return text.size(); }
  bool empty() const { return text.empty(); }
};

NormalizedText normalize(std::string_view raw);

// Shorthand for normalize(raw).utf8().
std::string normalize_string(std::string_view raw);

// Character classification shared by the tokenizer and the sentence splitter.
bool is_arabic_letter(char32_t ch);
bool is_digit_char(char32_t ch);
bool is_word_char(char32_t ch);

// Half-open [begin, end) range of code points in a NormalizedText.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const CharSpan &, const CharSpan &) = default;
};

// A word split as [proclitics] + stem + [enclitics]. The concatenation of the
// three parts always equals surface.
struct Token {
  std::string surface;
  std::vector<std::string> proclitics;
  std::string stem;
  std::vector<std::string> enclitics;
  CharSpan span;

  bool has_article() const;
  bool has_conjunction() const;

  // surface with a leading conjunction proclitic removed.
  std::string without_conjunction() const;

  // surface with conjunction and preposition proclitics removed; keeps the
  // article and enclitics.
  std::string word_form() const;

  friend bool operator==(const Token &, const Token &) = default;
};

// Clitic segmentation tables plus a set of protected words that are never
// segmented past the conjunction (function words, and words whose first or
// last letters only look like clitics, e.g. "واجهت").
class Segmenter {
 public:
  Segmenter();

  static const Segmenter &Default();

  // Adds a word that is kept whole. The word is normalized first.
  void protect(std::string_view word);
  bool is_protected(std::u32string_view word) const;

  Token segment(std::u32string_view word, CharSpan span) const;

 private:
  std::unordered_set<std::u32string> protected_;
};

std::vector<Token> tokenize(const NormalizedText &text,
                            const Segmenter &segmenter = Segmenter::Default());

// Word units with the conjunction proclitic split off as its own unit and the
// rest of the word left whole: "والتي" -> "و", "التي".
std::vector<std::string> word_units(std::span<const Token> tokens);

bool is_conjunction_clitic(std::string_view clitic);

enum class StopCategory { kPreposition, kConjunction, kInterrogative, kOther };

std::string_view to_string(StopCategory category);

// Set of normalized stop entries, each with a category.
class StopList {
 public:
  StopList() = default;

  // File format: one entry per line, optional TAB + category, '#' comments.
  static StopList load(const std::filesystem::path &path);
  static StopList parse(std::istream &in, const std::string &source);

  void add(std::string_view entry, StopCategory category);
  bool contains(std::string_view normalized) const;
  std::optional<StopCategory> category(std::string_view normalized) const;
  std::size_t size() const { return entries_.size(); }

  // Entries in sorted order.
  std::vector<std::string> entries() const;

 private:
  std::unordered_map<std::string, StopCategory> entries_;
};

bool is_stop_token(const Token &token, const StopList &stops);

// Returns token without its conjunction proclitic; surface and span shrink to
// match.
Token drop_conjunction(const Token &token);

std::vector<Token> remove_stop_words(std::span<const Token> tokens,
                                     const StopList &stops);

}  // namespace qapipe

#endif  // QAPIPE_TEXT_H_
