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

#include "qapipe/text.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "qapipe/errors.h"
#include "qapipe/utf8.h"

namespace qapipe {

namespace {

constexpr char32_t kTatweel = 0x0640;
constexpr char32_t kAlef = 0x0627;
constexpr char32_t kAlefMadda = 0x0622;
constexpr char32_t kAlefHamzaAbove = 0x0623;
constexpr char32_t kAlefHamzaBelow = 0x0625;
constexpr char32_t kLam = 0x0644;
constexpr char32_t kWaw = 0x0648;
constexpr char32_t kFeh = 0x0641;
constexpr char32_t kBeh = 0x0628;
constexpr char32_t kKaf = 0x0643;

bool is_diacritic(char32_t ch) {
  return (ch >= 0x0610 && ch <= 0x061A) || (ch >= 0x064B && ch <= 0x065F) ||
         ch == 0x0670 || (ch >= 0x06D6 && ch <= 0x06DC) ||
         (ch >= 0x06DF && ch <= 0x06E4) || (ch >= 0x06E7 && ch <= 0x06E8) ||
         (ch >= 0x06EA && ch <= 0x06ED);
}

char32_t fold(char32_t ch) {
  if (ch == kAlefMadda || ch == kAlefHamzaAbove || ch == kAlefHamzaBelow) {
    return kAlef;
  }
  if (ch >= U'A' && ch <= U'Z') return ch + 32;
  if (ch >= 0x00C0 && ch <= 0x00DE && ch != 0x00D7) return ch + 32;
  return ch;
}

const std::u32string kArticle = U"ال";

// Pronominal enclitics, longest first. The 1sg forms "ي" and "ني" are left out
// because they collide with the nisba adjective ending (أمريكي, ألماني).
const std::vector<std::u32string> &enclitic_table() {
  static const std::vector<std::u32string> table = {
      U"هما", U"كما", U"هم", U"هن", U"ها", U"نا", U"كم", U"كن", U"ه", U"ك"};
  return table;
}

constexpr std::size_t kMinStem = 2;
constexpr std::size_t kMinStemBeforeEnclitic = 3;

bool starts_with(std::u32string_view s, std::u32string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::u32string_view s, std::u32string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool all_arabic_letters(std::u32string_view word) {
  return std::all_of(word.begin(), word.end(), is_arabic_letter);
}

const char *const kProtectedWords[] = {
    // Relative and demonstrative pronouns, particles.
    "الذي", "التي", "الذين", "اللذان", "اللتان", "اللذين", "اللتين", "اللاتي",
    "اللواتي", "اللائي", "الا", "الى", "الان", "الله", "هذا", "هذه", "ذلك",
    "تلك", "هؤلاء", "هناك", "هنا", "لكن", "لان", "لماذا", "لما", "لم", "لن",
    "كما", "كيف", "كل", "بل", "بعد", "بين", "بينما", "فقط", "فيه", "فيها",
    "في", "فوق", "فيما", "كان", "كانت", "لقد",
    // Content words whose initial or final letters only look like clitics.
    "ولد", "ولدت", "وصل", "وصلت", "وجد", "وقع", "وقعت", "وضع", "وزير", "وزراء",
    "وزارة", "ولاية", "ولايات", "وكالة", "وادي", "وطن", "وطني", "وسط", "وقت",
    "وجه", "وزن", "ورق", "وحدة", "وثيقة", "وفاة", "وفد", "وراء", "وسيلة",
    "فاز", "فازت", "فرنسا", "فيلم", "فريق", "فكرة", "فصل", "فترة", "فضاء",
    "فن", "فنان", "فلسطين", "فيزياء", "فندق", "فرع", "فيل", "فئة", "فهد",
    "لون", "لغة", "لقب", "لعبة", "كتاب", "كوكب", "كلب", "كرة", "كيمياء",
    "بحر", "بلد", "بنك", "برج", "بيت", "بطل"};

}  // namespace

std::string NormalizedText::utf8() const { return utf8::Encode(text); }

NormalizedText normalize(std::string_view raw) {
  NormalizedText out;
  std::u32string chars = utf8::Decode(raw);
  out.text.reserve(chars.size());
  out.offsets.reserve(chars.size());
  for (std::size_t i = 0; i < chars.size(); ++i) {
    char32_t ch = chars[i];
    if (is_diacritic(ch) || ch == kTatweel) continue;
    out.text.push_back(fold(ch));
    out.offsets.push_back(i);
  }
  return out;
}

std::string normalize_string(std::string_view raw) {
  return normalize(raw).utf8();
}

bool is_arabic_letter(char32_t ch) {
  return (ch >= 0x0621 && ch <= 0x063A) || (ch >= 0x0641 && ch <= 0x064A) ||
         (ch >= 0x066E && ch <= 0x066F) || (ch >= 0x0671 && ch <= 0x06D3) ||
         ch == 0x06D5 || (ch >= 0x06FA && ch <= 0x06FC);
}

bool is_digit_char(char32_t ch) {
  return (ch >= U'0' && ch <= U'9') || (ch >= 0x0660 && ch <= 0x0669) ||
         (ch >= 0x06F0 && ch <= 0x06F9);
}

bool is_word_char(char32_t ch) {
  if (is_arabic_letter(ch) || is_digit_char(ch)) return true;
  if ((ch >= U'a' && ch <= U'z') || (ch >= U'A' && ch <= U'Z')) return true;
  return ch >= 0x00C0 && ch <= 0x024F && ch != 0x00D7 && ch != 0x00F7;
}

bool Token::has_article() const {
  return std::find(proclitics.begin(), proclitics.end(), "ال") !=
         proclitics.end();
}

bool Token::has_conjunction() const {
  return !proclitics.empty() && is_conjunction_clitic(proclitics.front());
}

std::string Token::without_conjunction() const {
  if (!has_conjunction()) return surface;
  return surface.substr(proclitics.front().size());
}

std::string Token::word_form() const {
  std::string out;
  for (const auto &p : proclitics) {
    if (p == "ال") out += p;
  }
  out += stem;
  for (const auto &e : enclitics) out += e;
  return out;
}

bool is_conjunction_clitic(std::string_view clitic) {
  return clitic == "و" || clitic == "ف";
}

Segmenter::Segmenter() {
  for (const char *word : kProtectedWords) protect(word);
}

const Segmenter &Segmenter::Default() {
  static const Segmenter segmenter;
  return segmenter;
}

void Segmenter::protect(std::string_view word) {
  protected_.insert(normalize(word).text);
}

bool Segmenter::is_protected(std::u32string_view word) const {
  return protected_.count(std::u32string(word)) > 0;
}

Token Segmenter::segment(std::u32string_view word, CharSpan span) const {
  Token token;
  token.surface = utf8::Encode(word);
  token.span = span;
  std::u32string_view rest = word;
  if (!all_arabic_letters(word) || is_protected(word)) {
    token.stem = token.surface;
    return token;
  }

  // Conjunction. A bare alef after و/ف is a root letter (واجهت, واشنطن)
  // unless it starts the article.
  if ((rest[0] == kWaw || rest[0] == kFeh) && rest.size() - 1 >= kMinStem) {
    std::u32string_view after = rest.substr(1);
    if (after[0] != kAlef || starts_with(after, kArticle)) {
      token.proclitics.push_back(utf8::Encode(rest.substr(0, 1)));
      rest = after;
    }
  }
  if (is_protected(rest)) {
    token.stem = utf8::Encode(rest);
    return token;
  }

  // Preposition, only when the article follows (بال، كال، لال).
  if ((rest[0] == kBeh || rest[0] == kLam || rest[0] == kKaf) &&
      starts_with(rest.substr(1), kArticle) &&
      rest.size() - 1 - kArticle.size() >= kMinStem) {
    token.proclitics.push_back(utf8::Encode(rest.substr(0, 1)));
    rest = rest.substr(1);
  }

  bool article = false;
  if (starts_with(rest, kArticle) && rest.size() - kArticle.size() >= kMinStem) {
    token.proclitics.push_back("ال");
    rest = rest.substr(kArticle.size());
    article = true;
  }

  // A definite noun cannot carry a possessive suffix.
  if (!article) {
    for (const auto &enclitic : enclitic_table()) {
      if (ends_with(rest, enclitic) &&
          rest.size() - enclitic.size() >= kMinStemBeforeEnclitic) {
        token.enclitics.push_back(utf8::Encode(enclitic));
        rest = rest.substr(0, rest.size() - enclitic.size());
        break;
      }
    }
  }
  token.stem = utf8::Encode(rest);
  return token;
}

std::vector<Token> tokenize(const NormalizedText &text,
                            const Segmenter &segmenter) {
  std::vector<Token> tokens;
  const std::u32string &s = text.text;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_word_char(s[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < s.size() && is_word_char(s[i])) ++i;
    std::u32string_view word(s.data() + start, i - start);
    tokens.push_back(segmenter.segment(word, CharSpan{start, i}));
  }
  return tokens;
}

std::vector<std::string> word_units(std::span<const Token> tokens) {
  std::vector<std::string> units;
  for (const Token &t : tokens) {
    if (t.has_conjunction()) {
      units.push_back(t.proclitics.front());
      units.push_back(t.without_conjunction());
    } else {
      units.push_back(t.surface);
    }
  }
  return units;
}

std::string_view to_string(StopCategory category) {
  switch (category) {
    case StopCategory::kPreposition:
      return "preposition";
    case StopCategory::kConjunction:
      return "conjunction";
    case StopCategory::kInterrogative:
      return "interrogative";
    case StopCategory::kOther:
      return "other";
  }
  return "other";
}

StopList StopList::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stop list: " + path.string());
  return parse(in, path.string());
}

StopList StopList::parse(std::istream &in, const std::string &source) {
  StopList stops;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::string entry = line;
    std::string cat;
    if (auto tab = line.find('\t'); tab != std::string::npos) {
      entry = line.substr(0, tab);
      cat = line.substr(tab + 1);
    }
    StopCategory category = StopCategory::kOther;
    if (cat.empty() || cat == "other") {
      category = StopCategory::kOther;
    } else if (cat == "preposition") {
      category = StopCategory::kPreposition;
    } else if (cat == "conjunction") {
      category = StopCategory::kConjunction;
    } else if (cat == "interrogative") {
      category = StopCategory::kInterrogative;
    } else {
      throw DataError(source + ":" + std::to_string(lineno) +
                      ": unknown stop category '" + cat + "'");
    }
    if (entry.empty()) continue;
    stops.add(entry, category);
  }
  return stops;
}

void StopList::add(std::string_view entry, StopCategory category) {
  entries_[normalize_string(entry)] = category;
}

bool StopList::contains(std::string_view normalized) const {
  return entries_.count(std::string(normalized)) > 0;
}

std::optional<StopCategory> StopList::category(
    std::string_view normalized) const {
  auto it = entries_.find(std::string(normalized));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> StopList::entries() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto &[entry, category] : entries_) out.push_back(entry);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_stop_token(const Token &token, const StopList &stops) {
  return stops.contains(token.stem) || stops.contains(token.surface) ||
         stops.contains(token.without_conjunction());
}

Token drop_conjunction(const Token &token) {
  if (!token.has_conjunction()) return token;
  Token out = token;
  const std::string &clitic = out.proclitics.front();
  out.surface = out.surface.substr(clitic.size());
  out.span.begin += utf8::Decode(clitic).size();
  out.proclitics.erase(out.proclitics.begin());
  return out;
}

std::vector<Token> remove_stop_words(std::span<const Token> tokens,
                                     const StopList &stops) {
  std::vector<Token> out;
  for (const Token &t : tokens) {
    if (is_stop_token(t, stops)) continue;
    out.push_back(drop_conjunction(t));
  }
  return out;
}

}  // namespace qapipe
