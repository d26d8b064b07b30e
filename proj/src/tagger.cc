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

#include "qapipe/tagger.h"

#include <algorithm>
#include <fstream>
#include <istream>

#include "qapipe/errors.h"
#include "qapipe/utf8.h"

namespace qapipe {

namespace {

struct TagName {
  PosTag tag;
  const char *name;
};

constexpr TagName kTagNames[] = {
    {PosTag::NN, "NN"},     {PosTag::NNS, "NNS"},     {PosTag::NNP, "NNP"},
    {PosTag::DTNN, "DTNN"}, {PosTag::DTNNS, "DTNNS"}, {PosTag::DTNNP, "DTNNP"},
    {PosTag::JJ, "JJ"},     {PosTag::DTJJ, "DTJJ"},   {PosTag::RB, "RB"},
    {PosTag::VBD, "VBD"},   {PosTag::VBP, "VBP"},     {PosTag::VBN, "VBN"},
    {PosTag::IN, "IN"},     {PosTag::CC, "CC"},       {PosTag::WP, "WP"},
    {PosTag::PRP, "PRP"},   {PosTag::CD, "CD"},       {PosTag::PUNC, "PUNC"},
    {PosTag::UNK, "UNK"},
};

void fill(std::unordered_set<std::string> *set,
          std::initializer_list<const char *> words) {
  for (const char *w : words) set->insert(normalize_string(w));
}

bool ends_with(std::u32string_view s, std::u32string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

// Relative adjective endings (نسبة), feminine and plural forms included.
bool has_nisba_suffix(std::u32string_view s) {
  static const std::u32string kSuffixes[] = {U"يتين", U"يتان", U"يين", U"يون",
                                             U"يات",  U"ية",   U"ي"};
  for (const auto &suffix : kSuffixes) {
    if (ends_with(s, suffix) && s.size() >= suffix.size() + 3) return true;
  }
  return false;
}

bool has_plural_nisba_suffix(std::u32string_view s) {
  return s.size() >= 6 &&
         (ends_with(s, U"يين") || ends_with(s, U"يون") || ends_with(s, U"يات"));
}

bool has_plural_suffix(std::u32string_view s) {
  return s.size() >= 4 &&
         (ends_with(s, U"ات") || ends_with(s, U"ين") || ends_with(s, U"ون"));
}

bool has_nominal_suffix(std::u32string_view s) {
  return ends_with(s, U"ة") || ends_with(s, U"ات") || ends_with(s, U"ين") ||
         ends_with(s, U"ون");
}

bool contains_digit(std::u32string_view s) {
  return std::any_of(s.begin(), s.end(), is_digit_char);
}

}  // namespace

std::string_view to_string(PosTag tag) {
  for (const auto &entry : kTagNames) {
    if (entry.tag == tag) return entry.name;
  }
  return "UNK";
}

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  for (const auto &entry : kTagNames) {
    if (name == entry.name) return entry.tag;
  }
  return std::nullopt;
}

const std::vector<PosTag> &all_pos_tags() {
  static const std::vector<PosTag> tags = [] {
    std::vector<PosTag> out;
    for (const auto &entry : kTagNames) out.push_back(entry.tag);
    return out;
  }();
  return tags;
}

bool is_noun(PosTag tag) {
  switch (tag) {
    case PosTag::NN:
    case PosTag::NNS:
    case PosTag::NNP:
    case PosTag::DTNN:
    case PosTag::DTNNS:
    case PosTag::DTNNP:
      return true;
    default:
      return false;
  }
}

bool is_adjective(PosTag tag) {
  return tag == PosTag::JJ || tag == PosTag::DTJJ;
}

bool is_verb(PosTag tag) {
  return tag == PosTag::VBD || tag == PosTag::VBP || tag == PosTag::VBN;
}

bool is_definite(PosTag tag) {
  return tag == PosTag::DTNN || tag == PosTag::DTNNS ||
         tag == PosTag::DTNNP || tag == PosTag::DTJJ;
}

const TaggerLexicon &TaggerLexicon::Default() {
  static const TaggerLexicon lexicon = [] {
    TaggerLexicon lx;
    fill(&lx.interrogatives,
         {"ما", "ماذا", "من", "متى", "أين", "كيف", "كم", "لماذا", "هل", "أي",
          "الذي", "التي", "الذين", "اللذان", "اللتان", "اللذين", "اللتين",
          "اللاتي", "اللواتي", "اللائي"});
    fill(&lx.prepositions,
         {"في", "على", "إلى", "عن", "مع", "ضد", "حتى", "منذ", "خلال", "بين",
          "عند", "لدى", "نحو", "حول", "تحت", "فوق", "دون", "عبر", "قبل", "بعد",
          "ب", "ل", "ك"});
    fill(&lx.conjunctions, {"و", "ف", "أو", "ثم", "لكن", "بل", "أم", "حيث",
                            "أن", "إن", "لأن", "إذا", "لو", "أما"});
    fill(&lx.pronouns,
         {"هو", "هي", "هم", "هن", "هما", "أنا", "نحن", "أنت", "أنتم", "هذا",
          "هذه", "ذلك", "تلك", "هؤلاء", "أولئك"});
    fill(&lx.adverbs, {"جدا", "أيضا", "فقط", "دائما", "أبدا", "هنا", "هناك",
                       "الآن", "سريعا", "كثيرا", "قليلا", "معا", "تقريبا",
                       "حاليا", "عادة", "غالبا"});
    fill(&lx.number_words,
         {"واحد", "واحدة", "اثنان", "اثنين", "ثلاثة", "ثلاث", "أربعة", "أربع",
          "خمسة", "خمس", "ستة", "ست", "سبعة", "سبع", "ثمانية", "ثماني",
          "تسعة", "تسع", "عشرة", "عشر", "عشرون", "عشرين", "مئة", "مائة",
          "ألف", "مليون", "مليار"});
    fill(&lx.prenominal_adjectives,
         {"أول", "آخر", "أكبر", "أصغر", "أكثر", "أقل", "أطول", "أقصر", "أعلى",
          "أعمق", "أسرع", "أقدم", "أحدث", "أفضل", "أهم", "ثاني",
          "ثالث"});
    fill(&lx.adjectives,
         {"كبير", "كبيرة", "صغير", "صغيرة", "جديد", "جديدة", "قديم", "قديمة",
          "طويل", "طويلة", "قصير", "عظيم", "عظيمة", "حديث", "حديثة", "شهير",
          "شهيرة", "مشهور", "مشهورة", "أكثر", "أول", "أكبر", "أطول", "أعلى",
          "أحمر", "أزرق", "أخضر", "أبيض", "أسود", "أصفر", "أولى", "كبرى"});
    const char *const past[] = {
        "صعد", "ذهب", "قال", "كان", "كانت", "أصبح", "ولد", "ولدت", "توفي",
        "مات", "اكتشف", "اخترع", "أسس", "بنى", "حكم", "فاز", "فازت", "كتب",
        "وصل", "وقع", "وقعت", "دخل", "خرج", "قاد", "أعلن", "انتخب", "تولى",
        "سافر", "عاش", "درس", "حصل", "نال", "شارك", "أطلق", "هبط", "بلغ",
        "بلغت", "استغرق", "رسم", "صمم", "أنشئ", "شيد", "شيدت", "تأسس",
        "تأسست", "اعتمد", "ارتفع", "ارتفعت", "انخفض"};
    for (const char *w : past) lx.verbs[normalize_string(w)] = PosTag::VBD;
    const char *const present[] = {"يقع", "تقع", "يبلغ", "تبلغ", "يعيش",
                                   "تعيش", "يدور", "يسمى", "تسمى", "يستخدم",
                                   "تستخدم", "يحتاج", "يمكن", "يوجد", "توجد",
                                   "يعد", "تعد"};
    for (const char *w : present) lx.verbs[normalize_string(w)] = PosTag::VBP;
    return lx;
  }();
  return lexicon;
}

PosTag heuristic_tag_one(const Token &token, const TaggerLexicon &lexicon) {
  const std::string form = token.without_conjunction();
  const std::string &stem = token.stem;
  const std::u32string s = utf8::Decode(stem);

  // (1) closed classes
  if (lexicon.interrogatives.count(form)) return PosTag::WP;
  if (lexicon.prepositions.count(form)) return PosTag::IN;
  if (lexicon.conjunctions.count(form)) return PosTag::CC;
  if (lexicon.pronouns.count(form)) return PosTag::PRP;

  // (2) numbers
  if (contains_digit(s) || lexicon.number_words.count(form) ||
      lexicon.number_words.count(stem)) {
    return PosTag::CD;
  }
  if (lexicon.adverbs.count(form)) return PosTag::RB;
  if (auto it = lexicon.verbs.find(form); it != lexicon.verbs.end()) {
    return it->second;
  }

  // (4) words with the article
  if (token.has_article()) {
    if (has_nisba_suffix(s) || lexicon.adjectives.count(stem) ||
        lexicon.prenominal_adjectives.count(stem)) {
      return PosTag::DTJJ;
    }
    if (has_plural_suffix(s)) return PosTag::DTNNS;
    return PosTag::DTNN;
  }

  if (auto it = lexicon.verbs.find(stem); it != lexicon.verbs.end()) {
    return it->second;
  }

  // (3) verbal prefixes and past-tense suffixes
  if (s.size() >= 4 && (s[0] == U'ي' || s[0] == U'ت' || s[0] == U'ن') &&
      !has_nominal_suffix(s)) {
    return PosTag::VBP;
  }
  if (s.size() >= 5 && s[0] == U'س' &&
      (s[1] == U'ي' || s[1] == U'ت' || s[1] == U'ن')) {
    return PosTag::VBP;
  }
  if (s.size() >= 4 &&
      (ends_with(s, U"تا") || (ends_with(s, U"ت") && !ends_with(s, U"ات")))) {
    return PosTag::VBD;
  }

  if (lexicon.prenominal_adjectives.count(stem) ||
      lexicon.adjectives.count(stem)) {
    return PosTag::JJ;
  }
  if (s.size() >= 5 && (ends_with(s, U"ات") || ends_with(s, U"ون"))) {
    return PosTag::NNS;
  }
  // (5)
  return PosTag::NN;
}

std::vector<PosTag> HeuristicTagger::tag(std::span<const Token> tokens) const {
  std::vector<PosTag> tags;
  tags.reserve(tokens.size());
  for (const Token &t : tokens) tags.push_back(heuristic_tag_one(t, *lexicon_));

  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (!is_adjective(tags[i])) continue;
    bool after_nominal =
        i > 0 && (is_noun(tags[i - 1]) || is_adjective(tags[i - 1]));
    if (after_nominal) continue;
    bool before_noun = i + 1 < tags.size() && is_noun(tags[i + 1]);
    if (tags[i] == PosTag::JJ && before_noun) continue;
    if (tags[i] == PosTag::DTJJ) {
      tags[i] = has_plural_nisba_suffix(utf8::Decode(tokens[i].stem))
                    ? PosTag::DTNNS
                    : PosTag::DTNN;
    } else {
      tags[i] = PosTag::NN;
    }
  }
  return tags;
}

namespace {

std::string sentence_key(std::span<const std::string> surfaces) {
  std::string key;
  for (const auto &s : surfaces) {
    if (!key.empty()) key.push_back(' ');
    key += s;
  }
  return key;
}

}  // namespace

PretaggedTagger PretaggedTagger::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pre-tagged file: " + path.string());
  return parse(in, path.string());
}

PretaggedTagger PretaggedTagger::parse(std::istream &in,
                                       const std::string &source) {
  PretaggedTagger tagger;
  std::vector<std::string> surfaces;
  std::vector<PosTag> tags;
  auto flush = [&] {
    if (surfaces.empty()) return;
    tagger.sentences_[sentence_key(surfaces)] = tags;
    surfaces.clear();
    tags.clear();
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(source + ":" + std::to_string(lineno) +
                      ": expected 'surface<TAB>tag'");
    }
    auto tag = parse_pos_tag(line.substr(tab + 1));
    if (!tag) {
      throw DataError(source + ":" + std::to_string(lineno) +
                      ": unknown tag '" + line.substr(tab + 1) + "'");
    }
    surfaces.push_back(normalize_string(line.substr(0, tab)));
    tags.push_back(*tag);
  }
  flush();
  return tagger;
}

std::vector<PosTag> PretaggedTagger::tag(std::span<const Token> tokens) const {
  std::vector<std::string> surfaces;
  surfaces.reserve(tokens.size());
  for (const Token &t : tokens) surfaces.push_back(t.surface);
  std::string key = sentence_key(surfaces);
  if (auto it = sentences_.find(key); it != sentences_.end()) {
    return it->second;
  }
  if (fallback_) return fallback_->tag(tokens);
  throw BackendFailure("sentence not in pre-tagged input: " + key);
}

std::vector<TaggedToken> tag(std::span<const Token> tokens,
                             const TaggerBackend &backend) {
  std::vector<PosTag> tags = backend.tag(tokens);
  if (tags.size() != tokens.size()) {
    throw BackendFailure(backend.name() + " returned " +
                         std::to_string(tags.size()) + " tags for " +
                         std::to_string(tokens.size()) + " tokens");
  }
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (is_definite(tags[i]) && !tokens[i].has_article()) {
      throw BackendFailure(std::string(to_string(tags[i])) + " on '" +
                           tokens[i].surface + "' which has no article");
    }
    out.push_back(TaggedToken{tokens[i], tags[i]});
  }
  return out;
}

std::vector<TaggedToken> remove_stop_words(std::span<const TaggedToken> tokens,
                                           const StopList &stops) {
  std::vector<TaggedToken> out;
  for (const TaggedToken &t : tokens) {
    if (is_stop_token(t.token, stops)) continue;
    out.push_back(TaggedToken{drop_conjunction(t.token), t.tag});
  }
  return out;
}

}  // namespace qapipe
