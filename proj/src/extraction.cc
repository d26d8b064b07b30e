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

#include "qapipe/extraction.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <regex>
#include <tuple>

#include "qapipe/errors.h"
#include "qapipe/utf8.h"

namespace qapipe {

namespace {

bool is_terminator(char32_t ch) {
  return ch == U'.' || ch == U'?' || ch == U'!' || ch == 0x061F ||
         ch == 0x061B;
}

bool is_space(char32_t ch) {
  return ch == U' ' || ch == U'\t' || ch == U'\n' || ch == U'\r' ||
         ch == 0x00A0;
}

// '.' after a one-letter word ("د. أحمد") or inside a number ("3.5").
bool period_is_boundary(const std::u32string &s, std::size_t i) {
  if (i > 0 && i + 1 < s.size() && is_digit_char(s[i - 1]) &&
      is_digit_char(s[i + 1])) {
    return false;
  }
  if (i > 0 && is_word_char(s[i - 1]) && !is_digit_char(s[i - 1]) &&
      (i == 1 || !is_word_char(s[i - 2]))) {
    return false;
  }
  return true;
}

}  // namespace

std::vector<Sentence> segment_sentences(const NormalizedText &text,
                                        const std::string &doc_id) {
  std::vector<Sentence> out;
  const std::u32string &s = text.text;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    std::size_t b = start, e = end;
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    bool has_word = false;
    for (std::size_t i = b; i < e; ++i) has_word |= is_word_char(s[i]);
    if (has_word) {
      Sentence sentence;
      sentence.doc_id = doc_id;
      sentence.index = out.size();
      sentence.text = utf8::Encode(std::u32string_view(s).substr(b, e - b));
      sentence.span = CharSpan{b, e};
      out.push_back(std::move(sentence));
    }
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_terminator(s[i])) continue;
    if (s[i] == U'.' && !period_is_boundary(s, i)) continue;
    emit(i);
    start = i + 1;
  }
  emit(s.size());
  return out;
}

void annotate(Sentence *sentence, const TaggerBackend &backend,
              const StopList &stops, const Segmenter &segmenter) {
  std::vector<Token> tokens = tokenize(normalize(sentence->text), segmenter);
  sentence->tagged = tag(tokens, backend);
  sentence->stems.clear();
  for (const Token &t : tokens) {
    if (!is_stop_token(t, stops)) sentence->stems.push_back(t.stem);
  }
}

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::kPerson:
      return "PERSON";
    case EntityKind::kLocation:
      return "LOCATION";
    case EntityKind::kOrganization:
      return "ORGANIZATION";
  }
  return "PERSON";
}

std::string_view to_string(CandidateKind kind) {
  switch (kind) {
    case CandidateKind::kEntity:
      return "entity";
    case CandidateKind::kNumeric:
      return "numeric";
    case CandidateKind::kSentence:
      return "sentence";
  }
  return "sentence";
}

Gazetteers::Gazetteers() {
  for (const char *title :
       {"الدكتور", "الدكتورة", "الرئيس", "الملك", "الملكة", "الأمير",
        "الأميرة", "الشيخ", "السيد", "السيدة", "الكاتب", "الكاتبة", "الشاعر",
        "الشاعرة", "المهندس", "الفنان", "الفنانة", "القائد", "الجنرال",
        "الأستاذ", "العالم", "المخترع", "الرحالة", "المستكشف", "رائد",
        "الروائي", "الفيلسوف", "الرسام", "المؤلف", "الموسيقار", "الخليفة",
        "السلطان", "الإمبراطور", "الفيزيائي", "الكيميائي", "الطبيب"}) {
    add_title(title);
  }
}

void Gazetteers::add_title(std::string_view title) {
  titles_.insert(normalize_string(title));
}

void Gazetteers::add(EntityKind kind, std::string_view entry) {
  std::vector<Token> tokens = tokenize(normalize(entry));
  Entry e;
  for (const Token &t : tokens) e.words.push_back(t.surface);
  if (e.words.empty()) return;
  for (const auto &w : e.words) {
    if (!e.text.empty()) e.text.push_back(' ');
    e.text += w;
  }
  if (auto it = by_text_.find(e.text); it != by_text_.end()) {
    auto &kinds = entries_[it->second].kinds;
    if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
      kinds.push_back(kind);
    }
    return;
  }
  e.kinds.push_back(kind);
  by_text_[e.text] = entries_.size();
  entries_.push_back(std::move(e));
}

Gazetteers Gazetteers::load(const std::filesystem::path &dir) {
  Gazetteers g;
  const std::pair<const char *, EntityKind> files[] = {
      {"person.txt", EntityKind::kPerson},
      {"location.txt", EntityKind::kLocation},
      {"organization.txt", EntityKind::kOrganization}};
  for (const auto &[name, kind] : files) {
    std::ifstream in(dir / name);
    if (!in) throw ConfigError("cannot open gazetteer: " + (dir / name).string());
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      g.add(kind, line);
    }
  }
  return g;
}

namespace {

// Forms under which a token can match a gazetteer word.
std::vector<std::string> match_forms(const Token &t) {
  std::vector<std::string> forms = {t.surface, t.without_conjunction(),
                                    t.word_form()};
  std::u32string base = utf8::Decode(t.without_conjunction());
  if (base.size() >= 4 &&
      (base[0] == U'ب' || base[0] == U'ل' || base[0] == U'ك')) {
    forms.push_back(utf8::Encode(std::u32string_view(base).substr(1)));
  }
  return forms;
}

bool token_matches(const Token &t, const std::string &word) {
  for (const auto &f : match_forms(t)) {
    if (f == word) return true;
  }
  return false;
}

bool is_fi(const Token &t) { return t.without_conjunction() == "في"; }

}  // namespace

std::vector<NamedEntity> GazetteerRecognizer::recognize(
    const Sentence &s) const {
  const auto &tokens = s.tagged;
  std::vector<NamedEntity> found;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (const auto &entry : gazetteers_->entries()) {
      const std::size_t len = entry.words.size();
      if (i + len > tokens.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < len && ok; ++k) {
        ok = token_matches(tokens[i + k].token, entry.words[k]);
      }
      if (!ok) continue;
      auto has = [&](EntityKind k) {
        return std::find(entry.kinds.begin(), entry.kinds.end(), k) !=
               entry.kinds.end();
      };
      EntityKind kind = entry.kinds.front();
      if (has(EntityKind::kLocation) && i > 0 && is_fi(tokens[i - 1].token)) {
        kind = EntityKind::kLocation;
      } else if (has(EntityKind::kPerson)) {
        kind = EntityKind::kPerson;
      } else if (has(EntityKind::kOrganization)) {
        kind = EntityKind::kOrganization;
      }
      found.push_back(NamedEntity{kind, TokenSpan{i, i + len}, entry.text});
    }
    if (gazetteers_->is_title(tokens[i].token.word_form()) ||
        gazetteers_->is_title(tokens[i].token.without_conjunction())) {
      std::size_t j = i + 1;
      while (j < tokens.size() && j < i + 3 &&
             (tokens[j].tag == PosTag::NN || tokens[j].tag == PosTag::NNP) &&
             !gazetteers_->is_title(tokens[j].token.word_form())) {
        ++j;
      }
      if (j > i + 1) {
        std::string text;
        for (std::size_t k = i + 1; k < j; ++k) {
          if (!text.empty()) text.push_back(' ');
          text += tokens[k].token.word_form();
        }
        found.push_back(
            NamedEntity{EntityKind::kPerson, TokenSpan{i + 1, j}, text});
      }
    }
  }

  std::stable_sort(found.begin(), found.end(),
                   [](const NamedEntity &a, const NamedEntity &b) {
                     if (a.span.size() != b.span.size()) {
                       return a.span.size() > b.span.size();
                     }
                     return a.span.begin < b.span.begin;
                   });
  std::vector<NamedEntity> accepted;
  for (const auto &e : found) {
    bool overlaps = std::any_of(
        accepted.begin(), accepted.end(), [&](const NamedEntity &a) {
          return e.span.begin < a.span.end && a.span.begin < e.span.end;
        });
    if (!overlaps) accepted.push_back(e);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const NamedEntity &a, const NamedEntity &b) {
              return a.span.begin < b.span.begin;
            });
  return accepted;
}

std::vector<NamedEntity> ner(const Sentence &sentence,
                             const Gazetteers &gazetteers) {
  return GazetteerRecognizer(gazetteers).recognize(sentence);
}

namespace {

const std::wstring kDigits = L"0-9\u0660-\u0669\u06F0-\u06F9";
const std::wstring kNumber = L"[" + kDigits + L"]+(?:[.,\u066B\u066C][" +
                             kDigits + L"]+)*";
const std::wstring kBefore = L"(?:^|[^" + kDigits + L".,\u066B\u066C])";
const std::wstring kLetters = L"\u0621-\u064A";
const std::wstring kWordStart = L"(?:^|[^" + kLetters + L"])";
const std::wstring kWordEnd = L"(?![" + kLetters + L"])";

const std::wstring kNumberWords =
    L"(?:واحد|واحدة|اثنان|اثنين|ثلاثة|اربعة|خمسة|ستة|سبعة|ثمانية|تسعة|عشرة|"
    L"عشرون|عشرين|ثلاثون|ثلاثين|اربعون|اربعين|خمسون|خمسين|مئة|مائة|الف|"
    L"مليون|مليار)";
const std::wstring kMonths =
    L"(?:كانون الثاني|كانون الاول|تشرين الاول|تشرين الثاني|يناير|فبراير|مارس|"
    L"ابريل|مايو|يونيو|يوليو|اغسطس|سبتمبر|اكتوبر|نوفمبر|ديسمبر|شباط|اذار|"
    L"نيسان|ايار|حزيران|تموز|ايلول|اب)";
const std::wstring kCurrency =
    L"(?:دولار|يورو|جنيه|ريال|دينار|درهم|ليرة|روبية)[" + kLetters + L"]*";
const std::wstring kScale = L"(?:(?:مليون|مليار|الف)\\s*)?";
const std::wstring kDistanceUnit =
    L"(?:كيلومتر|كيلو متر|كلم|كم|متر|ميل|قدم|سنتيمتر)[" + kLetters + L"]*";
const std::wstring kSpeedUnit =
    L"(?:كيلومتر|كلم|كم|ميل|متر|عقدة)[" + kLetters + L"]*";

std::vector<std::wregex> compile(const std::vector<std::wstring> &sources) {
  std::vector<std::wregex> out;
  for (const auto &src : sources) {
    out.emplace_back(src, std::regex::ECMAScript | std::regex::optimize);
  }
  return out;
}

const std::map<std::string, std::vector<std::wregex>> &numeric_patterns() {
  static const std::map<std::string, std::vector<std::wregex>> patterns = {
      {"count",
       compile({kBefore + L"(" + kNumber + L")",
                kWordStart + L"(" + kNumberWords + L")" + kWordEnd})},
      {"date",
       compile({kBefore + L"(" + kNumber + L"[/\\-][" + kDigits + L"]+[/\\-][" +
                    kDigits + L"]+)",
                kBefore + L"((?:" + kNumber + L"\\s+)?" + kMonths +
                    L"\\s+(?:(?:عام|سنة)\\s+)?" + kNumber + L")",
                kBefore + L"(" + kNumber + L"\\s+" + kMonths + L")" + kWordEnd,
                kWordStart + L"((?:عام|العام|سنة)\\s+" + kNumber + L")",
                kBefore + L"([12][0-9]{3}|[\u0661\u0662][\u0660-\u0669]{3})(?![" +
                    kDigits + L"])"})},
      {"money",
       compile({kBefore + L"(" + kNumber + L"\\s*" + kScale + kCurrency + L")",
                L"(\\$\\s*" + kNumber + L")",
                kBefore + L"(" + kNumber + L"\\s*\\$)"})},
      {"percent",
       compile({kBefore + L"(" + kNumber +
                L"\\s*(?:\u066A|%|بالمئة|بالمائة|في المئة|في المائة))"})},
      {"distance",
       compile({kBefore + L"(" + kNumber + L"\\s*" + kScale + kDistanceUnit +
                L")"})},
      {"speed",
       compile({kBefore + L"(" + kNumber + L"\\s*" + kSpeedUnit +
                    L"\\s*(?:في|/|ب)\\s*(?:الساعة|ساعة|الثانية|ثانية))",
                kBefore + L"(" + kNumber + L"\\s*كم\\s*/\\s*س)"})},
      {"other", compile({kBefore + L"(" + kNumber + L")"})},
  };
  return patterns;
}

}  // namespace

std::vector<std::string> numeric_matches(std::string_view text,
                                         std::string_view fine) {
  const auto &patterns = numeric_patterns();
  auto it = patterns.find(std::string(fine));
  if (it == patterns.end()) throw UnsupportedFineClass(std::string(fine));
  const std::wstring wide = utf8::ToWide(text);

  struct Match {
    std::size_t begin, end;
  };
  std::vector<Match> matches;
  for (const auto &re : it->second) {
    for (auto m = std::wsregex_iterator(wide.begin(), wide.end(), re);
         m != std::wsregex_iterator(); ++m) {
      const auto &g = (*m)[1];
      if (!g.matched || g.length() == 0) continue;
      auto b = static_cast<std::size_t>(g.first - wide.begin());
      matches.push_back(Match{b, b + static_cast<std::size_t>(g.length())});
    }
  }
  std::stable_sort(matches.begin(), matches.end(),
                   [](const Match &a, const Match &b) {
                     if (a.end - a.begin != b.end - b.begin) {
                       return a.end - a.begin > b.end - b.begin;
                     }
                     return a.begin < b.begin;
                   });
  std::vector<Match> kept;
  for (const auto &m : matches) {
    bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const Match &k) {
      return m.begin < k.end && k.begin < m.end;
    });
    if (!overlaps) kept.push_back(m);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Match &a, const Match &b) { return a.begin < b.begin; });
  std::vector<std::string> out;
  for (const auto &m : kept) {
    out.push_back(
        utf8::FromWide(std::wstring_view(wide).substr(m.begin, m.end - m.begin)));
  }
  return out;
}

std::vector<AnswerCandidate> extract_numeric(const Sentence &sentence,
                                             std::string_view fine) {
  std::vector<AnswerCandidate> out;
  for (auto &text : numeric_matches(sentence.text, fine)) {
    AnswerCandidate c;
    c.text = std::move(text);
    c.kind = CandidateKind::kNumeric;
    c.doc_id = sentence.doc_id;
    c.sentence = sentence.index;
    c.context = sentence.stems;
    out.push_back(std::move(c));
  }
  return out;
}

double semantic_similarity(const ExpandedQuery &query,
                           std::span<const std::string> sentence_stems) {
  std::map<std::string, double> counts;
  for (const auto &s : sentence_stems) counts[s] += 1.0;
  double dot = 0.0, q_sq = 0.0, s_sq = 0.0;
  for (const auto &t : query.terms) {
    q_sq += t.weight * t.weight;
    if (auto it = counts.find(t.term); it != counts.end()) {
      dot += t.weight * it->second;
    }
  }
  for (const auto &[term, c] : counts) s_sq += c * c;
  if (q_sq == 0.0 || s_sq == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(q_sq) * std::sqrt(s_sq)), 0.0, 1.0);
}

double semantic_similarity(const ExpandedQuery &query, const Sentence &s) {
  return semantic_similarity(query, s.stems);
}

std::vector<AnswerCandidate> extract_answers(const QuestionAnalysis &analysis,
                                             std::span<const Sentence> passages,
                                             const EntityRecognizer &recognizer) {
  if (!analysis.qclass) throw InputError("question has not been classified");
  const QuestionClass &qc = *analysis.qclass;
  const std::string question_text = analysis.normalized.utf8();

  std::vector<AnswerCandidate> out;
  auto add_merged = [&out](AnswerCandidate c) {
    for (auto &existing : out) {
      if (existing.kind == c.kind && existing.text == c.text) {
        if (c.score > existing.score) existing = std::move(c);
        return;
      }
    }
    out.push_back(std::move(c));
  };

  for (const Sentence &s : passages) {
    const double sim = semantic_similarity(analysis.expanded, s);
    switch (qc.coarse()) {
      case CoarseClass::kHuman:
      case CoarseClass::kLocation: {
        EntityKind want = EntityKind::kLocation;
        if (qc.coarse() == CoarseClass::kHuman) {
          want = qc.fine() == "group" ? EntityKind::kOrganization
                                      : EntityKind::kPerson;
        }
        for (const auto &e : recognizer.recognize(s)) {
          if (e.kind != want) continue;
          if (question_text.find(e.text) != std::string::npos) continue;
          add_merged(AnswerCandidate{e.text, CandidateKind::kEntity, s.doc_id,
                                     s.index, sim, s.stems});
        }
        break;
      }
      case CoarseClass::kNumeric:
        for (auto &c : extract_numeric(s, qc.fine())) {
          c.score = sim;
          add_merged(std::move(c));
        }
        break;
      case CoarseClass::kDescription:
      case CoarseClass::kEntity:
        out.push_back(AnswerCandidate{s.text, CandidateKind::kSentence,
                                      s.doc_id, s.index, sim, s.stems});
        break;
    }
  }
  return out;
}

std::vector<AnswerCandidate> rank_answers(
    std::vector<AnswerCandidate> candidates,
    std::span<const std::string> focus_terms, std::size_t top) {
  if (top == 0) throw ConfigError("top must be >= 1");
  if (!focus_terms.empty()) {
    for (auto &c : candidates) {
      std::size_t hits = 0;
      for (const auto &f : focus_terms) {
        if (std::find(c.context.begin(), c.context.end(), f) !=
            c.context.end()) {
          ++hits;
        }
      }
      c.score += kFocusBonus * static_cast<double>(hits) /
                 static_cast<double>(focus_terms.size());
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const AnswerCandidate &a, const AnswerCandidate &b) {
              if (a.score != b.score) return a.score > b.score;
              return std::tie(a.doc_id, a.sentence, a.text) <
                     std::tie(b.doc_id, b.sentence, b.text);
            });
  if (candidates.size() > top) candidates.resize(top);
  return candidates;
}

}  // namespace qapipe
