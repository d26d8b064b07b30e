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

#include <gtest/gtest.h>

#include <sstream>

#include "qapipe/errors.h"
#include "qapipe/text.h"
#include "qapipe/utf8.h"
#include "test_support.h"

namespace qapipe {
namespace {

using testing::kCases;
using testing::Rng;

std::string join(const std::vector<std::string> &parts) {
  std::string out;
  for (const auto &p : parts) out += p;
  return out;
}

// Marks and tatweel that normalization removes, written out as a table.
bool removed_by_table(char32_t ch) {
  static const std::pair<char32_t, char32_t> ranges[] = {
      {0x0610, 0x061A}, {0x064B, 0x065F}, {0x0670, 0x0670}, {0x06D6, 0x06DC},
      {0x06DF, 0x06E4}, {0x06E7, 0x06E8}, {0x06EA, 0x06ED}, {0x0640, 0x0640}};
  for (auto [lo, hi] : ranges) {
    if (ch >= lo && ch <= hi) return true;
  }
  return false;
}

TEST(Normalize, WalksTheArabicBlock) {
  for (char32_t ch = 0x0600; ch <= 0x06FF; ++ch) {
    std::u32string in = {U'ب', ch, U'ب'};
    NormalizedText out = normalize(utf8::Encode(in));
    if (removed_by_table(ch)) {
      EXPECT_EQ(out.text, U"بب") << std::hex << static_cast<unsigned>(ch);
    } else if (ch == 0x0622 || ch == 0x0623 || ch == 0x0625) {
      EXPECT_EQ(out.text, U"باب");
    } else {
      EXPECT_EQ(out.text, in) << std::hex << static_cast<unsigned>(ch);
    }
  }
}

TEST(Normalize, FoldsCaseAndKeepsOffsets) {
  NormalizedText out = normalize("Aَb إC");
  EXPECT_EQ(out.utf8(), "ab اc");
  ASSERT_EQ(out.offsets.size(), 5u);
  EXPECT_EQ(out.offsets, (std::vector<std::size_t>{0, 2, 3, 4, 5}));
  EXPECT_EQ(normalize_string("ÀÉ"), "àé");
}

TEST(Normalize, IsIdempotent) {
  Rng rng(11);
  for (int i = 0; i < kCases; ++i) {
    std::string text = testing::random_text(rng);
    std::string once = normalize_string(text);
    EXPECT_EQ(normalize_string(once), once);
  }
}

TEST(Normalize, OffsetsPointAtSourceCharacters) {
  Rng rng(12);
  for (int i = 0; i < kCases; ++i) {
    std::string text = testing::random_text(rng);
    std::u32string raw = utf8::Decode(text);
    NormalizedText n = normalize(text);
    ASSERT_EQ(n.text.size(), n.offsets.size());
    for (std::size_t k = 0; k < n.text.size(); ++k) {
      ASSERT_LT(n.offsets[k], raw.size());
      EXPECT_EQ(normalize(utf8::Encode(std::u32string(1, raw[n.offsets[k]])))
                    .text,
                std::u32string(1, n.text[k]));
      if (k > 0) EXPECT_LT(n.offsets[k - 1], n.offsets[k]);
    }
  }
}

TEST(Tokenize, SplitsTheInsuranceQuestion) {
  auto tokens =
      tokenize(normalize("ما هي الكارثة الأكثر كلفة والتي واجهت سوق التأمين؟"));
  std::vector<std::string> expected;
  for (const char *w : {"ما", "هي", "الكارثة", "الأكثر", "كلفة", "و", "التي",
                        "واجهت", "سوق", "التأمين"}) {
    expected.push_back(normalize_string(w));
  }
  EXPECT_EQ(word_units(tokens), expected);
  ASSERT_EQ(tokens.size(), 9u);
  EXPECT_EQ(tokens[5].proclitics, std::vector<std::string>{"و"});
  EXPECT_EQ(tokens[5].stem, "التي");
  EXPECT_TRUE(tokens[6].proclitics.empty());
}

TEST(Tokenize, StripsConjunctionPrepositionAndArticle) {
  auto tokens = tokenize(normalize("وبالقلم"));
  ASSERT_EQ(tokens.size(), 1u);
  EXPECT_EQ(tokens[0].proclitics,
            (std::vector<std::string>{"و", "ب", "ال"}));
  EXPECT_EQ(tokens[0].stem, "قلم");
  EXPECT_EQ(tokens[0].word_form(), "القلم");
  EXPECT_EQ(tokens[0].without_conjunction(), "بالقلم");
}

TEST(Tokenize, EncliticsNeedThreeStemLetters) {
  auto t = tokenize(normalize("كتابهم بيته"));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].stem, "كتاب");
  EXPECT_EQ(t[0].enclitics, std::vector<std::string>{"هم"});
  EXPECT_EQ(t[1].stem, "بيت");
  EXPECT_EQ(t[1].enclitics, std::vector<std::string>{"ه"});
  auto short_word = tokenize(normalize("منه"));
  EXPECT_TRUE(short_word[0].enclitics.empty());
}

TEST(Tokenize, SpansCoverSurfaces) {
  NormalizedText n = normalize("قال، الرجل: 2024 و text!");
  auto tokens = tokenize(n);
  ASSERT_EQ(tokens.size(), 5u);
  for (const auto &t : tokens) {
    EXPECT_EQ(utf8::Encode(std::u32string_view(n.text).substr(
                  t.span.begin, t.span.end - t.span.begin)),
              t.surface);
  }
}

// Enumerates every (conjunction, preposition, article, enclitic) choice the
// clitic tables allow, keeps the legal ones and prefers more proclitics in
// table order, then the longest enclitic.
Token oracle_segment(const std::u32string &w, const Segmenter &seg) {
  Token best;
  best.surface = utf8::Encode(w);
  best.stem = best.surface;
  auto all_letters = std::all_of(w.begin(), w.end(), is_arabic_letter);
  if (!all_letters || seg.is_protected(w)) return best;
  const std::vector<std::u32string> conjs = {U"", U"و", U"ف"};
  const std::vector<std::u32string> preps = {U"", U"ب", U"ل", U"ك"};
  const std::vector<std::u32string> arts = {U"", U"ال"};
  const std::vector<std::u32string> encs = {U"",   U"هما", U"كما", U"هم",
                                            U"هن", U"ها",  U"نا",  U"كم",
                                            U"كن", U"ه",   U"ك"};
  std::tuple<int, int, int, std::size_t> best_key{-1, -1, -1, 0};
  for (const auto &c : conjs) {
    for (const auto &p : preps) {
      for (const auto &a : arts) {
        for (const auto &e : encs) {
          std::u32string pre = c + p + a;
          if (pre.size() + e.size() >= w.size()) continue;
          if (w.compare(0, pre.size(), pre) != 0) continue;
          if (!e.empty() && w.compare(w.size() - e.size(), e.size(), e) != 0) {
            continue;
          }
          std::u32string after_c = w.substr(c.size());
          std::u32string stem =
              w.substr(pre.size(), w.size() - pre.size() - e.size());
          bool ok = true;
          if (!c.empty()) {
            ok &= after_c.size() >= 2;
            ok &= after_c[0] != U'ا' || after_c.rfind(U"ال", 0) == 0;
            // Once the conjunction is off, a protected rest stays whole.
            if (ok && seg.is_protected(after_c)) {
              ok = p.empty() && a.empty() && e.empty();
            }
          }
          if (!p.empty()) ok &= !a.empty();
          if (!a.empty()) ok &= stem.size() + e.size() >= 2 && e.empty();
          if (!p.empty()) ok &= stem.size() >= 2;
          if (!e.empty()) ok &= stem.size() >= 3;
          if (!ok) continue;
          std::tuple<int, int, int, std::size_t> key{
              !c.empty(), !p.empty(), !a.empty(), e.size()};
          if (key > best_key) {
            best_key = key;
            best.proclitics.clear();
            best.enclitics.clear();
            for (const auto *part : {&c, &p, &a}) {
              if (!part->empty()) best.proclitics.push_back(utf8::Encode(*part));
            }
            if (!e.empty()) best.enclitics.push_back(utf8::Encode(e));
            best.stem = utf8::Encode(stem);
          }
        }
      }
    }
  }
  return best;
}

TEST(Segmenter, MatchesExhaustiveCliticEnumeration) {
  const Segmenter &seg = Segmenter::Default();
  Rng rng(13);
  const std::vector<std::u32string> pre = {U"",   U"و",   U"ف",    U"ب",
                                           U"ال", U"وال", U"بال",  U"فبال",
                                           U"ول", U"كال", U"والا", U"وا"};
  const std::vector<std::u32string> post = {U"", U"ه", U"ها", U"هما", U"نا",
                                            U"كم", U"ك"};
  for (int i = 0; i < 1000; ++i) {
    std::u32string w = rng.pick(pre) +
                       utf8::Decode(testing::random_arabic_word(rng, 1, 5)) +
                       rng.pick(post);
    Token got = seg.segment(w, CharSpan{0, w.size()});
    Token want = oracle_segment(w, seg);
    EXPECT_EQ(got.proclitics, want.proclitics) << utf8::Encode(w);
    EXPECT_EQ(got.stem, want.stem) << utf8::Encode(w);
    EXPECT_EQ(got.enclitics, want.enclitics) << utf8::Encode(w);
  }
}

TEST(Segmenter, ReconstructsEverySurface) {
  Rng rng(14);
  for (int i = 0; i < 1000; ++i) {
    for (const Token &t : tokenize(normalize(testing::random_text(rng, 3)))) {
      EXPECT_EQ(join(t.proclitics) + t.stem + join(t.enclitics), t.surface);
      EXPECT_FALSE(t.stem.empty());
    }
  }
}

TEST(Segmenter, ProtectedWordsStayWhole) {
  Segmenter seg;
  seg.protect("فرنسا");
  auto t = tokenize(normalize("فرنسا وفرنسا"), seg);
  EXPECT_TRUE(t[0].proclitics.empty());
  EXPECT_EQ(t[0].stem, "فرنسا");
  EXPECT_EQ(t[1].proclitics, std::vector<std::string>{"و"});
  EXPECT_EQ(t[1].stem, "فرنسا");
  auto plain = tokenize(normalize("فرنسا"), Segmenter());
  EXPECT_EQ(plain[0].stem, "فرنسا");  // in the built-in list too
}

StopList sample_stops() {
  std::istringstream in(
      "# comment\nما\tinterrogative\nفي\tpreposition\nو\tconjunction\nهي\n"
      "التي\tinterrogative\n");
  return StopList::parse(in, "test");
}

TEST(StopList, ParsesCategories) {
  StopList stops = sample_stops();
  EXPECT_EQ(stops.size(), 5u);
  EXPECT_EQ(stops.category("ما"), StopCategory::kInterrogative);
  EXPECT_EQ(stops.category("هي"), StopCategory::kOther);
  EXPECT_FALSE(stops.contains("قناة"));
  std::istringstream bad("ما\tverb\n");
  EXPECT_THROW(StopList::parse(bad, "bad"), DataError);
}

TEST(StopList, RemovesFunctionWordsAndConjunctions) {
  StopList stops = sample_stops();
  auto tokens = tokenize(normalize("ما هي الكارثة والتي وسوق في"));
  auto kept = remove_stop_words(tokens, stops);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].surface, "الكارثة");
  EXPECT_EQ(kept[1].surface, "سوق");
  EXPECT_TRUE(kept[1].proclitics.empty());
  EXPECT_EQ(kept[1].span.begin, tokens[4].span.begin + 1);
}

TEST(StopList, RemovalIsIdempotentAndOrderPreserving) {
  StopList stops = sample_stops();
  Rng rng(15);
  for (int i = 0; i < kCases; ++i) {
    auto tokens = tokenize(normalize(testing::random_text(rng)));
    auto once = remove_stop_words(tokens, stops);
    EXPECT_EQ(remove_stop_words(once, stops), once);
    std::size_t last = 0;
    for (const auto &t : once) {
      EXPECT_FALSE(is_stop_token(t, stops));
      EXPECT_FALSE(t.has_conjunction());
      EXPECT_GE(t.span.begin, last);
      last = t.span.begin;
    }
  }
}

TEST(StopList, LoadsBundledList) {
  StopList stops = StopList::load(testing::source_path("data/stopwords.txt"));
  for (const char *w : {"ما", "هي", "و", "التي", "في"}) {
    EXPECT_TRUE(stops.contains(normalize_string(w))) << w;
  }
  EXPECT_THROW(StopList::load("/nonexistent/stops.txt"), ConfigError);
}

}  // namespace
}  // namespace qapipe
