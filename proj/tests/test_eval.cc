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

#include <regex>
#include <sstream>

#include "qapipe/errors.h"
#include "qapipe/eval.h"
#include "oracles.h"
#include "test_support.h"

namespace qapipe {
namespace {

using testing::independent_mrr;
using testing::Rng;

TEST(Mrr, WorkedValues) {
  EXPECT_EQ(mrr(std::vector<int>{1, 1, 1}), 1.0);
  EXPECT_EQ(mrr(std::vector<int>{1, 2, 0}), 0.5);
  EXPECT_EQ(mrr(std::vector<int>{0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(mrr(std::vector<int>{4}), 0.25);
  EXPECT_THROW(mrr(std::vector<int>{}), EmptyList);
}

TEST(Mrr, AgreesWithIndependentEvaluator) {
  Rng rng(81);
  for (int i = 0; i < testing::kCases; ++i) {
    std::vector<int> ranks(static_cast<std::size_t>(rng.between(1, 300)));
    for (int &r : ranks) r = rng.between(0, 10);
    EXPECT_NEAR(mrr(ranks), independent_mrr(ranks), 1e-12);
  }
}

TEST(Mrr, PermutationInvariantBoundedMonotone) {
  Rng rng(82);
  for (int i = 0; i < testing::kCases; ++i) {
    std::vector<int> ranks(static_cast<std::size_t>(rng.between(1, 40)));
    for (int &r : ranks) r = rng.between(0, 6);
    double base = mrr(ranks);
    EXPECT_GE(base, 0.0);
    EXPECT_LE(base, 1.0);
    auto shuffled = ranks;
    std::shuffle(shuffled.begin(), shuffled.end(), rng.engine());
    EXPECT_NEAR(mrr(shuffled), base, 1e-12);
    auto worse = ranks;
    auto k = static_cast<std::size_t>(rng.between(0, static_cast<int>(ranks.size()) - 1));
    worse[k] = rng.chance(0.3) ? 0 : (worse[k] == 0 ? 0 : worse[k] + rng.between(0, 3));
    EXPECT_LE(mrr(worse), base + 1e-15);
    int r = rng.between(1, 50);
    EXPECT_DOUBLE_EQ(mrr(std::vector<int>{r}), 1.0 / r);
  }
}

TEST(FirstCorrectRank, ScansInOrder) {
  std::vector<std::string> texts = {"لا", "ليس هذا", "آلان شيبرد", "شيبرد", "x"};
  std::vector<std::string> p1 = {"شيبرد", "ال[اأ]ن"};
  EXPECT_EQ(first_correct_rank(texts, p1), 3);
  std::vector<std::string> p2 = {"^لا$"};
  EXPECT_EQ(first_correct_rank(texts, p2), 1);
  std::vector<std::string> none = {"غيتس"};
  EXPECT_EQ(first_correct_rank(texts, none), 0);
  std::vector<std::string> bad = {"(("};
  EXPECT_THROW(first_correct_rank(texts, bad), BadPattern);
}

TEST(FirstCorrectRank, AgreesWithLinearScan) {
  Rng rng(83);
  const std::vector<std::string> pool = {"12", "عام 1989", "باريس", "abc", "x1"};
  const std::vector<std::string> patterns = {"\\d\\d", "^باريس$", "b", "1989"};
  for (int i = 0; i < testing::kCases; ++i) {
    std::vector<std::string> texts;
    int n = rng.between(0, 6);
    for (int k = 0; k < n; ++k) texts.push_back(rng.pick(pool));
    std::vector<std::string> ps = {rng.pick(patterns), rng.pick(patterns)};
    int want = 0;
    for (std::size_t k = 0; k < texts.size() && want == 0; ++k) {
      for (const auto &p : ps) {
        if (std::regex_search(texts[k], std::regex(p))) {
          want = static_cast<int>(k + 1);
          break;
        }
      }
    }
    EXPECT_EQ(first_correct_rank(texts, ps), want);
  }
}

TEST(NormalizePattern, KeepsEscapes) {
  EXPECT_EQ(normalize_pattern("أ\\D"), "ا\\D");
  EXPECT_EQ(normalize_pattern("A\\.b"), "a\\.b");
  EXPECT_EQ(normalize_pattern("كَ"), "ك");
}

std::vector<QuestionResult> fifty_per_type_ranks() {
  std::vector<QuestionResult> out;
  auto add = [&out](CoarseClass c, int ones, int twos) {
    for (int i = 0; i < 50; ++i) {
      int r = i < ones ? 1 : (i < ones + twos ? 2 : 0);
      out.push_back({std::string(to_string(c)) + std::to_string(i), c, r, "", ""});
    }
  };
  add(CoarseClass::kHuman, 39, 0);
  add(CoarseClass::kNumeric, 31, 0);
  add(CoarseClass::kLocation, 36, 1);
  add(CoarseClass::kEntity, 28, 0);
  add(CoarseClass::kDescription, 27, 0);
  return out;
}

TEST(Report, RendersFiftyPerTypeTable) {
  EvalReport r = report_from_ranks(fifty_per_type_ranks(), 5);
  EXPECT_EQ(r.average_mode, "macro");
  EXPECT_EQ(r.render_table(),
            "Question Type   Number  MRR\n"
            "HUMAN           50      .78\n"
            "NUMERIC         50      .62\n"
            "LOCATION        50      .73\n"
            "ENTITY          50      .56\n"
            "DESCRIPTION     50      .54\n"
            "AVERAGE         50      .65\n");
}

TEST(Report, LoadsRankFile) {
  auto ranks = load_rank_file(testing::source_path("tests/data/fifty_per_type_ranks.tsv"));
  EXPECT_EQ(ranks.size(), 250u);
  EXPECT_EQ(report_from_ranks(ranks, 5), report_from_ranks(fifty_per_type_ranks(), 5));
  std::istringstream bad("q1\tHUMAN\tx\n");
  EXPECT_THROW(parse_rank_file(bad, "t"), DataError);
  std::istringstream bad_type("q1\tANIMAL\t1\n");
  EXPECT_THROW(parse_rank_file(bad_type, "t"), DataError);
}

TEST(Report, MicroAverageForUnequalCounts) {
  std::vector<QuestionResult> rs = {{"a", CoarseClass::kHuman, 1, "", ""},
                                    {"b", CoarseClass::kHuman, 0, "", ""},
                                    {"c", CoarseClass::kEntity, 2, "", ""}};
  EvalReport r = report_from_ranks(rs, 5);
  EXPECT_EQ(r.average_mode, "micro");
  EXPECT_DOUBLE_EQ(r.average, 0.5);
  EXPECT_DOUBLE_EQ(r.per_type.at(CoarseClass::kHuman).mrr, 0.5);
  EXPECT_EQ(r.render_table().substr(r.render_table().rfind("AVERAGE")),
            "AVERAGE         3       .50\n");
  EXPECT_THROW(report_from_ranks({{"z", CoarseClass::kHuman, 6, "", ""}}, 5),
               DataError);
}

TEST(Report, RoundTripsThroughJson) {
  EvalReport r = report_from_ranks(fifty_per_type_ranks(), 5);
  r.per_question[3].error = "boom";
  r.per_question[4].predicted = "HUMAN:group";
  EvalReport back = EvalReport::from_json_text(r.to_json_text(), "mem");
  EXPECT_EQ(back, r);
  EXPECT_EQ(back.to_json_text(), r.to_json_text());
  EXPECT_THROW(EvalReport::from_json_text("[]", "bad"), DataError);
}

TEST(FormatMrr, DropsLeadingZero) {
  EXPECT_EQ(format_mrr(0.646), ".65");
  EXPECT_EQ(format_mrr(0.0), ".00");
  EXPECT_EQ(format_mrr(1.0), "1.00");
}

TEST(Questions, ParseJsonl) {
  std::istringstream in(
      R"({"id": "q1", "text": "كم عدد الأشهر؟", "class": "NUMBER:count", "answers": ["12"]})"
      "\n\n"
      R"({"id": "q2", "text": "ما هي؟"})"
      "\n");
  auto qs = parse_questions(in, "t");
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[0].gold_class->label(), "NUMERIC:count");
  EXPECT_EQ(qs[0].answer_patterns, std::vector<std::string>{"12"});
  EXPECT_FALSE(qs[1].gold_class.has_value());

  std::istringstream bad_label(R"({"id": "x", "text": "t", "class": "HUMAN:planet"})");
  EXPECT_THROW(parse_questions(bad_label, "t"), IllegalLabel);
  std::istringstream bad_pattern(R"({"id": "x", "text": "t", "answers": ["(("]})");
  EXPECT_THROW(parse_questions(bad_pattern, "t"), DataError);
  std::istringstream missing(R"({"text": "t"})");
  EXPECT_THROW(parse_questions(missing, "t"), DataError);
}

EvalQuestion q(const char *id, const char *label, std::vector<std::string> answers) {
  return EvalQuestion{id, "text", QuestionClass::parse(label), std::move(answers)};
}

TEST(Evaluate, AggregatesAndSurvivesFailures) {
  std::vector<EvalQuestion> data = {q("a", "HUMAN:individual", {"x"}),
                                    q("b", "HUMAN:individual", {"y"}),
                                    q("c", "ENTITY:color", {"z"}),
                                    q("d", "ENTITY:color", {"q"})};
  AnswerFn fn = [](const EvalQuestion &question) {
    if (question.id == "d") throw InputError("no luck");
    std::vector<AnswerCandidate> out;
    for (const char *t : {"w", "x", "y", "z", "x", "y"}) {
      out.push_back(AnswerCandidate{t, CandidateKind::kEntity, "doc", 0, 0.0, {}});
    }
    return std::make_pair(out, std::string("HUMAN:individual"));
  };
  EvalReport r = evaluate(fn, data, 3);
  EXPECT_EQ(r.per_question[0].rank, 2);
  EXPECT_EQ(r.per_question[1].rank, 3);
  EXPECT_EQ(r.per_question[2].rank, 0);  // beyond top
  EXPECT_EQ(r.per_question[3].rank, 0);
  EXPECT_EQ(r.per_question[3].error, "no luck");
  EXPECT_DOUBLE_EQ(r.per_type.at(CoarseClass::kHuman).mrr, (0.5 + 1.0 / 3) / 2);
  EXPECT_EQ(r.per_type.at(CoarseClass::kEntity).mrr, 0.0);
  EXPECT_EQ(r.top, 3u);
  EXPECT_THROW(evaluate(fn, {}, 3), EmptyList);
  std::vector<EvalQuestion> unlabeled = {EvalQuestion{"u", "t", std::nullopt, {"x"}}};
  EXPECT_THROW(evaluate(fn, unlabeled, 3), MissingGoldClass);
}

TEST(Evaluate, AbsentAnswersScoreZero) {
  std::vector<EvalQuestion> data = {q("a", "HUMAN:individual", {"absent"}),
                                    q("b", "NUMERIC:count", {"absent"})};
  AnswerFn fn = [](const EvalQuestion &) {
    return std::make_pair(
        std::vector<AnswerCandidate>{{"present", CandidateKind::kSentence, "d", 0, 1, {}}},
        std::string());
  };
  EvalReport r = evaluate(fn, data, 5);
  EXPECT_EQ(r.average, 0.0);
  for (const auto &[type, score] : r.per_type) EXPECT_EQ(score.mrr, 0.0);
}

}  // namespace
}  // namespace qapipe
