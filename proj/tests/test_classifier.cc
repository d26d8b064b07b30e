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

#include "qapipe/classifier.h"
#include "qapipe/errors.h"
#include "test_support.h"

namespace qapipe {
namespace {

using testing::Rng;

class HeuristicQuestionTagger : public QuestionTagger {
 public:
  std::vector<TaggedToken> tag_question(std::string_view text) const override {
    auto tokens = tokenize(normalize(text));
    if (tokens.empty()) throw EmptyQuestion();
    return tag(tokens, tagger_);
  }

 private:
  HeuristicTagger tagger_;
};

TEST(QuestionClass, ParsesTaxonomyLabels) {
  EXPECT_EQ(QuestionClass::parse("HUMAN:individual").label(), "HUMAN:individual");
  EXPECT_EQ(QuestionClass::parse("NUMBER:count").label(), "NUMERIC:count");
  EXPECT_EQ(QuestionClass::parse("NUMBER: count").label(), "NUMERIC:count");
  EXPECT_EQ(QuestionClass::parse("LOCATION:Country").label(), "LOCATION:country");
  EXPECT_THROW(QuestionClass::parse("HUMAN:planet"), IllegalLabel);
  EXPECT_THROW(QuestionClass::parse("ANIMAL:dog"), IllegalLabel);
  EXPECT_THROW(QuestionClass::parse("HUMAN"), IllegalLabel);
  EXPECT_EQ(QuestionClass::all().size(), 24u);
  EXPECT_FALSE(QuestionClass::make(CoarseClass::kEntity, "city").has_value());
}

TEST(Features, DescribeTheFirstQuestion) {
  HeuristicQuestionTagger tagger;
  FeatureVector x = extract_features(tagger.tag_question("ما هي قناة جذر الأسنان؟"));
  FeatureVector want = {
      {"uni:ما", 1},        {"uni:هي", 1},         {"uni:قناة", 1},
      {"uni:جذر", 1},       {"uni:اسنان", 1},      {"bi:ما_هي", 1},
      {"bi:هي_قناة", 1},    {"wh:ما", 1},          {"head:قناة", 1},
      {"len:4-7", 1}};
  EXPECT_EQ(x, want);
  EXPECT_THROW(extract_features({}), EmptyQuestion);
  auto digits = extract_features(tagger.tag_question("متى 1989"));
  EXPECT_EQ(digits.count("num:digit"), 1u);
  EXPECT_EQ(digits.count("len:1-3"), 1u);
}

Model random_model(Rng &rng, const std::vector<std::string> &features) {
  std::vector<QuestionClass> labels;
  std::map<std::string, std::map<std::string, double>> weights;
  std::map<std::string, double> bias;
  auto all = QuestionClass::all();
  int n = rng.between(2, 6);
  for (int i = 0; i < n; ++i) {
    const QuestionClass &l = rng.pick(all);
    if (std::find(labels.begin(), labels.end(), l) != labels.end()) continue;
    labels.push_back(l);
    for (const auto &f : features) {
      if (rng.chance(0.5)) weights[l.label()][f] = rng.real(-3, 3);
    }
    bias[l.label()] = rng.real(-1, 1);
  }
  return Model(labels, weights, bias, {});
}

TEST(Classify, ArgmaxIsScaleInvariant) {
  Rng rng(51);
  std::vector<std::string> features;
  for (int i = 0; i < 12; ++i) features.push_back("uni:f" + std::to_string(i));
  for (int i = 0; i < testing::kCases; ++i) {
    Model m = random_model(rng, features);
    FeatureVector x;
    for (const auto &f : features) {
      if (rng.chance(0.4)) x[f] = rng.between(1, 3);
    }
    double factor = rng.real(0.01, 100.0);
    Prediction a = classify(m, x);
    Prediction b = classify(m.scaled(factor), x);
    EXPECT_EQ(a.label, b.label);
    EXPECT_NEAR(b.margin, a.margin * factor, 1e-9 * (1 + b.margin));
    EXPECT_GE(a.margin, 0.0);
  }
}

TEST(Classify, TiesGoToTheSmallerLabel) {
  auto human = QuestionClass::parse("HUMAN:individual");
  auto entity = QuestionClass::parse("ENTITY:color");
  Model m({human, entity}, {}, {}, {});
  Prediction p = classify(m, FeatureVector{{"uni:x", 1.0}});
  EXPECT_EQ(p.label, entity);
  EXPECT_EQ(p.margin, 0.0);
}

std::vector<TrainingExample> small_set() {
  auto ex = [](const char *id, const char *text, const char *label) {
    return TrainingExample{id, text, QuestionClass::parse(label)};
  };
  return {ex("1", "من هو أول أمريكي صعد الفضاء؟", "HUMAN:individual"),
          ex("2", "من اخترع المصباح الكهربائي؟", "HUMAN:individual"),
          ex("3", "كم عدد الكواكب؟", "NUMERIC:count"),
          ex("4", "كم عدد أيام السنة؟", "NUMERIC:count"),
          ex("5", "ما هي عاصمة فرنسا؟", "LOCATION:city"),
          ex("6", "ما هي عاصمة مصر؟", "LOCATION:city"),
          ex("7", "متى سقط جدار برلين؟", "NUMERIC:date"),
          ex("8", "لماذا تهاجر الطيور؟", "DESCRIPTION:reason")};
}

TEST(Train, FitsItsTrainingSetDeterministically) {
  HeuristicQuestionTagger tagger;
  auto data = small_set();
  Model a = train(data, TrainOptions{10, 7}, tagger);
  Model b = train(data, TrainOptions{10, 7}, tagger);
  EXPECT_EQ(a.to_json_text(), b.to_json_text());
  for (const auto &ex : data) {
    EXPECT_EQ(classify(a, tagger.tag_question(ex.text)).label, ex.label) << ex.text;
  }
  EXPECT_EQ(a.labels().size(), 5u);
  EXPECT_EQ(a.metadata().examples, data.size());
  EXPECT_EQ(a.metadata().seed, 7u);
  EXPECT_EQ(a.metadata().training_hash.size(), 16u);
}

TEST(Train, RejectsEmptyData) {
  HeuristicQuestionTagger tagger;
  EXPECT_THROW(train({}, TrainOptions{}, tagger), EmptyTrainingSet);
  auto data = small_set();
  EXPECT_THROW(train(data, TrainOptions{0, 1}, tagger), ConfigError);
}

TEST(Model, RoundTripsThroughJson) {
  HeuristicQuestionTagger tagger;
  Model a = train(small_set(), TrainOptions{5, 3}, tagger);
  std::string text = a.to_json_text();
  Model b = Model::from_json_text(text, "mem");
  EXPECT_EQ(b.to_json_text(), text);
  EXPECT_EQ(b.labels(), a.labels());
}

TEST(Model, RejectsUnknownVersionAndGarbage) {
  EXPECT_THROW(Model::from_json_text(R"({"version": 2})", "v2"), DataError);
  EXPECT_THROW(Model::from_json_text("not json", "junk"), DataError);
  EXPECT_THROW(Model::load("/nonexistent/model.json"), ConfigError);
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

}  // namespace
}  // namespace qapipe
