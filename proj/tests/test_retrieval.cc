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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "qapipe/errors.h"
#include "qapipe/retrieval.h"
#include "oracles.h"
#include "test_support.h"

namespace qapipe {
namespace {

using testing::Rng;
using testing::dense_rank;
using testing::random_case;
using testing::RandomCase;

TEST(Retrieve, MatchesDenseCosine) {
  Rng rng(61);
  for (int i = 0; i < testing::kCases; ++i) {
    RandomCase c = random_case(rng);
    Index index = Index::build(c.docs);
    auto got = retrieve(index, c.query, 10);
    auto want = dense_rank(c, 10);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t r = 0; r < got.size(); ++r) {
      EXPECT_EQ(got[r].id, want[r].id);
      EXPECT_NEAR(got[r].score, want[r].score, 1e-9);
    }
  }
}

TEST(Retrieve, ScoresAreCosines) {
  Rng rng(62);
  for (int i = 0; i < testing::kCases; ++i) {
    RandomCase c = random_case(rng);
    Index index = Index::build(c.docs);
    for (const auto &s : retrieve(index, c.query, 50)) {
      EXPECT_GT(s.score, 0.0);
      EXPECT_LE(s.score, 1.0 + 1e-12);
    }
  }
}

TEST(Retrieve, IdenticalDocumentsTieOnId) {
  std::vector<Document> docs = {{"b", "", {{"x", 1}}},
                                {"a", "", {{"x", 1}}},
                                {"c", "", {{"y", 1}}}};
  Index index = Index::build(docs);
  ExpandedQuery q{{QueryTerm{"x", 1.0, ""}}};
  auto ranked = retrieve(index, q, 10);
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_EQ(ranked[0].id, "a");
  EXPECT_EQ(ranked[1].id, "b");
  EXPECT_DOUBLE_EQ(ranked[0].score, 1.0);
  EXPECT_THROW(retrieve(index, q, 0), ConfigError);
}

TEST(Index, RejectsBadCorpora) {
  EXPECT_THROW(Index::build({}), EmptyCorpus);
  std::vector<Document> dup = {{"a", "", {}}, {"a", "", {}}};
  EXPECT_THROW(Index::build(dup), DuplicateDocId);
}

TEST(Index, RoundTripsThroughJson) {
  Rng rng(63);
  for (int i = 0; i < 20; ++i) {
    RandomCase c = random_case(rng);
    Index index = Index::build(c.docs);
    std::string text = index.to_json_text();
    Index back = Index::from_json_text(text, "mem");
    EXPECT_EQ(back.to_json_text(), text);
    auto a = retrieve(index, c.query, 10);
    auto b = retrieve(back, c.query, 10);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
      EXPECT_EQ(a[r].id, b[r].id);
      EXPECT_DOUBLE_EQ(a[r].score, b[r].score);
    }
  }
  EXPECT_THROW(Index::from_json_text(R"({"version": 9})", "v9"), DataError);
  EXPECT_THROW(Index::from_json_text("{", "junk"), DataError);
}

TEST(Corpus, LoadsDirectoryAndJsonl) {
  auto dir = load_corpus(testing::source_path("data/fixture/corpus"));
  ASSERT_GE(dir.size(), 25u);
  EXPECT_TRUE(std::is_sorted(dir.begin(), dir.end(),
                             [](const RawDocument &a, const RawDocument &b) {
                               return a.id < b.id;
                             }));
  auto path = std::filesystem::temp_directory_path() / "qapipe_corpus.jsonl";
  {
    std::ofstream out(path);
    out << R"({"id": "x", "text": "نص أول"})" << "\n\n"
        << R"({"id": "y", "text": "نص ثان"})" << "\n";
  }
  auto jsonl = load_corpus(path);
  ASSERT_EQ(jsonl.size(), 2u);
  EXPECT_EQ(jsonl[1].id, "y");
  {
    std::ofstream out(path);
    out << "{broken\n";
  }
  EXPECT_THROW(load_corpus(path), DataError);
  std::filesystem::remove(path);
  EXPECT_THROW(load_corpus("/nonexistent/corpus"), ConfigError);
}

TEST(Document, UsesContentStems) {
  StopList stops;
  stops.add("في", StopCategory::kPreposition);
  Document d = make_document("d", "يقع البرج في المدينة والبرج قديم", stops);
  EXPECT_EQ(d.term_counts.at("برج"), 2);
  EXPECT_EQ(d.term_counts.count("في"), 0u);
  EXPECT_EQ(d.raw_text, "يقع البرج في المدينة والبرج قديم");
}

TEST(Passages, FollowRankThenSentenceOrder) {
  StopList stops;
  std::vector<Document> docs = {
      make_document("a", "جملة أولى عن البرج. جملة ثانية.", stops),
      make_document("b", "البرج البرج هنا.", stops),
      make_document("c", "لا شيء.", stops)};
  Index index = Index::build(docs);
  std::vector<ScoredDoc> ranked = {{"b", 0.9}, {"a", 0.5}, {"c", 0.1}};
  auto passages = select_passages(index, ranked, 2);
  ASSERT_EQ(passages.size(), 3u);
  EXPECT_EQ(passages[0].doc_id, "b");
  EXPECT_EQ(passages[1].doc_id, "a");
  EXPECT_EQ(passages[1].sentence, 0u);
  EXPECT_EQ(passages[2].sentence, 1u);
  EXPECT_EQ(passages[2].text, "جملة ثانية");
  EXPECT_THROW(select_passages(index, ranked, 0), ConfigError);
}

}  // namespace
}  // namespace qapipe
