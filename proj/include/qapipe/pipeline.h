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

#ifndef QAPIPE_PIPELINE_H_
#define QAPIPE_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qapipe/analysis.h"
#include "qapipe/classifier.h"
#include "qapipe/expansion.h"
#include "qapipe/extraction.h"
#include "qapipe/retrieval.h"
#include "qapipe/tagger.h"
#include "qapipe/text.h"

namespace qapipe {

struct PipelineConfig {
  std::filesystem::path stopwords = "data/stopwords.txt";
  std::filesystem::path lexicon = "data/lexicon.tsv";
  std::filesystem::path gazetteers = "data/gazetteers";
  std::filesystem::path model = "data/model.json";
  // A saved index wins over the corpus when set.
  std::filesystem::path index;
  std::filesystem::path corpus = "data/fixture/corpus";
  std::size_t k = 10;
  std::size_t m = 3;
  std::size_t top = 5;
  double syn_weight = kDefaultSynonymWeight;
  // "heuristic" or "pretagged:<path>".
  std::string tagger = "heuristic";

  // JSON object with any subset of the fields above. Relative paths are
  // resolved against the file's directory.
  static PipelineConfig load(const std::filesystem::path &path);
  static PipelineConfig from_json_text(std::string_view text,
                                       const std::filesystem::path &base_dir,
                                       const std::string &source);
  std::string to_json_text() const;

  // Parameter ranges only; paths are checked when loaded. Throws ConfigError.
  void validate() const;
};

// Builds the tagger named by a selector string. Pretagged backends fall back
// to the heuristic tagger for sentences not in the file.
std::shared_ptr<const TaggerBackend> make_backend(std::string_view selector);

// Stop list, segmenter, tagger, lexicon and gazetteers: everything needed to
// turn raw text into tagged tokens. Gazetteer words are protected from clitic
// stripping.
class TextFrontEnd : public QuestionTagger {
 public:
  TextFrontEnd(StopList stops, SynonymLexicon lexicon, Gazetteers gazetteers,
               std::shared_ptr<const TaggerBackend> backend);

  static TextFrontEnd load(const PipelineConfig &config);

  // Throws EmptyQuestion when text has no tokens.
  std::vector<TaggedToken> tag_question(std::string_view text) const override;

  const StopList &stops() const { return stops_; }
  const SynonymLexicon &lexicon() const { return lexicon_; }
  const Gazetteers &gazetteers() const { return gazetteers_; }
  const Segmenter &segmenter() const { return segmenter_; }
  const TaggerBackend &backend() const { return *backend_; }

 private:
  StopList stops_;
  SynonymLexicon lexicon_;
  Gazetteers gazetteers_;
  Segmenter segmenter_;
  std::shared_ptr<const TaggerBackend> backend_;
};

std::vector<Document> make_documents(std::span<const RawDocument> raw,
                                     const TextFrontEnd &front_end);

struct AskResult {
  QuestionAnalysis analysis;
  std::vector<ScoredDoc> documents;
  std::vector<AnswerCandidate> answers;
};

class Pipeline {
 public:
  Pipeline(PipelineConfig config, TextFrontEnd front_end,
           std::optional<Model> model, std::optional<Index> index);

  // Loads the front end, plus the model and index when asked for.
  static Pipeline load(const PipelineConfig &config, bool need_model,
                       bool need_index);

  // Analysis without a model leaves qclass empty.
  QuestionAnalysis analyze(std::string_view question) const;

  // Retrieval (k docs), passages (first m), extraction, focus ranking (top).
  AskResult ask(std::string_view question) const;
  AskResult ask(std::string_view question, std::size_t top) const;

  const PipelineConfig &config() const { return config_; }
  const TextFrontEnd &front_end() const { return front_end_; }
  const Model *model() const { return model_ ? &*model_ : nullptr; }
  const Index *index() const { return index_ ? &*index_ : nullptr; }

 private:
  PipelineConfig config_;
  TextFrontEnd front_end_;
  std::optional<Model> model_;
  std::optional<Index> index_;
};

}  // namespace qapipe

#endif  // QAPIPE_PIPELINE_H_
