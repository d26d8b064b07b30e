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

#include "qapipe/pipeline.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qapipe/errors.h"
#include "qapipe/focus.h"

namespace qapipe {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kPretaggedPrefix = "pretagged:";

fs::path resolve(const fs::path &base, const std::string &value) {
  fs::path p(value);
  return p.empty() || p.is_absolute() || base.empty() ? p : base / p;
}

void require_exists(const fs::path &path, const char *what) {
  if (!fs::exists(path)) {
    throw ConfigError(std::string(what) + " not found: " + path.string());
  }
}

}  // namespace

PipelineConfig PipelineConfig::load(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str(), path.parent_path(), path.string());
}

PipelineConfig PipelineConfig::from_json_text(std::string_view text,
                                              const fs::path &base_dir,
                                              const std::string &source) {
  PipelineConfig c;
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw ConfigError(source + ": expected an object");
    for (const auto &[key, value] : doc.items()) {
      if (key == "stopwords") {
        c.stopwords = resolve(base_dir, value.get<std::string>());
      } else if (key == "lexicon") {
        c.lexicon = resolve(base_dir, value.get<std::string>());
      } else if (key == "gazetteers") {
        c.gazetteers = resolve(base_dir, value.get<std::string>());
      } else if (key == "model") {
        c.model = resolve(base_dir, value.get<std::string>());
      } else if (key == "index") {
        c.index = resolve(base_dir, value.get<std::string>());
      } else if (key == "corpus") {
        c.corpus = resolve(base_dir, value.get<std::string>());
      } else if (key == "k") {
        c.k = value.get<std::size_t>();
      } else if (key == "m") {
        c.m = value.get<std::size_t>();
      } else if (key == "top") {
        c.top = value.get<std::size_t>();
      } else if (key == "syn_weight") {
        c.syn_weight = value.get<double>();
      } else if (key == "tagger") {
        std::string sel = value.get<std::string>();
        if (sel.rfind(kPretaggedPrefix, 0) == 0) {
          sel = std::string(kPretaggedPrefix) +
                resolve(base_dir, sel.substr(kPretaggedPrefix.size())).string();
        }
        c.tagger = sel;
      } else {
        throw ConfigError(source + ": unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception &e) {
    throw ConfigError(source + ": " + e.what());
  }
  c.validate();
  return c;
}

std::string PipelineConfig::to_json_text() const {
  json doc = {{"stopwords", stopwords.string()},
              {"lexicon", lexicon.string()},
              {"gazetteers", gazetteers.string()},
              {"model", model.string()},
              {"index", index.string()},
              {"corpus", corpus.string()},
              {"k", k},
              {"m", m},
              {"top", top},
              {"syn_weight", syn_weight},
              {"tagger", tagger}};
  return doc.dump(1) + "\n";
}

void PipelineConfig::validate() const {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (m < 1) throw ConfigError("m must be >= 1");
  if (m > k) throw ConfigError("m must not exceed k");
  if (top < 1) throw ConfigError("top must be >= 1");
  if (!(syn_weight > 0.0 && syn_weight <= 1.0)) {
    throw ConfigError("syn_weight must be in (0, 1]");
  }
  if (tagger != "heuristic" && tagger.rfind(kPretaggedPrefix, 0) != 0) {
    throw ConfigError("tagger must be 'heuristic' or 'pretagged:<path>'");
  }
}

std::shared_ptr<const TaggerBackend> make_backend(std::string_view selector) {
  if (selector == "heuristic") return std::make_shared<HeuristicTagger>();
  if (selector.rfind(kPretaggedPrefix, 0) == 0) {
    fs::path path(std::string(selector.substr(kPretaggedPrefix.size())));
    require_exists(path, "pre-tagged file");
    auto tagger = std::make_shared<PretaggedTagger>(PretaggedTagger::load(path));
    tagger->set_fallback(std::make_shared<HeuristicTagger>());
    return tagger;
  }
  throw ConfigError("unknown tagger backend: " + std::string(selector));
}

TextFrontEnd::TextFrontEnd(StopList stops, SynonymLexicon lexicon,
                           Gazetteers gazetteers,
                           std::shared_ptr<const TaggerBackend> backend)
    : stops_(std::move(stops)),
      lexicon_(std::move(lexicon)),
      gazetteers_(std::move(gazetteers)),
      backend_(std::move(backend)) {
  // Names must survive segmentation intact (فرنسا is not ف + رنسا). Words
  // carrying the article are left to the normal rules.
  for (const auto &entry : gazetteers_.entries()) {
    for (const auto &w : entry.words) {
      if (w.rfind("ال", 0) != 0) segmenter_.protect(w);
    }
  }
}

TextFrontEnd TextFrontEnd::load(const PipelineConfig &config) {
  config.validate();
  require_exists(config.stopwords, "stop list");
  require_exists(config.lexicon, "lexicon");
  require_exists(config.gazetteers, "gazetteer directory");
  return TextFrontEnd(StopList::load(config.stopwords),
                      SynonymLexicon::load(config.lexicon),
                      Gazetteers::load(config.gazetteers),
                      make_backend(config.tagger));
}

std::vector<TaggedToken> TextFrontEnd::tag_question(
    std::string_view text) const {
  std::vector<Token> tokens = tokenize(normalize(text), segmenter_);
  if (tokens.empty()) throw EmptyQuestion();
  return tag(tokens, *backend_);
}

std::vector<Document> make_documents(std::span<const RawDocument> raw,
                                     const TextFrontEnd &front_end) {
  std::vector<Document> docs;
  docs.reserve(raw.size());
  for (const auto &r : raw) {
    docs.push_back(
        make_document(r.id, r.text, front_end.stops(), front_end.segmenter()));
  }
  return docs;
}

Pipeline::Pipeline(PipelineConfig config, TextFrontEnd front_end,
                   std::optional<Model> model, std::optional<Index> index)
    : config_(std::move(config)),
      front_end_(std::move(front_end)),
      model_(std::move(model)),
      index_(std::move(index)) {}

Pipeline Pipeline::load(const PipelineConfig &config, bool need_model,
                        bool need_index) {
  TextFrontEnd front_end = TextFrontEnd::load(config);
  std::optional<Model> model;
  if (need_model) {
    require_exists(config.model, "model");
    model = Model::load(config.model);
  }
  std::optional<Index> index;
  if (need_index) {
    if (!config.index.empty()) {
      require_exists(config.index, "index");
      index = Index::load(config.index);
    } else {
      require_exists(config.corpus, "corpus");
      std::vector<Document> docs =
          make_documents(load_corpus(config.corpus), front_end);
      index = Index::build(docs);
    }
  }
  return Pipeline(config, std::move(front_end), std::move(model),
                  std::move(index));
}

QuestionAnalysis Pipeline::analyze(std::string_view question) const {
  QuestionAnalysis a;
  a.text = std::string(question);
  a.normalized = normalize(question);
  std::vector<Token> tokens = tokenize(a.normalized, front_end_.segmenter());
  if (tokens.empty()) throw EmptyQuestion();
  a.tagged = tag(tokens, front_end_.backend());
  a.content = remove_stop_words(a.tagged, front_end_.stops());
  a.expanded = expand(a.content, front_end_.lexicon(), config_.syn_weight);
  if (model_) {
    Prediction p = classify(*model_, a.tagged);
    a.qclass = p.label;
    a.margin = p.margin;
  }
  a.chunks = chunk_nps(a.tagged);
  a.focus = extract_focus(a.tagged, a.chunks);
  if (a.focus) {
    a.focus_terms = focus_terms(*a.focus, a.tagged, front_end_.stops());
  }
  return a;
}

AskResult Pipeline::ask(std::string_view question) const {
  return ask(question, config_.top);
}

AskResult Pipeline::ask(std::string_view question, std::size_t top) const {
  if (!model_) throw ConfigError("answering needs a model");
  if (!index_) throw ConfigError("answering needs an index or corpus");
  AskResult result;
  result.analysis = analyze(question);
  result.documents = retrieve(*index_, result.analysis.expanded, config_.k);
  std::vector<Sentence> sentences;
  for (const Passage &p : select_passages(*index_, result.documents, config_.m)) {
    Sentence s;
    s.doc_id = p.doc_id;
    s.index = p.sentence;
    s.text = p.text;
    annotate(&s, front_end_.backend(), front_end_.stops(),
             front_end_.segmenter());
    sentences.push_back(std::move(s));
  }
  GazetteerRecognizer recognizer(front_end_.gazetteers());
  result.answers =
      rank_answers(extract_answers(result.analysis, sentences, recognizer),
                   result.analysis.focus_terms, top);
  return result;
}

}  // namespace qapipe
