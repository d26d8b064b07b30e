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

#include "qapipe/classifier.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "qapipe/errors.h"
#include "qapipe/utf8.h"

namespace qapipe {

using nlohmann::json;

namespace {

struct CoarseName {
  CoarseClass coarse;
  const char *name;
};

constexpr CoarseName kCoarseNames[] = {
    {CoarseClass::kHuman, "HUMAN"},
    {CoarseClass::kLocation, "LOCATION"},
    {CoarseClass::kNumeric, "NUMERIC"},
    {CoarseClass::kDescription, "DESCRIPTION"},
    {CoarseClass::kEntity, "ENTITY"},
};

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string length_bucket(std::size_t n) {
  if (n <= 3) return "len:1-3";
  if (n <= 7) return "len:4-7";
  return "len:8+";
}

bool has_digit(const std::string &s) {
  for (char32_t ch : utf8::Decode(s)) {
    if (is_digit_char(ch)) return true;
  }
  return false;
}

}  // namespace

const std::vector<CoarseClass> &report_order() {
  static const std::vector<CoarseClass> order = {
      CoarseClass::kHuman, CoarseClass::kNumeric, CoarseClass::kLocation,
      CoarseClass::kEntity, CoarseClass::kDescription};
  return order;
}

std::string_view to_string(CoarseClass coarse) {
  for (const auto &entry : kCoarseNames) {
    if (entry.coarse == coarse) return entry.name;
  }
  return "ENTITY";
}

std::optional<CoarseClass> parse_coarse(std::string_view name) {
  std::string upper(name);
  for (char &c : upper) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  if (upper == "NUMBER") return CoarseClass::kNumeric;
  for (const auto &entry : kCoarseNames) {
    if (upper == entry.name) return entry.coarse;
  }
  return std::nullopt;
}

const std::vector<std::string> &QuestionClass::fine_labels(CoarseClass coarse) {
  static const std::vector<std::string> human = {"group", "individual",
                                                 "title", "description"};
  static const std::vector<std::string> location = {"country", "state", "city",
                                                    "mountain", "other"};
  static const std::vector<std::string> numeric = {
      "count", "date", "money", "distance", "speed", "percent", "other"};
  static const std::vector<std::string> description = {"definition", "manner",
                                                        "reason"};
  static const std::vector<std::string> entity = {"color", "animal",
                                                  "technique", "planet",
                                                  "other"};
  switch (coarse) {
    case CoarseClass::kHuman:
      return human;
    case CoarseClass::kLocation:
      return location;
    case CoarseClass::kNumeric:
      return numeric;
    case CoarseClass::kDescription:
      return description;
    case CoarseClass::kEntity:
      return entity;
  }
  return entity;
}

std::optional<QuestionClass> QuestionClass::make(CoarseClass coarse,
                                                 std::string_view fine) {
  std::string f = lower_ascii(trim(fine));
  const auto &legal = fine_labels(coarse);
  if (std::find(legal.begin(), legal.end(), f) == legal.end()) {
    return std::nullopt;
  }
  return QuestionClass(coarse, f);
}

QuestionClass QuestionClass::parse(std::string_view label) {
  auto colon = label.find(':');
  if (colon == std::string_view::npos) {
    throw IllegalLabel("label without ':' separator: " + std::string(label));
  }
  auto coarse = parse_coarse(trim(label.substr(0, colon)));
  if (!coarse) {
    throw IllegalLabel("unknown coarse class in label: " + std::string(label));
  }
  auto qc = make(*coarse, label.substr(colon + 1));
  if (!qc) {
    throw IllegalLabel("fine class not legal for coarse class: " +
                       std::string(label));
  }
  return *qc;
}

std::string QuestionClass::label() const {
  return std::string(to_string(coarse_)) + ":" + fine_;
}

std::vector<QuestionClass> QuestionClass::all() {
  std::vector<QuestionClass> out;
  for (const auto &entry : kCoarseNames) {
    for (const auto &fine : fine_labels(entry.coarse)) {
      out.push_back(QuestionClass(entry.coarse, fine));
    }
  }
  return out;
}

FeatureVector extract_features(std::span<const TaggedToken> question) {
  if (question.empty()) throw EmptyQuestion();
  FeatureVector x;
  for (const auto &t : question) x["uni:" + t.token.stem] += 1.0;
  for (std::size_t i = 0; i + 1 < std::min<std::size_t>(question.size(), 3);
       ++i) {
    x["bi:" + question[i].token.stem + "_" + question[i + 1].token.stem] = 1.0;
  }
  std::string wh = "none";
  for (const auto &t : question) {
    if (t.tag == PosTag::WP) {
      wh = t.token.stem;
      break;
    }
  }
  x["wh:" + wh] = 1.0;
  for (const auto &t : question) {
    if (is_noun(t.tag)) {
      x["head:" + t.token.stem] = 1.0;
      break;
    }
  }
  for (const auto &t : question) {
    if (has_digit(t.token.surface)) {
      x["num:digit"] = 1.0;
      break;
    }
  }
  x[length_bucket(question.size())] = 1.0;
  return x;
}

Model::Model(std::vector<QuestionClass> labels,
             std::map<std::string, std::map<std::string, double>> weights,
             std::map<std::string, double> bias, ModelMetadata metadata)
    : labels_(std::move(labels)),
      weights_(std::move(weights)),
      bias_(std::move(bias)),
      metadata_(std::move(metadata)) {
  std::sort(labels_.begin(), labels_.end());
}

double Model::score(const QuestionClass &label, const FeatureVector &x) const {
  const std::string key = label.label();
  double s = 0.0;
  if (auto b = bias_.find(key); b != bias_.end()) s = b->second;
  auto w = weights_.find(key);
  if (w == weights_.end()) return s;
  for (const auto &[feature, value] : x) {
    if (auto it = w->second.find(feature); it != w->second.end()) {
      s += it->second * value;
    }
  }
  return s;
}

Model Model::scaled(double factor) const {
  Model out = *this;
  for (auto &[label, weights] : out.weights_) {
    for (auto &[feature, w] : weights) w *= factor;
  }
  for (auto &[label, b] : out.bias_) b *= factor;
  return out;
}

std::string Model::to_json_text() const {
  json doc;
  doc["version"] = kVersion;
  json labels = json::array();
  for (const auto &l : labels_) labels.push_back(l.label());
  doc["labels"] = labels;
  json weights = json::object();
  for (const auto &[label, w] : weights_) weights[label] = w;
  doc["weights"] = weights;
  doc["bias"] = bias_;
  doc["metadata"] = {{"training_hash", metadata_.training_hash},
                     {"seed", metadata_.seed},
                     {"epochs", metadata_.epochs},
                     {"examples", metadata_.examples}};
  return doc.dump(1) + "\n";
}

void Model::save(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write model: " + path.string());
  out << to_json_text();
}

Model Model::from_json_text(std::string_view text, const std::string &source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw DataError(source + ": malformed model file: " + e.what());
  }
  try {
    if (doc.value("version", 0) != kVersion) {
      throw DataError(source + ": unsupported model version " +
                      doc.value("version", json(0)).dump());
    }
    std::vector<QuestionClass> labels;
    for (const auto &l : doc.at("labels")) {
      labels.push_back(QuestionClass::parse(l.get<std::string>()));
    }
    std::map<std::string, std::map<std::string, double>> weights;
    for (const auto &[label, w] : doc.at("weights").items()) {
      auto &row = weights[QuestionClass::parse(label).label()];
      for (const auto &[feature, value] : w.items()) {
        double v = value.get<double>();
        if (!std::isfinite(v)) {
          throw DataError(source + ": non-finite weight for " + feature);
        }
        row[feature] = v;
      }
    }
    std::map<std::string, double> bias;
    for (const auto &[label, value] : doc.at("bias").items()) {
      bias[QuestionClass::parse(label).label()] = value.get<double>();
    }
    ModelMetadata meta;
    const json &m = doc.at("metadata");
    meta.training_hash = m.value("training_hash", "");
    meta.seed = m.value("seed", std::uint64_t{0});
    meta.epochs = m.value("epochs", 0);
    meta.examples = m.value("examples", std::size_t{0});
    if (labels.empty()) throw DataError(source + ": model has no labels");
    return Model(std::move(labels), std::move(weights), std::move(bias), meta);
  } catch (const IllegalLabel &e) {
    throw DataError(source + ": " + e.what());
  } catch (const json::exception &e) {
    throw DataError(source + ": malformed model file: " + e.what());
  }
}

Model Model::load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open model: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str(), path.string());
}

Prediction classify(const Model &model, const FeatureVector &features) {
  const auto &labels = model.labels();
  if (labels.empty()) throw DataError("model has no labels");
  std::size_t best = 0;
  double best_score = model.score(labels[0], features);
  double second = -INFINITY;
  for (std::size_t i = 1; i < labels.size(); ++i) {
    double s = model.score(labels[i], features);
    if (s > best_score) {
      second = best_score;
      best_score = s;
      best = i;
    } else if (s > second) {
      second = s;
    }
  }
  double margin = labels.size() > 1 ? best_score - second : 0.0;
  return Prediction{labels[best], margin};
}

Prediction classify(const Model &model, std::span<const TaggedToken> question) {
  return classify(model, extract_features(question));
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Model train(std::span<const TrainingExample> data, const TrainOptions &options,
            const QuestionTagger &tagger) {
  if (data.empty()) throw EmptyTrainingSet();
  if (options.epochs < 1) throw ConfigError("epochs must be >= 1");

  std::vector<QuestionClass> labels;
  std::vector<FeatureVector> features;
  std::string canonical;
  for (const auto &ex : data) {
    if (std::find(labels.begin(), labels.end(), ex.label) == labels.end()) {
      labels.push_back(ex.label);
    }
    features.push_back(extract_features(tagger.tag_question(ex.text)));
    canonical += ex.text + "\t" + ex.label.label() + "\n";
  }
  std::sort(labels.begin(), labels.end());
  std::vector<std::string> keys;
  for (const auto &l : labels) keys.push_back(l.label());

  // Averaged perceptron with the usual lazy-averaging trick:
  // average = w - acc / c.
  const std::size_t L = labels.size();
  std::vector<std::map<std::string, double>> w(L), acc(L);
  std::vector<double> b(L, 0.0), bacc(L, 0.0);
  double c = 1.0;

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.seed);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t idx : order) {
      const FeatureVector &x = features[idx];
      const std::string gold = data[idx].label.label();
      for (std::size_t l = 0; l < L; ++l) {
        double y = keys[l] == gold ? 1.0 : -1.0;
        double s = b[l];
        for (const auto &[f, v] : x) {
          if (auto it = w[l].find(f); it != w[l].end()) s += it->second * v;
        }
        if (y * s > 0.0) continue;
        for (const auto &[f, v] : x) {
          w[l][f] += y * v;
          acc[l][f] += c * y * v;
        }
        b[l] += y;
        bacc[l] += c * y;
      }
      c += 1.0;
    }
  }

  std::map<std::string, std::map<std::string, double>> weights;
  std::map<std::string, double> bias;
  for (std::size_t l = 0; l < L; ++l) {
    auto &row = weights[keys[l]];
    for (const auto &[f, v] : w[l]) {
      double avg = v - acc[l][f] / c;
      if (avg != 0.0) row[f] = avg;
    }
    bias[keys[l]] = b[l] - bacc[l] / c;
  }
  ModelMetadata meta;
  meta.training_hash = fnv1a_hex(canonical);
  meta.seed = options.seed;
  meta.epochs = options.epochs;
  meta.examples = data.size();
  return Model(std::move(labels), std::move(weights), std::move(bias), meta);
}

}  // namespace qapipe
