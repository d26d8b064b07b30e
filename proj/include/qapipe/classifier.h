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

#ifndef QAPIPE_CLASSIFIER_H_
#define QAPIPE_CLASSIFIER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qapipe/tagger.h"

namespace qapipe {

enum class CoarseClass { kHuman, kLocation, kNumeric, kDescription, kEntity };

// Order used by reports: HUMAN, NUMERIC, LOCATION, ENTITY, DESCRIPTION.
const std::vector<CoarseClass> &report_order();

std::string_view to_string(CoarseClass coarse);
// Accepts "NUMBER" as an alias of "NUMERIC".
std::optional<CoarseClass> parse_coarse(std::string_view name);

// Two-level label. Only pairs from the taxonomy table can be constructed
// through parse() or make().
class QuestionClass {
 public:
  static std::optional<QuestionClass> make(CoarseClass coarse,
                                           std::string_view fine);
  // "COARSE:fine"; tolerant of a space after the colon and of fine-label
  // case. Throws IllegalLabel.
  static QuestionClass parse(std::string_view label);

  CoarseClass coarse() const { return coarse_; }
  const std::string &fine() const { return fine_; }
  std::string label() const;

  static const std::vector<std::string> &fine_labels(CoarseClass coarse);
  static std::vector<QuestionClass> all();

  friend bool operator==(const QuestionClass &, const QuestionClass &) =
      default;
  friend bool operator<(const QuestionClass &a, const QuestionClass &b) {
    return a.label() < b.label();
  }

 private:
  QuestionClass(CoarseClass coarse, std::string fine)
      : coarse_(coarse), fine_(std::move(fine)) {}

  CoarseClass coarse_;
  std::string fine_;
};

// Sparse feature map; names carry a namespace prefix (uni:, bi:, wh:, head:,
// len:, num:).
using FeatureVector = std::map<std::string, double>;

// Features from the full tagged question (stop words still present).
// Throws EmptyQuestion.
FeatureVector extract_features(std::span<const TaggedToken> question);

struct ModelMetadata {
  std::string training_hash;
  std::uint64_t seed = 0;
  int epochs = 0;
  std::size_t examples = 0;
};

// One weight vector and bias per label; the label with the highest score
// wins.
class Model {
 public:
  static constexpr int kVersion = 1;

  Model() = default;
  Model(std::vector<QuestionClass> labels,
        std::map<std::string, std::map<std::string, double>> weights,
        std::map<std::string, double> bias, ModelMetadata metadata);

  static Model load(const std::filesystem::path &path);
  static Model from_json_text(std::string_view text, const std::string &source);
  void save(const std::filesystem::path &path) const;
  std::string to_json_text() const;

  const std::vector<QuestionClass> &labels() const { return labels_; }
  const ModelMetadata &metadata() const { return metadata_; }
  double score(const QuestionClass &label, const FeatureVector &x) const;

  // Multiplies every weight and bias; used to check argmax invariance.
  Model scaled(double factor) const;

 private:
  std::vector<QuestionClass> labels_;
  std::map<std::string, std::map<std::string, double>> weights_;
  std::map<std::string, double> bias_;
  ModelMetadata metadata_;
};

struct Prediction {
  QuestionClass label;
  double margin = 0.0;
};

// Argmax label; ties go to the lexicographically smaller "COARSE:fine".
Prediction classify(const Model &model, std::span<const TaggedToken> question);
Prediction classify(const Model &model, const FeatureVector &features);

struct TrainingExample {
  std::string id;
  std::string text;
  QuestionClass label;
};

struct TrainOptions {
  int epochs = 10;
  std::uint64_t seed = 1;
};

// Turns raw question text into the tagged sequence fed to the classifier.
class QuestionTagger {
 public:
  virtual ~QuestionTagger() = default;
  virtual std::vector<TaggedToken> tag_question(std::string_view text) const = 0;
};

// One-vs-rest averaged perceptron over the fine labels present in data.
// Examples are shuffled per epoch with a generator seeded from options.seed.
Model train(std::span<const TrainingExample> data, const TrainOptions &options,
            const QuestionTagger &tagger);

std::string fnv1a_hex(std::string_view bytes);

}  // namespace qapipe

#endif  // QAPIPE_CLASSIFIER_H_
