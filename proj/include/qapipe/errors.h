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

#ifndef QAPIPE_ERRORS_H_
#define QAPIPE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qapipe {

// Failure classes. The numeric values double as the CLI exit codes.
enum class ErrorCategory {
  kConfig = 2,
  kInput = 3,
  kData = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string &what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &what)
      : Error(ErrorCategory::kConfig, what) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string &what)
      : Error(ErrorCategory::kInput, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string &what)
      : Error(ErrorCategory::kData, what) {}
};

class EmptyQuestion : public InputError {
 public:
  EmptyQuestion() : InputError("empty question") {}
};

class BackendFailure : public InputError {
 public:
  explicit BackendFailure(const std::string &what)
      : InputError("tagger backend failure: " + what) {}
};

class IllegalLabel : public DataError {
 public:
  explicit IllegalLabel(const std::string &what) : DataError(what) {}
};

class EmptyTrainingSet : public DataError {
 public:
  EmptyTrainingSet() : DataError("empty training set") {}
};

class DuplicateDocId : public DataError {
 public:
  explicit DuplicateDocId(const std::string &id)
      : DataError("duplicate document id: " + id) {}
};

class EmptyCorpus : public DataError {
 public:
  EmptyCorpus() : DataError("empty corpus") {}
};

class UnsupportedFineClass : public InputError {
 public:
  explicit UnsupportedFineClass(const std::string &label)
      : InputError("not a NUMERIC fine class: " + label) {}
};

class BadPattern : public InputError {
 public:
  explicit BadPattern(const std::string &pattern)
      : InputError("bad answer pattern: " + pattern) {}
};

class EmptyList : public InputError {
 public:
  EmptyList() : InputError("empty rank list") {}
};

class MissingGoldClass : public InputError {
 public:
  explicit MissingGoldClass(const std::string &id)
      : InputError("question has no gold class: " + id) {}
};

}  // namespace qapipe

#endif  // QAPIPE_ERRORS_H_
