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

#include "qapipe/eval.h"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "qapipe/errors.h"
#include "qapipe/pipeline.h"
#include "qapipe/text.h"
#include "qapipe/utf8.h"

namespace qapipe {

using nlohmann::json;

namespace {

std::wregex compile_pattern(const std::string &pattern) {
  try {
    return std::wregex(utf8::ToWide(normalize_pattern(pattern)),
                       std::regex::ECMAScript);
  } catch (const std::regex_error &) {
    throw BadPattern(pattern);
  }
}

CoarseClass parse_type(const std::string &name, const std::string &where) {
  auto coarse = parse_coarse(name);
  if (!coarse) throw DataError(where + ": unknown question type '" + name + "'");
  return *coarse;
}

}  // namespace

std::vector<EvalQuestion> parse_questions(std::istream &in,
                                          const std::string &source) {
  std::vector<EvalQuestion> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    EvalQuestion q;
    try {
      json obj = json::parse(line);
      q.id = obj.at("id").get<std::string>();
      q.text = obj.at("text").get<std::string>();
      if (obj.contains("class") && !obj["class"].is_null()) {
        q.gold_class = QuestionClass::parse(obj["class"].get<std::string>());
      }
      if (obj.contains("answers")) {
        q.answer_patterns = obj["answers"].get<std::vector<std::string>>();
      }
    } catch (const json::exception &e) {
      throw DataError(where + ": " + e.what());
    } catch (const IllegalLabel &e) {
      throw IllegalLabel(where + ": " + e.what());
    }
    for (const auto &p : q.answer_patterns) {
      try {
        compile_pattern(p);
      } catch (const BadPattern &e) {
        throw DataError(where + ": " + e.what());
      }
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<EvalQuestion> load_questions(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset: " + path.string());
  return parse_questions(in, path.string());
}

double mrr(std::span<const int> ranks) {
  if (ranks.empty()) throw EmptyList();
  double sum = 0.0;
  for (int r : ranks) {
    if (r > 0) sum += 1.0 / static_cast<double>(r);
  }
  return sum / static_cast<double>(ranks.size());
}

std::string normalize_pattern(std::string_view pattern) {
  std::u32string chars = utf8::Decode(pattern);
  std::string out;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (chars[i] == U'\\' && i + 1 < chars.size()) {
      utf8::Append(&out, chars[i]);
      utf8::Append(&out, chars[++i]);
      continue;
    }
    out += normalize_string(utf8::Encode(std::u32string(1, chars[i])));
  }
  return out;
}

int first_correct_rank(std::span<const std::string> texts,
                       std::span<const std::string> patterns) {
  std::vector<std::wregex> compiled;
  compiled.reserve(patterns.size());
  for (const auto &p : patterns) compiled.push_back(compile_pattern(p));
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const std::wstring text = utf8::ToWide(normalize_string(texts[i]));
    for (const auto &re : compiled) {
      if (std::regex_search(text, re)) return static_cast<int>(i + 1);
    }
  }
  return 0;
}

int first_correct_rank(std::span<const AnswerCandidate> candidates,
                       std::span<const std::string> patterns) {
  std::vector<std::string> texts;
  texts.reserve(candidates.size());
  for (const auto &c : candidates) texts.push_back(c.text);
  return first_correct_rank(texts, patterns);
}

std::string format_mrr(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  std::string s(buf);
  if (s.rfind("0.", 0) == 0) s.erase(0, 1);
  return s;
}

EvalReport report_from_ranks(std::vector<QuestionResult> results,
                             std::size_t top) {
  if (results.empty()) throw EmptyList();
  EvalReport report;
  report.top = top;
  std::map<CoarseClass, double> sums;
  double total = 0.0;
  for (const auto &r : results) {
    if (r.rank < 0 || (top > 0 && static_cast<std::size_t>(r.rank) > top)) {
      throw DataError("rank out of range for " + r.id);
    }
    double inv = r.rank > 0 ? 1.0 / static_cast<double>(r.rank) : 0.0;
    ++report.per_type[r.type].n;
    sums[r.type] += inv;
    total += inv;
  }
  bool equal = true;
  const std::size_t first_n = report.per_type.begin()->second.n;
  for (auto &[type, score] : report.per_type) {
    score.mrr = sums[type] / static_cast<double>(score.n);
    equal = equal && score.n == first_n;
  }
  if (equal) {
    // Sum in report order so the result does not depend on enum values.
    double sum = 0.0;
    for (CoarseClass c : report_order()) {
      if (auto it = report.per_type.find(c); it != report.per_type.end()) {
        sum += it->second.mrr;
      }
    }
    report.average = sum / static_cast<double>(report.per_type.size());
    report.average_mode = "macro";
  } else {
    report.average = total / static_cast<double>(results.size());
    report.average_mode = "micro";
  }
  report.per_question = std::move(results);
  return report;
}

std::vector<QuestionResult> parse_rank_file(std::istream &in,
                                            const std::string &source) {
  std::vector<QuestionResult> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = source + ":" + std::to_string(lineno);
    std::istringstream fields(line);
    std::string id, type, rank;
    if (!std::getline(fields, id, '\t') || !std::getline(fields, type, '\t') ||
        !std::getline(fields, rank, '\t')) {
      throw DataError(where + ": expected id, type and rank");
    }
    QuestionResult r;
    r.id = id;
    r.type = parse_type(type, where);
    try {
      std::size_t used = 0;
      r.rank = std::stoi(rank, &used);
      if (used != rank.size() || r.rank < 0) throw std::invalid_argument(rank);
    } catch (const std::exception &) {
      throw DataError(where + ": bad rank '" + rank + "'");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<QuestionResult> load_rank_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open rank file: " + path.string());
  return parse_rank_file(in, path.string());
}

std::string EvalReport::to_json_text() const {
  json doc;
  doc["top"] = top;
  doc["average"] = average;
  doc["average_mode"] = average_mode;
  json types = json::object();
  for (CoarseClass c : report_order()) {
    auto it = per_type.find(c);
    if (it == per_type.end()) continue;
    types[std::string(to_string(c))] = {{"n", it->second.n},
                                        {"mrr", it->second.mrr}};
  }
  doc["per_type"] = types;
  json questions = json::array();
  for (const auto &q : per_question) {
    json entry = {{"id", q.id},
                  {"type", std::string(to_string(q.type))},
                  {"rank", q.rank},
                  {"predicted", q.predicted}};
    if (!q.error.empty()) entry["error"] = q.error;
    questions.push_back(entry);
  }
  doc["per_question"] = questions;
  return doc.dump(1) + "\n";
}

EvalReport EvalReport::from_json_text(std::string_view text,
                                      const std::string &source) {
  try {
    json doc = json::parse(text);
    EvalReport r;
    r.top = doc.at("top").get<std::size_t>();
    r.average = doc.at("average").get<double>();
    r.average_mode = doc.at("average_mode").get<std::string>();
    for (const auto &[name, score] : doc.at("per_type").items()) {
      r.per_type[parse_type(name, source)] =
          TypeScore{score.at("n").get<std::size_t>(),
                    score.at("mrr").get<double>()};
    }
    for (const auto &q : doc.at("per_question")) {
      QuestionResult result;
      result.id = q.at("id").get<std::string>();
      result.type = parse_type(q.at("type").get<std::string>(), source);
      result.rank = q.at("rank").get<int>();
      result.predicted = q.value("predicted", "");
      result.error = q.value("error", "");
      r.per_question.push_back(std::move(result));
    }
    return r;
  } catch (const json::exception &e) {
    throw DataError(source + ": malformed report: " + e.what());
  }
}

std::string EvalReport::render_table() const {
  std::ostringstream out;
  auto row = [&out](std::string_view a, const std::string &b,
                    const std::string &c) {
    out << std::left << std::setw(16) << a << std::setw(8) << b << c << "\n";
  };
  row("Question Type", "Number", "MRR");
  std::size_t total = 0;
  for (CoarseClass c : report_order()) {
    auto it = per_type.find(c);
    if (it == per_type.end()) continue;
    row(to_string(c), std::to_string(it->second.n), format_mrr(it->second.mrr));
    total += it->second.n;
  }
  // With equal counts the average row repeats the per-type count.
  std::size_t n = total;
  if (average_mode == "macro" && !per_type.empty()) {
    n = per_type.begin()->second.n;
  }
  row("AVERAGE", std::to_string(n), format_mrr(average));
  return out.str();
}

EvalReport evaluate(const AnswerFn &answer,
                    std::span<const EvalQuestion> dataset, std::size_t top) {
  if (dataset.empty()) throw EmptyList();
  std::vector<QuestionResult> results;
  results.reserve(dataset.size());
  for (const auto &q : dataset) {
    if (!q.gold_class) throw MissingGoldClass(q.id);
    QuestionResult r;
    r.id = q.id;
    r.type = q.gold_class->coarse();
    try {
      auto [candidates, predicted] = answer(q);
      r.predicted = predicted;
      if (candidates.size() > top) candidates.resize(top);
      r.rank = first_correct_rank(candidates, q.answer_patterns);
    } catch (const std::exception &e) {
      r.rank = 0;
      r.error = e.what();
    }
    results.push_back(std::move(r));
  }
  return report_from_ranks(std::move(results), top);
}

EvalReport evaluate(const Pipeline &pipeline,
                    std::span<const EvalQuestion> dataset, std::size_t top) {
  return evaluate(
      [&pipeline, top](const EvalQuestion &q) {
        AskResult result = pipeline.ask(q.text, top);
        std::string predicted =
            result.analysis.qclass ? result.analysis.qclass->label() : "";
        return std::make_pair(std::move(result.answers), predicted);
      },
      dataset, top);
}

ClassAccuracy classify_accuracy(const Model &model,
                                std::span<const EvalQuestion> dataset,
                                const QuestionTagger &tagger) {
  ClassAccuracy acc;
  if (dataset.empty()) return acc;
  std::size_t coarse_hits = 0, fine_hits = 0;
  for (const auto &q : dataset) {
    if (!q.gold_class) throw MissingGoldClass(q.id);
    Prediction p = classify(model, tagger.tag_question(q.text));
    ++acc.confusion[{q.gold_class->label(), p.label.label()}];
    if (p.label.coarse() == q.gold_class->coarse()) ++coarse_hits;
    if (p.label == *q.gold_class) ++fine_hits;
  }
  acc.n = dataset.size();
  acc.coarse = static_cast<double>(coarse_hits) / static_cast<double>(acc.n);
  acc.fine = static_cast<double>(fine_hits) / static_cast<double>(acc.n);
  return acc;
}

}  // namespace qapipe
