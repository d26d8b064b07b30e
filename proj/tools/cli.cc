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

#include "cli.h"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qapipe/errors.h"
#include "qapipe/eval.h"
#include "qapipe/pipeline.h"
#include "qapipe/utf8.h"

namespace qapipe::cli {

namespace {

using nlohmann::json;

// Original (unnormalized) text behind a normalized character range.
std::string original_text(const QuestionAnalysis &a, CharSpan span) {
  if (span.begin >= span.end || span.end > a.normalized.offsets.size()) {
    return "";
  }
  std::u32string raw = utf8::Decode(a.text);
  std::size_t b = a.normalized.offsets[span.begin];
  std::size_t e = a.normalized.offsets[span.end - 1] + 1;
  return utf8::Encode(std::u32string_view(raw).substr(b, e - b));
}

json span_json(TokenSpan s) { return json::array({s.begin, s.end}); }

json token_json(const TaggedToken &t) {
  return {{"surface", t.token.surface},
          {"proclitics", t.token.proclitics},
          {"stem", t.token.stem},
          {"enclitics", t.token.enclitics},
          {"tag", std::string(to_string(t.tag))},
          {"span", json::array({t.token.span.begin, t.token.span.end})}};
}

json terms_json(const ExpandedQuery &q) {
  json out = json::array();
  for (const auto &t : q.terms) {
    json term = {{"term", t.term}, {"weight", t.weight}};
    if (!t.is_original()) term["synonym_of"] = t.synonym_of;
    out.push_back(term);
  }
  return out;
}

json focus_json(const QuestionAnalysis &a) {
  if (!a.focus) return nullptr;
  const Focus &f = *a.focus;
  const Token &head = a.tagged[f.head].token;
  json mods = json::array();
  for (const auto &m : f.modifiers) {
    mods.push_back({{"kind", std::string(to_string(m.kind))},
                    {"span", span_json(m.span)},
                    {"text", span_text(a.tagged, m.span)}});
  }
  return {{"span", span_json(f.span)},
          {"text", span_text(a.tagged, f.span)},
          {"np", span_json(f.np)},
          {"head",
           {{"index", f.head},
            {"surface", head.surface},
            {"original", original_text(a, head.span)}}},
          {"modifiers", mods}};
}

json class_json(const QuestionAnalysis &a) {
  if (!a.qclass) return nullptr;
  return a.qclass->label();
}

json analysis_json(const QuestionAnalysis &a) {
  json tokens = json::array();
  for (const auto &t : a.tagged) tokens.push_back(token_json(t));
  json content = json::array();
  for (const auto &t : a.content) content.push_back(t.token.stem);
  json chunks = json::array();
  for (const auto &c : a.chunks) {
    chunks.push_back({{"kind", std::string(to_string(c.kind))},
                      {"span", span_json(c.span)},
                      {"text", span_text(a.tagged, c.span)}});
  }
  return {{"question", a.text},
          {"tokens", tokens},
          {"content", content},
          {"expanded", terms_json(a.expanded)},
          {"class", class_json(a)},
          {"margin", a.margin},
          {"chunks", chunks},
          {"focus", focus_json(a)},
          {"focus_terms", a.focus_terms}};
}

json ask_json(const AskResult &r) {
  json docs = json::array();
  for (const auto &d : r.documents) {
    docs.push_back({{"id", d.id}, {"score", d.score}});
  }
  json answers = json::array();
  for (std::size_t i = 0; i < r.answers.size(); ++i) {
    const auto &c = r.answers[i];
    answers.push_back({{"rank", i + 1},
                       {"text", c.text},
                       {"kind", std::string(to_string(c.kind))},
                       {"score", c.score},
                       {"doc", c.doc_id},
                       {"sentence", c.sentence}});
  }
  return {{"question", r.analysis.text},
          {"class", class_json(r.analysis)},
          {"focus_terms", r.analysis.focus_terms},
          {"documents", docs},
          {"answers", answers}};
}

std::string analysis_table(const QuestionAnalysis &a) {
  std::ostringstream out;
  for (const auto &t : a.tagged) {
    std::string clitics;
    for (const auto &p : t.token.proclitics) clitics += p + "+";
    clitics += "[" + t.token.stem + "]";
    for (const auto &e : t.token.enclitics) clitics += "+" + e;
    out << t.token.surface << "\t" << to_string(t.tag) << "\t" << clitics
        << "\n";
  }
  out << "class\t" << (a.qclass ? a.qclass->label() : "-") << "\n";
  out << "focus\t" << (a.focus ? span_text(a.tagged, a.focus->span) : "-")
      << "\n";
  if (a.focus) out << "head\t" << a.tagged[a.focus->head].token.surface << "\n";
  out << "terms\t";
  for (const auto &t : a.expanded.terms) out << t.term << ":" << t.weight << " ";
  out << "\n";
  return out.str();
}

std::string ask_table(const AskResult &r) {
  std::ostringstream out;
  out << "class\t" << (r.analysis.qclass ? r.analysis.qclass->label() : "-")
      << "\n";
  for (std::size_t i = 0; i < r.answers.size(); ++i) {
    const auto &c = r.answers[i];
    out << (i + 1) << "\t" << c.score << "\t" << c.doc_id << "\t" << c.text
        << "\n";
  }
  return out.str();
}

std::string line(const json &record) { return record.dump() + "\n"; }

void write_output(const std::string &path, const std::string &text,
                  std::ostream &out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write output: " + path);
  file << text;
}

}  // namespace

int run(int argc, const char *const *argv, std::istream &in, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"qapipe: Arabic question analysis and answering"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(
      "Exit codes: 0 ok, 1 unexpected failure, 2 config error, 3 bad input, "
      "4 data-file error.");

  const PipelineConfig defaults;
  std::string config_path, output_path, format = "json-lines";
  std::string stopwords = defaults.stopwords.string();
  std::string lexicon = defaults.lexicon.string();
  std::string gazetteers = defaults.gazetteers.string();
  std::string model = defaults.model.string();
  std::string index = defaults.index.string();
  std::string corpus = defaults.corpus.string();
  std::size_t k = defaults.k, m = defaults.m, top = defaults.top;
  double syn_weight = defaults.syn_weight;
  std::string tagger = defaults.tagger;

  app.add_option("--config", config_path, "JSON config file")
      ->capture_default_str();
  app.add_option("--output", output_path, "Write output here, not stdout")
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json-lines", "table"}))
      ->capture_default_str();
  auto *o_stop = app.add_option("--stopwords", stopwords, "Stop-word list")
                     ->capture_default_str();
  auto *o_lex = app.add_option("--lexicon", lexicon, "Synonym lexicon (TSV)")
                    ->capture_default_str();
  auto *o_gaz =
      app.add_option("--gazetteers", gazetteers, "Gazetteer directory")
          ->capture_default_str();
  auto *o_model = app.add_option("--model", model, "Classifier model file")
                      ->capture_default_str();
  auto *o_index =
      app.add_option("--index", index, "Saved index (overrides --corpus)")
          ->capture_default_str();
  auto *o_corpus =
      app.add_option("--corpus", corpus, "Corpus directory or JSONL file")
          ->capture_default_str();
  auto *o_k = app.add_option("--k", k, "Documents retrieved")
                  ->check(CLI::PositiveNumber)
                  ->capture_default_str();
  auto *o_m = app.add_option("--m", m, "Documents used for passages")
                  ->check(CLI::PositiveNumber)
                  ->capture_default_str();
  auto *o_top = app.add_option("--top", top, "Answers returned")
                    ->check(CLI::PositiveNumber)
                    ->capture_default_str();
  auto *o_syn =
      app.add_option("--syn-weight", syn_weight, "Weight of synonym terms")
          ->capture_default_str();
  auto *o_tagger =
      app.add_option("--tagger", tagger, "heuristic or pretagged:<path>")
          ->capture_default_str();

  std::string question;
  auto add_question_cmd = [&](const char *name, const char *help) {
    auto *cmd = app.add_subcommand(name, help);
    cmd->add_option("question", question, "Question text")->required();
    return cmd;
  };
  auto *c_analyze = add_question_cmd("analyze", "Full question analysis");
  auto *c_classify = add_question_cmd("classify", "Question class");
  auto *c_focus = add_question_cmd("focus", "Question focus");
  auto *c_expand = add_question_cmd("expand", "Expanded query terms");
  auto *c_ask = add_question_cmd("ask", "Answer a question from the corpus");

  std::string corpus_arg;
  auto *c_index = app.add_subcommand("index", "Build and save an index");
  c_index->add_option("corpus", corpus_arg, "Corpus (defaults to --corpus)");

  std::string dataset;
  int epochs = TrainOptions{}.epochs;
  std::uint64_t seed = TrainOptions{}.seed;
  auto *c_train = app.add_subcommand("train", "Train a classifier model");
  c_train->add_option("dataset", dataset, "Question JSONL")->required();
  c_train->add_option("--epochs", epochs, "Training epochs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_train->add_option("--seed", seed, "Shuffle seed")->capture_default_str();

  std::string ranks_path;
  auto *c_eval = app.add_subcommand("eval", "Evaluate on a question set");
  c_eval->add_option("dataset", dataset, "Question JSONL with answers");
  c_eval->add_option("--ranks", ranks_path,
                     "Build the report from a rank file instead");
  auto *c_repl = app.add_subcommand("repl", "Answer one question per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ErrorCategory::kConfig);
  }

  try {
    PipelineConfig cfg =
        config_path.empty() ? PipelineConfig{} : PipelineConfig::load(config_path);
    if (o_stop->count()) cfg.stopwords = stopwords;
    if (o_lex->count()) cfg.lexicon = lexicon;
    if (o_gaz->count()) cfg.gazetteers = gazetteers;
    if (o_model->count()) cfg.model = model;
    if (o_index->count()) cfg.index = index;
    if (o_corpus->count()) cfg.corpus = corpus;
    if (o_k->count()) cfg.k = k;
    if (o_m->count()) cfg.m = m;
    if (o_top->count()) cfg.top = top;
    if (o_syn->count()) cfg.syn_weight = syn_weight;
    if (o_tagger->count()) cfg.tagger = tagger;
    cfg.validate();
    const bool table = format == "table";

    if (*c_index) {
      if (!corpus_arg.empty()) cfg.corpus = corpus_arg;
      cfg.index.clear();
      Pipeline p = Pipeline::load(cfg, false, true);
      if (table) {
        std::ostringstream s;
        s << "documents\t" << p.index()->doc_count() << "\nterms\t"
          << p.index()->vocabulary().size() << "\n";
        write_output(output_path, s.str(), out);
      } else {
        write_output(output_path, p.index()->to_json_text(), out);
      }
      return 0;
    }

    if (*c_train) {
      TextFrontEnd front_end = TextFrontEnd::load(cfg);
      std::vector<TrainingExample> examples;
      for (auto &q : load_questions(dataset)) {
        if (!q.gold_class) throw MissingGoldClass(q.id);
        examples.push_back(TrainingExample{q.id, q.text, *q.gold_class});
      }
      Model trained = train(examples, TrainOptions{epochs, seed}, front_end);
      write_output(output_path, trained.to_json_text(), out);
      return 0;
    }

    if (*c_eval) {
      if (!ranks_path.empty()) {
        EvalReport report = report_from_ranks(load_rank_file(ranks_path), 0);
        write_output(output_path,
                     table ? report.render_table() : line(json::parse(
                                                         report.to_json_text())),
                     out);
        return 0;
      }
      if (dataset.empty()) throw ConfigError("eval needs a dataset or --ranks");
      std::vector<EvalQuestion> questions = load_questions(dataset);
      Pipeline p = Pipeline::load(cfg, true, true);
      EvalReport report = evaluate(p, questions, cfg.top);
      write_output(output_path,
                   table ? report.render_table()
                         : line(json::parse(report.to_json_text())),
                   out);
      return 0;
    }

    if (*c_repl) {
      Pipeline p = Pipeline::load(cfg, true, true);
      std::ostringstream buffer;
      std::ostream &sink = output_path.empty() ? out : buffer;
      std::string q;
      while (std::getline(in, q)) {
        if (q.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
          AskResult r = p.ask(q);
          sink << (table ? ask_table(r) : line(ask_json(r)));
        } catch (const Error &e) {
          sink << line({{"question", q}, {"error", e.what()}});
        }
        sink.flush();
      }
      if (!output_path.empty()) write_output(output_path, buffer.str(), out);
      return 0;
    }

    if (question.find_first_not_of(" \t\r\n") == std::string::npos) {
      throw EmptyQuestion();
    }
    const bool need_model = *c_analyze || *c_classify || *c_ask;
    Pipeline p = Pipeline::load(cfg, need_model, static_cast<bool>(*c_ask));
    if (*c_ask) {
      AskResult r = p.ask(question);
      write_output(output_path, table ? ask_table(r) : line(ask_json(r)), out);
      return 0;
    }
    QuestionAnalysis a = p.analyze(question);
    std::string text;
    if (*c_analyze) {
      text = table ? analysis_table(a) : line(analysis_json(a));
    } else if (*c_classify) {
      text = table ? a.qclass->label() + "\t" + std::to_string(a.margin) + "\n"
                   : line({{"question", a.text},
                           {"class", class_json(a)},
                           {"margin", a.margin}});
    } else if (*c_focus) {
      text = table ? (a.focus ? span_text(a.tagged, a.focus->span) : "-") + "\n"
                   : line({{"question", a.text}, {"focus", focus_json(a)}});
    } else if (*c_expand) {
      if (table) {
        for (const auto &t : a.expanded.terms) {
          text += t.term + "\t" + std::to_string(t.weight) + "\n";
        }
      } else {
        text = line({{"question", a.text}, {"terms", terms_json(a.expanded)}});
      }
    }
    write_output(output_path, text, out);
    return 0;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(e.category());
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qapipe::cli
