// Copyright 2026 the silvercat project
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

// Command-line front end. Every experiment is a config file plus a
// subcommand; flags override config values, config values override defaults.
// The canonical pipeline composes as
//   harvest -> prepare -> train -> predict -> eval
// with cv / curve / coarsen as protocol runners and convert as a format
// shim. Exit codes: 0 success, 2 missing input, 3 degenerate training data,
// 4 label mismatch, 1 anything else.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "silvercat/class_scheme.hpp"
#include "silvercat/corpus.hpp"
#include "silvercat/errors.hpp"
#include "silvercat/eval.hpp"
#include "silvercat/features.hpp"
#include "silvercat/pipeline.hpp"
#include "silvercat/records.hpp"
#include "silvercat/rng.hpp"
#include "silvercat/svm.hpp"
#include "silvercat/textproc.hpp"

namespace silvercat {
namespace {

// One experiment, fully specified. The single seed drives sampling, splits,
// folds, curve points and the trainer, so a config file plus input files
// reproduce a run exactly. A trainer seed given explicitly in the config's
// "train" object is honored instead.
struct ExperimentConfig {
  std::string tweets = "tweets.jsonl";
  std::string videos = "videos.jsonl";
  std::string scheme = "data/class_scheme.json";
  std::string output_dir = ".";
  Variant variant = Variant::base;
  std::size_t n_per_class = 10000;
  std::size_t cap = 100000;
  std::size_t test_per_class = 1000;
  std::size_t cv_folds = 10;
  std::vector<std::size_t> curve_sizes;
  TrainConfig train;
  bool train_seed_explicit = false;
  text::NormalizeOptions normalize;
  std::uint64_t seed = 0;
  bool coarse = false;

  TrainConfig train_config() const {
    TrainConfig out = train;
    if (!train_seed_explicit) out.seed = seed;
    return out;
  }

  static ExperimentConfig from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    if (j.contains("paths")) {
      const auto& p = j.at("paths");
      cfg.tweets = p.value("tweets", cfg.tweets);
      cfg.videos = p.value("videos", cfg.videos);
      cfg.scheme = p.value("scheme", cfg.scheme);
      cfg.output_dir = p.value("output_dir", cfg.output_dir);
    }
    cfg.variant = variant_from_string(j.value("variant", "base"));
    cfg.n_per_class = j.value("n_per_class", cfg.n_per_class);
    cfg.cap = j.value("cap", cfg.cap);
    cfg.test_per_class = j.value("test_per_class", cfg.test_per_class);
    cfg.cv_folds = j.value("cv_folds", cfg.cv_folds);
    cfg.curve_sizes = j.value("curve_sizes", cfg.curve_sizes);
    if (j.contains("train")) {
      cfg.train = TrainConfig::from_json(j.at("train"));
      cfg.train_seed_explicit = j.at("train").contains("seed");
    }
    if (j.contains("normalize")) j.at("normalize").get_to(cfg.normalize);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.coarse = j.value("coarse", cfg.coarse);
    if (cfg.n_per_class == 0) {
      throw std::invalid_argument("n_per_class must be >= 1");
    }
    if (cfg.cap == 0) throw std::invalid_argument("cap must be >= 1");
    return cfg;
  }

  static ExperimentConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingInputError("cannot open config file: " + path);
    try {
      return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("config file " + path + ": " + e.what());
    }
  }
};

// Global flags, applied on top of the loaded config (flag > config >
// default). Option pointers tell whether a flag was actually given.
struct GlobalFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string variant;
  bool coarse = false;
  CLI::Option* config_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* variant_opt = nullptr;
  CLI::Option* coarse_opt = nullptr;

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (config_opt->count() > 0) cfg = ExperimentConfig::load(config_path);
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (variant_opt->count() > 0) cfg.variant = variant_from_string(variant);
    if (coarse_opt->count() > 0) cfg.coarse = coarse;
    return cfg;
  }
};

std::string in_output_dir(const ExperimentConfig& cfg,
                          const std::string& name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

// Flag value when given, otherwise the config's output directory.
std::string pick_output(const ExperimentConfig& cfg, const CLI::Option* opt,
                        const std::string& flag_value,
                        const std::string& default_name) {
  return opt->count() > 0 ? flag_value : in_output_dir(cfg, default_name);
}

void ensure_parent_dir(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

void write_text_file(const std::string& path, const std::string& content) {
  ensure_parent_dir(path);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::vector<LabeledExample> load_corpus(const std::string& path,
                                        std::vector<std::size_t>* lines) {
  JsonlReader reader(path);
  std::vector<LabeledExample> out;
  LabeledExample example;
  while (reader.next(example)) {
    out.push_back(std::move(example));
    if (lines != nullptr) lines->push_back(reader.line_number());
  }
  if (reader.malformed() > 0) {
    std::cerr << "warning: skipped " << reader.malformed()
              << " malformed lines in " << path << "\n";
  }
  return out;
}

const std::vector<std::string>& active_classes(const ExperimentConfig& cfg,
                                               const ClassScheme& scheme) {
  return cfg.coarse ? scheme.coarse_list() : scheme.class_list();
}

// Relabels to the coarse scheme; a mapping failure names the offending line.
void coarsen_examples(std::vector<LabeledExample>& examples,
                      const std::vector<std::size_t>& lines,
                      const ClassScheme& scheme) {
  for (std::size_t i = 0; i < examples.size(); ++i) {
    try {
      examples[i] = coarsen(std::move(examples[i]), scheme);
    } catch (const LabelMismatchError& e) {
      throw LabelMismatchError(std::string(e.what()) + " (line " +
                               std::to_string(lines[i]) + ")");
    }
  }
}

std::map<std::string, std::size_t> per_class_counts(
    const std::vector<LabeledExample>& examples) {
  std::map<std::string, std::size_t> counts;
  for (const auto& e : examples) ++counts[e.label];
  return counts;
}

int cmd_harvest(const ExperimentConfig& cfg, const std::string& tweets_path,
                const std::string& videos_path, const std::string& corpus_out,
                const std::string& stats_out) {
  const ClassScheme scheme = ClassScheme::load(cfg.scheme);

  std::map<std::string, VideoMeta> videos;
  std::size_t malformed_videos = 0;
  {
    JsonlReader reader(videos_path);
    VideoMeta video;
    while (reader.next(video)) videos.emplace(video.video_id, video);
    malformed_videos = reader.malformed();
  }

  JsonlReader tweets(tweets_path);
  ensure_parent_dir(corpus_out);
  JsonlWriter out(corpus_out);
  TransferStats transfer;
  Deduper dedup;
  TweetRecord tweet;
  while (tweets.next(tweet)) {
    const auto example = transfer_label(tweet, videos, scheme, transfer);
    if (example && dedup.keep(*example)) out.write_record(*example);
  }

  nlohmann::json stats{{"kept", dedup.stats().kept},
                       {"transfer", transfer.to_json()},
                       {"dedup", dedup.stats().to_json()},
                       {"malformed",
                        {{"tweets", tweets.malformed()},
                         {"videos", malformed_videos}}}};
  write_json_file(stats_out, stats);
  std::cerr << "harvest: kept " << dedup.stats().kept << " examples ("
            << transfer.resolved << " resolved, " << transfer.unresolved
            << " unresolved, " << transfer.dropped_class << " dropped class, "
            << dedup.stats().retweets << " retweets, "
            << dedup.stats().duplicates << " duplicates)\n";
  return 0;
}

int cmd_prepare(const ExperimentConfig& cfg, const std::string& corpus_path,
                const std::string& train_out, const std::string& test_out,
                const std::string& manifest_out) {
  const ClassScheme scheme = ClassScheme::load(cfg.scheme);
  std::vector<std::size_t> lines;
  auto examples = load_corpus(corpus_path, &lines);
  if (cfg.coarse) coarsen_examples(examples, lines, scheme);
  const auto& classes = active_classes(cfg, scheme);

  const auto balanced = balance_sample(
      examples, classes, cfg.cap, derive_seed(cfg.seed, stable_hash64("balance")));
  const auto [train, test] =
      split_holdout(balanced, classes, cfg.test_per_class,
                    derive_seed(cfg.seed, stable_hash64("split")));

  ensure_parent_dir(train_out);
  JsonlWriter train_writer(train_out);
  for (const auto& e : train) train_writer.write_record(e);
  ensure_parent_dir(test_out);
  JsonlWriter test_writer(test_out);
  for (const auto& e : test) test_writer.write_record(e);

  nlohmann::json per_class = nlohmann::json::object();
  const auto train_counts = per_class_counts(train);
  const auto test_counts = per_class_counts(test);
  for (const auto& cls : classes) {
    const auto t = train_counts.find(cls);
    const auto h = test_counts.find(cls);
    per_class[cls] = {{"train", t == train_counts.end() ? 0 : t->second},
                      {"test", h == test_counts.end() ? 0 : h->second}};
  }
  write_json_file(manifest_out,
                  nlohmann::json{{"seed", cfg.seed},
                                 {"cap", cfg.cap},
                                 {"test_per_class", cfg.test_per_class},
                                 {"coarse", cfg.coarse},
                                 {"classes", classes},
                                 {"train_total", train.size()},
                                 {"test_total", test.size()},
                                 {"per_class", per_class}});
  std::cerr << "prepare: " << train.size() << " train / " << test.size()
            << " test examples over " << classes.size() << " classes\n";
  return 0;
}

int cmd_train(const ExperimentConfig& cfg, const std::string& corpus_path,
              const std::string& model_out) {
  const ClassScheme scheme = ClassScheme::load(cfg.scheme);
  std::vector<std::size_t> lines;
  auto examples = load_corpus(corpus_path, &lines);
  if (cfg.coarse) coarsen_examples(examples, lines, scheme);
  const auto& classes = active_classes(cfg, scheme);

  const PipelineOptions options{cfg.variant, cfg.normalize};
  const TokenizedCorpus corpus = tokenize_corpus(examples, options);
  const MulticlassModel model = build_model(
      corpus.train, corpus.labels, classes, cfg.n_per_class, cfg.train_config());

  ensure_parent_dir(model_out);
  model.save(model_out);
  std::cerr << "train: " << corpus.size() << " documents, " << classes.size()
            << " classes, " << model.feature_space().size()
            << " features, variant " << variant_name(cfg.variant) << "\n";
  for (const auto& [cls, count] : per_class_counts(examples)) {
    std::cerr << "train: class '" << cls << "' " << count << " examples\n";
  }
  return 0;
}

int cmd_predict(const ExperimentConfig& cfg, const std::string& model_path,
                const std::string& input_path, const std::string& out_path) {
  const MulticlassModel model = MulticlassModel::load(model_path);
  const PipelineOptions options{cfg.variant, cfg.normalize};

  JsonlReader reader(input_path);
  ensure_parent_dir(out_path);
  JsonlWriter out(out_path);
  std::size_t written = 0;
  std::size_t missing_text = 0;
  nlohmann::json line;
  while (reader.next(line)) {
    if (!line.is_object() || !line.contains("text") ||
        !line.at("text").is_string()) {
      ++missing_text;
      continue;
    }
    const std::string text = line.at("text").get<std::string>();
    const auto x =
        vectorize(predict_tokens(text, options), model.feature_space());
    nlohmann::json record{{"text", text},
                          {"predicted",
                           model.class_list()[model.predict_index(x)]}};
    if (line.contains("id")) record["id"] = line.at("id");
    out.write(record);
    ++written;
  }
  std::cerr << "predict: " << written << " predictions";
  if (missing_text + reader.malformed() > 0) {
    std::cerr << " (" << missing_text + reader.malformed()
              << " lines skipped)";
  }
  std::cerr << "\n";
  return 0;
}

int cmd_eval(const ExperimentConfig& cfg, const std::string& matrix_path,
             bool matrix_mode, const std::string& model_path,
             const std::string& gold_path, const std::string& report_out,
             const std::string& matrix_out) {
  const ClassScheme scheme = ClassScheme::load(cfg.scheme);
  EvalReport report;

  if (matrix_mode) {
    ConfusionMatrix matrix = ConfusionMatrix::read_tsv(matrix_path);
    if (cfg.coarse) matrix = coarsen_matrix(matrix, scheme);
    report = macro_report(matrix);
    report.metadata["mode"] = "matrix";
    report.metadata["source"] = matrix_path;
  } else {
    const MulticlassModel model = MulticlassModel::load(model_path);
    std::vector<std::size_t> lines;
    auto gold = load_corpus(gold_path, &lines);
    const bool coarse_model =
        model.class_list() == scheme.coarse_list();
    if (cfg.coarse && coarse_model) coarsen_examples(gold, lines, scheme);

    const std::set<std::string> known(model.class_list().begin(),
                                      model.class_list().end());
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (known.count(gold[i].label) == 0) {
        throw LabelMismatchError("gold label '" + gold[i].label +
                                 "' is not in the model's class list (line " +
                                 std::to_string(lines[i]) + ")");
      }
    }

    const PipelineOptions options{cfg.variant, cfg.normalize};
    std::vector<text::TokenList> tokens;
    std::vector<std::string> labels;
    tokens.reserve(gold.size());
    labels.reserve(gold.size());
    for (const auto& e : gold) {
      tokens.push_back(predict_tokens(e.text, options));
      labels.push_back(e.label);
    }
    report = evaluate(model, tokens, labels);
    if (cfg.coarse && !coarse_model) {
      // Post-hoc grouping: the fine-grained model's matrix re-bucketed.
      nlohmann::json metadata = std::move(report.metadata);
      report = macro_report(coarsen_matrix(report.matrix, scheme));
      report.metadata = std::move(metadata);
    }
    report.metadata["mode"] = "gold";
    report.metadata["model"] = model_path;
    report.metadata["gold"] = gold_path;
    report.metadata["variant"] = std::string(variant_name(cfg.variant));
  }
  report.metadata["coarse"] = cfg.coarse;
  report.metadata["seed"] = cfg.seed;

  write_json_file(report_out, report.to_json());
  write_text_file(matrix_out, report.matrix.to_tsv());
  std::cerr << "eval: accuracy " << report.accuracy << ", macro F1 "
            << report.macro_f1 << " over " << report.matrix.total()
            << " examples\n";
  return 0;
}

int cmd_cv(const ExperimentConfig& cfg, const std::string& corpus_path,
           std::size_t folds, const std::string& report_out,
           const std::string& matrix_out) {
  const ClassScheme scheme = ClassScheme::load(cfg.scheme);
  std::vector<std::size_t> lines;
  auto examples = load_corpus(corpus_path, &lines);
  if (cfg.coarse) coarsen_examples(examples, lines, scheme);
  const auto& classes = active_classes(cfg, scheme);

  const PipelineOptions options{cfg.variant, cfg.normalize};
  const TokenizedCorpus corpus = tokenize_corpus(examples, options);
  EvalReport report = cross_validate(corpus, classes, folds, cfg.n_per_class,
                                     cfg.train_config(), cfg.seed);
  report.metadata["variant"] = std::string(variant_name(cfg.variant));
  report.metadata["coarse"] = cfg.coarse;

  write_json_file(report_out, report.to_json());
  write_text_file(matrix_out, report.matrix.to_tsv());
  std::cerr << "cv: " << folds << " folds, accuracy " << report.accuracy
            << ", macro F1 " << report.macro_f1 << "\n";
  return 0;
}

int cmd_curve(const ExperimentConfig& cfg, const std::string& train_path,
              const std::string& test_path,
              const std::vector<std::size_t>& sizes,
              const std::string& csv_out) {
  if (sizes.empty()) {
    throw std::invalid_argument(
        "no curve sizes given (flag --sizes or config curve_sizes)");
  }
  const ClassScheme scheme = ClassScheme::load(cfg.scheme);
  std::vector<std::size_t> train_lines;
  auto train_examples = load_corpus(train_path, &train_lines);
  std::vector<std::size_t> test_lines;
  auto test_examples = load_corpus(test_path, &test_lines);
  if (cfg.coarse) {
    coarsen_examples(train_examples, train_lines, scheme);
    coarsen_examples(test_examples, test_lines, scheme);
  }
  const auto& classes = active_classes(cfg, scheme);

  const PipelineOptions options{cfg.variant, cfg.normalize};
  const TokenizedCorpus train_corpus = tokenize_corpus(train_examples, options);
  const TokenizedCorpus test_corpus = tokenize_corpus(test_examples, options);
  const auto points =
      learning_curve(train_corpus, test_corpus, classes, sizes,
                     cfg.n_per_class, cfg.train_config(), cfg.seed);

  write_text_file(csv_out, curve_csv(points, cfg.seed));
  for (const auto& p : points) {
    std::cerr << "curve: size " << p.size << " accuracy " << p.accuracy
              << " macro F1 " << p.macro_f1 << "\n";
  }
  return 0;
}

int cmd_coarsen(const ExperimentConfig& cfg, const std::string& matrix_path,
                bool matrix_mode, const std::string& corpus_path,
                const std::string& out_path) {
  const ClassScheme scheme = ClassScheme::load(cfg.scheme);
  if (matrix_mode) {
    const ConfusionMatrix fine = ConfusionMatrix::read_tsv(matrix_path);
    const ConfusionMatrix coarse = coarsen_matrix(fine, scheme);
    ensure_parent_dir(out_path);
    coarse.write_tsv(out_path);
    std::cerr << "coarsen: accuracy " << macro_report(fine).accuracy << " -> "
              << macro_report(coarse).accuracy << "\n";
    return 0;
  }
  JsonlReader reader(corpus_path);
  ensure_parent_dir(out_path);
  JsonlWriter out(out_path);
  LabeledExample example;
  std::size_t written = 0;
  while (reader.next(example)) {
    try {
      out.write_record(coarsen(std::move(example), scheme));
    } catch (const LabelMismatchError& e) {
      throw LabelMismatchError(std::string(e.what()) + " (line " +
                               std::to_string(reader.line_number()) + ")");
    }
    ++written;
  }
  std::cerr << "coarsen: relabeled " << written << " examples\n";
  return 0;
}

int cmd_convert(const std::string& tsv_path, const std::string& out_path) {
  std::ifstream in(tsv_path);
  if (!in) throw MissingInputError("cannot open input file: " + tsv_path);
  ensure_parent_dir(out_path);
  JsonlWriter out(out_path);
  std::string line;
  std::size_t written = 0;
  std::size_t malformed = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    // The label is everything after the last tab, so tab-bearing text
    // stays intact.
    const std::size_t tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      ++malformed;
      continue;
    }
    LabeledExample example;
    example.text = line.substr(0, tab);
    example.label = line.substr(tab + 1);
    out.write_record(example);
    ++written;
  }
  std::cerr << "convert: " << written << " examples";
  if (malformed > 0) std::cerr << " (" << malformed << " lines skipped)";
  std::cerr << "\n";
  return 0;
}

}  // namespace
}  // namespace silvercat

int main(int argc, char** argv) {
  using namespace silvercat;

  CLI::App app{"silvercat: label transfer, training and evaluation for "
               "short-text classification"};
  app.require_subcommand(1);

  GlobalFlags global;
  global.config_opt =
      app.add_option("--config", global.config_path,
                     "Experiment config JSON (flag > config > default)");
  global.seed_opt = app.add_option(
      "--seed", global.seed, "Seed for sampling, splits, folds and training");
  global.variant_opt =
      app.add_option("--variant", global.variant,
                     "Pipeline variant; must match between train and predict")
          ->check(CLI::IsMember({"base", "v", "h", "vh"}));
  global.coarse_opt = app.add_flag("--coarse,!--no-coarse", global.coarse,
                                   "Work in the 4-class coarse scheme");

  int rc = 0;

  auto* harvest = app.add_subcommand(
      "harvest", "Join posts with video metadata into a labeled corpus");
  harvest->fallthrough();
  struct {
    std::string tweets, videos, out, stats;
    CLI::Option *tweets_opt, *videos_opt, *out_opt, *stats_opt;
  } hv;
  hv.tweets_opt = harvest->add_option("--tweets", hv.tweets, "Posts JSONL");
  hv.videos_opt =
      harvest->add_option("--videos", hv.videos, "Video metadata JSONL");
  hv.out_opt = harvest->add_option("--out", hv.out, "Labeled corpus JSONL");
  hv.stats_opt = harvest->add_option("--stats", hv.stats, "Stats JSON");
  harvest->callback([&] {
    const ExperimentConfig cfg = global.resolve();
    rc = cmd_harvest(cfg,
                     hv.tweets_opt->count() > 0 ? hv.tweets : cfg.tweets,
                     hv.videos_opt->count() > 0 ? hv.videos : cfg.videos,
                     pick_output(cfg, hv.out_opt, hv.out, "corpus.jsonl"),
                     pick_output(cfg, hv.stats_opt, hv.stats,
                                 "harvest_stats.json"));
  });

  auto* prepare = app.add_subcommand(
      "prepare", "Balance a labeled corpus and split off a holdout");
  prepare->fallthrough();
  struct {
    std::string corpus, train, test, manifest;
    CLI::Option *corpus_opt, *train_opt, *test_opt, *manifest_opt;
    std::size_t cap = 0, test_per_class = 0;
    CLI::Option *cap_opt, *test_pc_opt;
  } pr;
  pr.corpus_opt =
      prepare->add_option("--corpus", pr.corpus, "Labeled corpus JSONL")
          ->required();
  pr.train_opt = prepare->add_option("--train-out", pr.train, "Train JSONL");
  pr.test_opt = prepare->add_option("--test-out", pr.test, "Test JSONL");
  pr.manifest_opt =
      prepare->add_option("--manifest", pr.manifest, "Split manifest JSON");
  pr.cap_opt = prepare->add_option("--cap", pr.cap, "Per-class sample cap");
  pr.test_pc_opt = prepare->add_option("--test-per-class", pr.test_per_class,
                                       "Holdout size per class");
  prepare->callback([&] {
    ExperimentConfig cfg = global.resolve();
    if (pr.cap_opt->count() > 0) cfg.cap = pr.cap;
    if (pr.test_pc_opt->count() > 0) cfg.test_per_class = pr.test_per_class;
    rc = cmd_prepare(cfg, pr.corpus,
                     pick_output(cfg, pr.train_opt, pr.train, "train.jsonl"),
                     pick_output(cfg, pr.test_opt, pr.test, "test.jsonl"),
                     pick_output(cfg, pr.manifest_opt, pr.manifest,
                                 "split_manifest.json"));
  });

  auto* train = app.add_subcommand(
      "train", "Select features and train the one-vs-rest model");
  train->fallthrough();
  struct {
    std::string corpus, out;
    CLI::Option *corpus_opt, *out_opt;
    std::size_t n_per_class = 0;
    CLI::Option* npc_opt;
  } tr;
  tr.corpus_opt =
      train->add_option("--corpus", tr.corpus, "Training corpus JSONL")
          ->required();
  tr.out_opt = train->add_option("--out", tr.out, "Model JSON");
  tr.npc_opt = train->add_option("--n-per-class", tr.n_per_class,
                                 "Features selected per class");
  train->callback([&] {
    ExperimentConfig cfg = global.resolve();
    if (tr.npc_opt->count() > 0) cfg.n_per_class = tr.n_per_class;
    rc = cmd_train(cfg, tr.corpus,
                   pick_output(cfg, tr.out_opt, tr.out, "model.json"));
  });

  auto* predict =
      app.add_subcommand("predict", "Label posts with a trained model");
  predict->fallthrough();
  struct {
    std::string model, input, out;
    CLI::Option *model_opt, *input_opt, *out_opt;
  } pd;
  pd.model_opt =
      predict->add_option("--model", pd.model, "Model JSON")->required();
  pd.input_opt =
      predict
          ->add_option("--input", pd.input,
                       "JSONL with a \"text\" field per line")
          ->required();
  pd.out_opt = predict->add_option("--out", pd.out, "Predictions JSONL");
  predict->callback([&] {
    const ExperimentConfig cfg = global.resolve();
    rc = cmd_predict(cfg, pd.model, pd.input,
                     pick_output(cfg, pd.out_opt, pd.out,
                                 "predictions.jsonl"));
  });

  auto* eval = app.add_subcommand(
      "eval", "Score a model against gold labels, or re-score a matrix");
  eval->fallthrough();
  struct {
    std::string matrix, model, gold, report, matrix_out;
    CLI::Option *matrix_opt, *model_opt, *gold_opt, *report_opt,
        *matrix_out_opt;
  } ev;
  ev.matrix_opt = eval->add_option(
      "--matrix", ev.matrix, "Confusion matrix TSV (metric mode, no model)");
  ev.model_opt = eval->add_option("--model", ev.model, "Model JSON");
  ev.gold_opt = eval->add_option("--gold", ev.gold, "Gold corpus JSONL");
  ev.report_opt = eval->add_option("--report", ev.report, "Report JSON");
  ev.matrix_out_opt =
      eval->add_option("--matrix-out", ev.matrix_out, "Matrix TSV");
  eval->callback([&] {
    const ExperimentConfig cfg = global.resolve();
    const bool matrix_mode = ev.matrix_opt->count() > 0;
    const bool gold_mode =
        ev.model_opt->count() > 0 && ev.gold_opt->count() > 0;
    if (matrix_mode == gold_mode) {
      throw std::invalid_argument(
          "eval needs either --matrix or both --model and --gold");
    }
    rc = cmd_eval(cfg, ev.matrix, matrix_mode, ev.model, ev.gold,
                  pick_output(cfg, ev.report_opt, ev.report,
                              "eval_report.json"),
                  pick_output(cfg, ev.matrix_out_opt, ev.matrix_out,
                              "eval_matrix.tsv"));
  });

  auto* cv = app.add_subcommand(
      "cv", "Stratified k-fold cross-validation over a labeled corpus");
  cv->fallthrough();
  struct {
    std::string corpus, report, matrix_out;
    CLI::Option *corpus_opt, *report_opt, *matrix_out_opt;
    std::size_t folds = 0;
    CLI::Option* folds_opt;
  } cvo;
  cvo.corpus_opt =
      cv->add_option("--corpus", cvo.corpus, "Labeled corpus JSONL")
          ->required();
  cvo.folds_opt = cv->add_option("--folds", cvo.folds, "Fold count");
  cvo.report_opt = cv->add_option("--report", cvo.report, "Report JSON");
  cvo.matrix_out_opt =
      cv->add_option("--matrix-out", cvo.matrix_out, "Matrix TSV");
  cv->callback([&] {
    const ExperimentConfig cfg = global.resolve();
    const std::size_t folds =
        cvo.folds_opt->count() > 0 ? cvo.folds : cfg.cv_folds;
    rc = cmd_cv(cfg, cvo.corpus, folds,
                pick_output(cfg, cvo.report_opt, cvo.report,
                            "cv_report.json"),
                pick_output(cfg, cvo.matrix_out_opt, cvo.matrix_out,
                            "cv_matrix.tsv"));
  });

  auto* curve = app.add_subcommand(
      "curve", "Accuracy as a function of training-set size");
  curve->fallthrough();
  struct {
    std::string train, test, out;
    CLI::Option *train_opt, *test_opt, *out_opt;
    std::vector<std::size_t> sizes;
    CLI::Option* sizes_opt;
  } cu;
  cu.train_opt =
      curve->add_option("--train-corpus", cu.train, "Training corpus JSONL")
          ->required();
  cu.test_opt =
      curve->add_option("--test-corpus", cu.test, "Test corpus JSONL")
          ->required();
  cu.sizes_opt = curve
                     ->add_option("--sizes", cu.sizes,
                                  "Total training sizes, comma separated")
                     ->delimiter(',');
  cu.out_opt = curve->add_option("--out", cu.out, "Curve CSV");
  curve->callback([&] {
    const ExperimentConfig cfg = global.resolve();
    const auto& sizes =
        cu.sizes_opt->count() > 0 ? cu.sizes : cfg.curve_sizes;
    rc = cmd_curve(cfg, cu.train, cu.test, sizes,
                   pick_output(cfg, cu.out_opt, cu.out, "curve.csv"));
  });

  auto* coarsen_cmd = app.add_subcommand(
      "coarsen", "Re-bucket a matrix or relabel a corpus to coarse classes");
  coarsen_cmd->fallthrough();
  struct {
    std::string matrix, corpus, out;
    CLI::Option *matrix_opt, *corpus_opt;
  } co;
  co.matrix_opt =
      coarsen_cmd->add_option("--matrix", co.matrix, "Confusion matrix TSV");
  co.corpus_opt =
      coarsen_cmd->add_option("--corpus", co.corpus, "Labeled corpus JSONL");
  coarsen_cmd->add_option("--out", co.out, "Output path")->required();
  coarsen_cmd->callback([&] {
    const ExperimentConfig cfg = global.resolve();
    const bool matrix_mode = co.matrix_opt->count() > 0;
    if (matrix_mode == (co.corpus_opt->count() > 0)) {
      throw std::invalid_argument(
          "coarsen needs exactly one of --matrix or --corpus");
    }
    rc = cmd_coarsen(cfg, co.matrix, matrix_mode, co.corpus, co.out);
  });

  auto* convert = app.add_subcommand(
      "convert", "Convert text<TAB>label lines to a labeled corpus");
  convert->fallthrough();
  struct {
    std::string tsv, out;
  } cvt;
  convert->add_option("--tsv", cvt.tsv, "Input TSV")->required();
  convert->add_option("--out", cvt.out, "Labeled corpus JSONL")->required();
  convert->callback([&] { rc = cmd_convert(cvt.tsv, cvt.out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const MissingInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const LabelMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
