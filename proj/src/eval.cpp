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

#include "silvercat/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "silvercat/errors.hpp"
#include "silvercat/rng.hpp"

namespace silvercat {
namespace {

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t tab = line.find('\t', begin);
    if (tab == std::string_view::npos) {
      fields.emplace_back(line.substr(begin));
      return fields;
    }
    fields.emplace_back(line.substr(begin, tab - begin));
    begin = tab + 1;
  }
}

std::uint64_t parse_count(const std::string& field) {
  if (field.empty() ||
      field.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("matrix cell '" + field +
                                "' is not a non-negative integer");
  }
  return std::stoull(field);
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> class_list)
    : classes_(std::move(class_list)),
      counts_(classes_.size() * classes_.size(), 0) {
  if (classes_.empty()) {
    throw std::invalid_argument("confusion matrix needs at least one class");
  }
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (!index_.emplace(classes_[i], i).second) {
      throw std::invalid_argument("duplicate class: " + classes_[i]);
    }
  }
}

ConfusionMatrix ConfusionMatrix::from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const std::vector<std::string>& class_list) {
  ConfusionMatrix m(class_list);
  for (const auto& [truth, predicted] : pairs) m.add(truth, predicted);
  return m;
}

void ConfusionMatrix::add(const std::string& truth,
                          const std::string& predicted) {
  const auto t = index_.find(truth);
  if (t == index_.end()) {
    throw LabelMismatchError("true label '" + truth +
                             "' is not in the class list");
  }
  const auto p = index_.find(predicted);
  if (p == index_.end()) {
    throw LabelMismatchError("predicted label '" + predicted +
                             "' is not in the class list");
  }
  add(t->second, p->second);
}

void ConfusionMatrix::add(std::size_t truth, std::size_t predicted,
                          std::uint64_t count) {
  counts_.at(truth * classes_.size() + predicted) += count;
}

std::uint64_t ConfusionMatrix::at(std::size_t truth,
                                  std::size_t predicted) const {
  return counts_.at(truth * classes_.size() + predicted);
}

std::uint64_t ConfusionMatrix::row_total(std::size_t truth) const {
  std::uint64_t sum = 0;
  for (std::size_t p = 0; p < classes_.size(); ++p) sum += at(truth, p);
  return sum;
}

std::uint64_t ConfusionMatrix::col_total(std::size_t predicted) const {
  std::uint64_t sum = 0;
  for (std::size_t t = 0; t < classes_.size(); ++t) sum += at(t, predicted);
  return sum;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t sum = 0;
  for (std::size_t c = 0; c < classes_.size(); ++c) sum += at(c, c);
  return sum;
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t sum = 0;
  for (const auto v : counts_) sum += v;
  return sum;
}

std::string ConfusionMatrix::to_tsv() const {
  std::string out = "class";
  for (const auto& c : classes_) {
    out += '\t';
    out += c;
  }
  out += '\n';
  for (std::size_t t = 0; t < classes_.size(); ++t) {
    out += classes_[t];
    for (std::size_t p = 0; p < classes_.size(); ++p) {
      out += '\t';
      out += std::to_string(at(t, p));
    }
    out += '\n';
  }
  return out;
}

ConfusionMatrix ConfusionMatrix::from_tsv(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    if (end > begin) lines.emplace_back(text.substr(begin, end - begin));
    begin = end + 1;
  }
  if (lines.empty()) {
    throw std::invalid_argument("matrix TSV is empty");
  }
  auto header = split_tabs(lines[0]);
  if (header.size() < 2 || header[0] != "class") {
    throw std::invalid_argument(
        "matrix TSV header must be 'class' followed by the class names");
  }
  const std::vector<std::string> classes(header.begin() + 1, header.end());
  if (lines.size() - 1 != classes.size()) {
    throw std::invalid_argument("matrix TSV must have one row per class");
  }
  ConfusionMatrix m(classes);
  for (std::size_t t = 0; t < classes.size(); ++t) {
    const auto fields = split_tabs(lines[1 + t]);
    if (fields.size() != classes.size() + 1 || fields[0] != classes[t]) {
      throw std::invalid_argument(
          "matrix TSV rows must repeat the header's class order");
    }
    for (std::size_t p = 0; p < classes.size(); ++p) {
      m.add(t, p, parse_count(fields[1 + p]));
    }
  }
  return m;
}

void ConfusionMatrix::write_tsv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix file: " + path);
  out << to_tsv();
  out.flush();
  if (!out) throw std::runtime_error("failed writing matrix file: " + path);
}

ConfusionMatrix ConfusionMatrix::read_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("cannot open matrix file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_tsv(buffer.str());
}

std::vector<ClassMetrics> per_class_metrics(const ConfusionMatrix& matrix) {
  std::vector<ClassMetrics> out(matrix.size());
  for (std::size_t c = 0; c < matrix.size(); ++c) {
    const double hit = static_cast<double>(matrix.at(c, c));
    const double col = static_cast<double>(matrix.col_total(c));
    const double row = static_cast<double>(matrix.row_total(c));
    ClassMetrics& m = out[c];
    m.precision = col > 0 ? hit / col : 0.0;
    m.recall = row > 0 ? hit / row : 0.0;
    const double pr = m.precision + m.recall;
    m.f1 = pr > 0 ? 2.0 * m.precision * m.recall / pr : 0.0;
  }
  return out;
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json per_class_json = nlohmann::json::object();
  for (std::size_t c = 0; c < matrix.size(); ++c) {
    per_class_json[matrix.class_list()[c]] = {
        {"precision", per_class[c].precision},
        {"recall", per_class[c].recall},
        {"f1", per_class[c].f1}};
  }
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t t = 0; t < matrix.size(); ++t) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t p = 0; p < matrix.size(); ++p) row.push_back(matrix.at(t, p));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"class_list", matrix.class_list()},
                        {"per_class", std::move(per_class_json)},
                        {"macro",
                         {{"precision", macro_precision},
                          {"recall", macro_recall},
                          {"f1", macro_f1}}},
                        {"accuracy", accuracy},
                        {"matrix", std::move(rows)},
                        {"metadata", metadata}};
}

EvalReport macro_report(const ConfusionMatrix& matrix) {
  EvalReport report;
  report.matrix = matrix;
  report.per_class = per_class_metrics(matrix);
  for (const auto& m : report.per_class) {
    report.macro_precision += m.precision;
    report.macro_recall += m.recall;
    report.macro_f1 += m.f1;
  }
  const double n = static_cast<double>(matrix.size());
  report.macro_precision /= n;
  report.macro_recall /= n;
  report.macro_f1 /= n;
  const std::uint64_t total = matrix.total();
  report.accuracy =
      total > 0 ? static_cast<double>(matrix.trace()) / static_cast<double>(total)
                : 0.0;
  return report;
}

EvalReport evaluate(const MulticlassModel& model,
                    const std::vector<text::TokenList>& predict_tokens,
                    const std::vector<std::string>& labels) {
  if (predict_tokens.size() != labels.size()) {
    throw std::invalid_argument("token lists and labels differ in length");
  }
  ConfusionMatrix matrix(model.class_list());
  for (std::size_t i = 0; i < predict_tokens.size(); ++i) {
    const auto x = vectorize(predict_tokens[i], model.feature_space());
    matrix.add(labels[i], model.class_list()[model.predict_index(x)]);
  }
  return macro_report(matrix);
}

EvalReport cross_validate(const TokenizedCorpus& corpus,
                          const std::vector<std::string>& classes,
                          std::size_t k, std::size_t n_per_class,
                          const TrainConfig& config, std::uint64_t seed,
                          const FoldObserver& observer) {
  if (k < 2) {
    throw std::invalid_argument("cross-validation needs at least 2 folds");
  }

  // Stratified assignment: shuffle each class's members with a stream keyed
  // by the class name, then deal them round the folds.
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    by_class[corpus.labels[i]].push_back(i);
  }
  for (const auto& name : classes) {
    const auto it = by_class.find(name);
    const std::size_t count = it == by_class.end() ? 0 : it->second.size();
    if (count < k) {
      throw DegenerateDataError("class '" + name + "' has " +
                                std::to_string(count) + " examples; " +
                                std::to_string(k) +
                                "-fold cross-validation needs at least " +
                                std::to_string(k));
    }
  }
  std::vector<std::size_t> fold_of(corpus.size(), 0);
  for (auto& [name, members] : by_class) {
    Rng rng(derive_seed(seed, stable_hash64(name)));
    rng.shuffle(members);
    for (std::size_t i = 0; i < members.size(); ++i) {
      fold_of[members[i]] = i % k;
    }
  }

  std::vector<std::string> predicted(corpus.size());
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train_docs;
    std::vector<text::TokenList> train;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (fold_of[i] != f) {
        train_docs.push_back(i);
        train.push_back(corpus.train[i]);
        labels.push_back(corpus.labels[i]);
      }
    }
    TrainConfig fold_config = config;
    fold_config.seed = derive_seed(seed, f);
    const MulticlassModel model =
        build_model(train, labels, classes, n_per_class, fold_config);
    if (observer) observer(f, train_docs, model.feature_space());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (fold_of[i] == f) {
        const auto x = vectorize(corpus.predict[i], model.feature_space());
        predicted[i] = model.class_list()[model.predict_index(x)];
      }
    }
  }

  ConfusionMatrix matrix(classes);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    matrix.add(corpus.labels[i], predicted[i]);
  }
  EvalReport report = macro_report(matrix);
  report.metadata["protocol"] = "cross_validation";
  report.metadata["folds"] = k;
  report.metadata["seed"] = seed;
  report.metadata["n_per_class"] = n_per_class;
  return report;
}

std::vector<CurvePoint> learning_curve(const TokenizedCorpus& train_corpus,
                                       const TokenizedCorpus& test_corpus,
                                       const std::vector<std::string>& classes,
                                       const std::vector<std::size_t>& sizes,
                                       std::size_t n_per_class,
                                       const TrainConfig& config,
                                       std::uint64_t seed) {
  if (classes.empty()) {
    throw std::invalid_argument("class list is empty");
  }
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < train_corpus.size(); ++i) {
    by_class[train_corpus.labels[i]].push_back(i);
  }

  std::vector<CurvePoint> points;
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    const std::size_t quota = sizes[p] / classes.size();
    if (quota == 0) {
      throw std::invalid_argument(
          "curve size " + std::to_string(sizes[p]) +
          " is smaller than the class count; nothing to sample");
    }
    const std::uint64_t point_seed = derive_seed(seed, p);

    std::vector<std::size_t> chosen;
    for (const auto& name : classes) {
      const auto it = by_class.find(name);
      const std::size_t count = it == by_class.end() ? 0 : it->second.size();
      if (count < quota) {
        std::cerr << "warning: class '" << name << "' has only " << count
                  << " examples; curve point " << sizes[p]
                  << " uses them all\n";
      }
      if (count == 0) continue;
      Rng rng(derive_seed(point_seed, stable_hash64(name)));
      const auto take = sample_indices(count, std::min(quota, count), rng);
      for (const std::size_t local : take) chosen.push_back(it->second[local]);
    }
    std::sort(chosen.begin(), chosen.end());

    std::vector<text::TokenList> train;
    std::vector<std::string> labels;
    train.reserve(chosen.size());
    labels.reserve(chosen.size());
    for (const std::size_t i : chosen) {
      train.push_back(train_corpus.train[i]);
      labels.push_back(train_corpus.labels[i]);
    }
    TrainConfig point_config = config;
    point_config.seed = point_seed;
    const MulticlassModel model =
        build_model(train, labels, classes, n_per_class, point_config);
    const EvalReport report =
        evaluate(model, test_corpus.predict, test_corpus.labels);

    CurvePoint point;
    point.size = sizes[p];
    point.accuracy = report.accuracy;
    point.macro_f1 = report.macro_f1;
    points.push_back(point);
  }
  return points;
}

std::string curve_csv(const std::vector<CurvePoint>& points,
                      std::uint64_t seed) {
  std::string out = "size,accuracy,macro_f1,seed\n";
  char row[128];
  for (const auto& p : points) {
    std::snprintf(row, sizeof row, "%zu,%.6f,%.6f,%llu\n", p.size, p.accuracy,
                  p.macro_f1, static_cast<unsigned long long>(seed));
    out += row;
  }
  return out;
}

EvalReport drift_eval(const MulticlassModel& model,
                      const std::vector<LabeledExample>& later_test,
                      const PipelineOptions& options,
                      const std::string& train_window) {
  if (later_test.empty()) {
    throw DegenerateDataError("drift evaluation needs a non-empty test set");
  }
  std::vector<text::TokenList> tokens;
  std::vector<std::string> labels;
  tokens.reserve(later_test.size());
  labels.reserve(later_test.size());
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  bool stamped = false;
  for (const auto& example : later_test) {
    tokens.push_back(predict_tokens(example.text, options));
    labels.push_back(example.label);
    if (example.timestamp) {
      stamped = true;
      lo = std::min(lo, *example.timestamp);
      hi = std::max(hi, *example.timestamp);
    }
  }
  EvalReport report = evaluate(model, tokens, labels);
  report.metadata["protocol"] = "drift";
  report.metadata["train_window"] = train_window;
  if (stamped) {
    report.metadata["test_window"] = nlohmann::json::array({lo, hi});
  } else {
    report.metadata["test_window"] = nullptr;
  }
  return report;
}

ConfusionMatrix coarsen_matrix(const ConfusionMatrix& matrix,
                               const ClassScheme& scheme) {
  ConfusionMatrix coarse(scheme.coarse_list());
  std::vector<std::size_t> to_coarse(matrix.size());
  for (std::size_t c = 0; c < matrix.size(); ++c) {
    const std::string& name = matrix.class_list()[c];
    const std::string& group = scheme.coarsen(name);
    const int idx = group.empty() ? -1 : scheme.coarse_index(group);
    if (idx < 0) {
      throw LabelMismatchError("class '" + name + "' has no coarse mapping");
    }
    to_coarse[c] = static_cast<std::size_t>(idx);
  }
  for (std::size_t t = 0; t < matrix.size(); ++t) {
    for (std::size_t p = 0; p < matrix.size(); ++p) {
      const std::uint64_t count = matrix.at(t, p);
      if (count > 0) coarse.add(to_coarse[t], to_coarse[p], count);
    }
  }
  return coarse;
}

}  // namespace silvercat
