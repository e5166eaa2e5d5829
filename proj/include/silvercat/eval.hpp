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

#ifndef SILVERCAT_EVAL_HPP_
#define SILVERCAT_EVAL_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "silvercat/class_scheme.hpp"
#include "silvercat/pipeline.hpp"
#include "silvercat/svm.hpp"

namespace silvercat {

// Rows are TRUE classes, columns PREDICTED.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::vector<std::string> class_list);
  static ConfusionMatrix from_pairs(
      const std::vector<std::pair<std::string, std::string>>& pairs,
      const std::vector<std::string>& class_list);

  void add(const std::string& truth, const std::string& predicted);
  void add(std::size_t truth, std::size_t predicted, std::uint64_t count = 1);

  const std::vector<std::string>& class_list() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  std::uint64_t at(std::size_t truth, std::size_t predicted) const;
  std::uint64_t row_total(std::size_t truth) const;
  std::uint64_t col_total(std::size_t predicted) const;
  std::uint64_t trace() const;
  std::uint64_t total() const;

  // Tab-separated, classes as header row and leading column.
  std::string to_tsv() const;
  static ConfusionMatrix from_tsv(std::string_view text);
  void write_tsv(const std::string& path) const;
  static ConfusionMatrix read_tsv(const std::string& path);

 private:
  std::vector<std::string> classes_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::uint64_t> counts_;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Precision, recall and F1 per class (matrix order); every 0/0 is 0, so
// classes that are never predicted keep the averages defined.
std::vector<ClassMetrics> per_class_metrics(const ConfusionMatrix& matrix);

struct EvalReport {
  ConfusionMatrix matrix;
  std::vector<ClassMetrics> per_class;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  nlohmann::json metadata = nlohmann::json::object();

  nlohmann::json to_json() const;
};

// Macro values are unweighted means across classes; accuracy trace/total.
EvalReport macro_report(const ConfusionMatrix& matrix);

// Labeled gold evaluation over prediction-view token lists.
EvalReport evaluate(const MulticlassModel& model,
                    const std::vector<text::TokenList>& predict_tokens,
                    const std::vector<std::string>& labels);

// Called once per fold with the training document indices and the feature
// space selected from them; lets tests confirm the space is derivable from
// the training folds alone.
using FoldObserver = std::function<void(
    std::size_t fold, const std::vector<std::size_t>& train_docs,
    const FeatureSpace& space)>;

// Stratified k-fold: per-class seeded shuffle, fold i of a class is every
// k-th member. Each fold is predicted by a model trained on the others,
// with feature selection redone per fold from training data only; the
// report covers the union of the fold predictions.
EvalReport cross_validate(const TokenizedCorpus& corpus,
                          const std::vector<std::string>& classes,
                          std::size_t k, std::size_t n_per_class,
                          const TrainConfig& config, std::uint64_t seed,
                          const FoldObserver& observer = {});

struct CurvePoint {
  std::size_t size = 0;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
};

// Trains at each requested total size (balanced per class, size/|classes|
// each) and evaluates on the fixed test corpus. Points are independent;
// each gets its own seed stream. A class smaller than its quota is used
// whole, with a warning.
std::vector<CurvePoint> learning_curve(const TokenizedCorpus& train_corpus,
                                       const TokenizedCorpus& test_corpus,
                                       const std::vector<std::string>& classes,
                                       const std::vector<std::size_t>& sizes,
                                       std::size_t n_per_class,
                                       const TrainConfig& config,
                                       std::uint64_t seed);

// CSV rows `size,accuracy,macro_f1,seed`, one per point.
std::string curve_csv(const std::vector<CurvePoint>& points,
                      std::uint64_t seed);

// Same arithmetic as evaluate, tagged with the time windows: the training
// window is supplied by the caller, the test window read off the examples'
// timestamps. Exists as a named runner for later-harvest drift probes.
EvalReport drift_eval(const MulticlassModel& model,
                      const std::vector<LabeledExample>& later_test,
                      const PipelineOptions& options,
                      const std::string& train_window);

// Re-buckets both axes into the scheme's coarse classes. Diagonal cells
// stay diagonal, so coarsening never lowers accuracy.
ConfusionMatrix coarsen_matrix(const ConfusionMatrix& matrix,
                               const ClassScheme& scheme);

}  // namespace silvercat

#endif  // SILVERCAT_EVAL_HPP_
