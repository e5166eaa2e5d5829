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

#ifndef SILVERCAT_SVM_HPP_
#define SILVERCAT_SVM_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "silvercat/features.hpp"

namespace silvercat {

struct TrainConfig {
  double C = 1.0;
  double tolerance = 1e-4;
  std::size_t max_epochs = 1000;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;

  static TrainConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct BinaryLinearModel {
  std::vector<double> weights;
  double bias = 0.0;
};

// Minimizes F(w, b) = 0.5*||w||^2 + C * sum_i max(0, 1 - y_i (w.x_i + b))
// over the feature columns 0..dim-1, with the bias unregularized. Labels
// are +1/-1. The solver works on the dual with two-variable updates: each
// epoch visits the examples in a seed-driven random order updating adjacent
// pairs, then scans all gradients, which both decides convergence (maximal
// KKT violation <= tolerance) and supplies the most-violating pair for one
// more update. The bias is finished off by exact minimization of F in b.
// Deterministic given (data order, config).
//
// Throws DegenerateDataError when only one label value is present,
// std::invalid_argument on malformed inputs, std::runtime_error if the
// solution is non-finite.
BinaryLinearModel train_binary(const std::vector<SparseBinaryVector>& examples,
                               const std::vector<int>& labels, std::size_t dim,
                               const TrainConfig& config);

// One binary machine per class, class-c examples against the rest. The
// binary problems are independent; each gets its own seed stream derived
// from config.seed and the class index.
class MulticlassModel {
 public:
  MulticlassModel() = default;
  MulticlassModel(std::vector<std::string> class_list,
                  std::vector<BinaryLinearModel> models, FeatureSpace space,
                  TrainConfig config);

  const std::vector<std::string>& class_list() const { return class_list_; }
  const std::vector<BinaryLinearModel>& models() const { return models_; }
  const FeatureSpace& feature_space() const { return space_; }
  const TrainConfig& config() const { return config_; }

  // w_c.x + b_c per class, in class_list order.
  std::vector<double> decision_values(const SparseBinaryVector& x) const;
  // Argmax of the decision values; ties go to the lowest class index.
  std::size_t predict_index(const SparseBinaryVector& x) const;
  const std::string& predict(const SparseBinaryVector& x) const;

  nlohmann::json to_json() const;
  static MulticlassModel from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  static MulticlassModel load(const std::string& path);

 private:
  std::vector<std::string> class_list_;
  std::vector<BinaryLinearModel> models_;
  FeatureSpace space_;
  TrainConfig config_;
  // Column-major weight table (all classes for feature 0, then feature 1,
  // ...) plus the bias row, laid out for kernels::class_accumulate.
  std::vector<double> packed_;
  std::vector<double> biases_;

  void pack();
};

MulticlassModel train_ovr(const std::vector<SparseBinaryVector>& examples,
                          const std::vector<std::string>& labels,
                          const std::vector<std::string>& classes,
                          FeatureSpace space, const TrainConfig& config);

}  // namespace silvercat

#endif  // SILVERCAT_SVM_HPP_
