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

#include "silvercat/svm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "silvercat/errors.hpp"
#include "silvercat/kernels.hpp"
#include "silvercat/rng.hpp"

namespace silvercat {
namespace {

// x_i . x_j for binary vectors is the size of the index intersection.
std::size_t intersection_size(const SparseBinaryVector& a,
                              const SparseBinaryVector& b) {
  std::size_t n = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

void validate_examples(const std::vector<SparseBinaryVector>& examples,
                       std::size_t dim) {
  for (const auto& x : examples) {
    std::int32_t prev = -1;
    for (std::int32_t id : x) {
      if (id <= prev || static_cast<std::size_t>(id) >= dim) {
        throw std::invalid_argument(
            "example columns must be strictly increasing and below the "
            "feature dimension");
      }
      prev = id;
    }
  }
}

// Exact minimizer over b of 0.5*||w||^2 + C * sum of hinges. The objective
// is piecewise linear and convex in b with breakpoints where an example's
// margin crosses 1 (b = y_i - w.x_i); C scales the derivative without
// moving its zero crossing, so sweeping raw example counts suffices. With
// at least one positive the initial slope is negative, so the first
// breakpoint where the right derivative turns >= 0 is a global minimizer.
double exact_bias(const std::vector<SparseBinaryVector>& examples,
                  const std::vector<int>& labels,
                  const std::vector<double>& w) {
  std::vector<std::pair<double, int>> breaks;
  breaks.reserve(examples.size());
  std::ptrdiff_t pos_above = 0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const double f =
        kernels::sparse_sum(w.data(), examples[i].data(), examples[i].size());
    breaks.emplace_back(static_cast<double>(labels[i]) - f, labels[i]);
    pos_above += labels[i] > 0;
  }
  std::sort(breaks.begin(), breaks.end());
  std::ptrdiff_t neg_passed = 0;
  std::size_t i = 0;
  while (i < breaks.size()) {
    const double b = breaks[i].first;
    for (; i < breaks.size() && breaks[i].first == b; ++i) {
      if (breaks[i].second > 0) {
        --pos_above;
      } else {
        ++neg_passed;
      }
    }
    if (neg_passed >= pos_above) return b;
  }
  return breaks.back().first;
}

}  // namespace

void TrainConfig::validate() const {
  if (!std::isfinite(C) || C <= 0.0) {
    throw std::invalid_argument("C must be positive and finite");
  }
  if (!std::isfinite(tolerance) || tolerance <= 0.0) {
    throw std::invalid_argument("tolerance must be positive and finite");
  }
  if (max_epochs == 0) {
    throw std::invalid_argument("max_epochs must be at least 1");
  }
}

TrainConfig TrainConfig::from_json(const nlohmann::json& j) {
  TrainConfig config;
  config.C = j.value("C", config.C);
  config.tolerance = j.value("tolerance", config.tolerance);
  config.max_epochs = j.value("max_epochs", config.max_epochs);
  config.seed = j.value("seed", config.seed);
  config.validate();
  return config;
}

nlohmann::json TrainConfig::to_json() const {
  return nlohmann::json{{"C", C},
                        {"tolerance", tolerance},
                        {"max_epochs", max_epochs},
                        {"seed", seed}};
}

BinaryLinearModel train_binary(const std::vector<SparseBinaryVector>& examples,
                               const std::vector<int>& labels, std::size_t dim,
                               const TrainConfig& config) {
  config.validate();
  if (examples.size() != labels.size()) {
    throw std::invalid_argument("examples and labels differ in length");
  }
  validate_examples(examples, dim);
  std::size_t positives = 0, negatives = 0;
  for (int y : labels) {
    if (y == 1) {
      ++positives;
    } else if (y == -1) {
      ++negatives;
    } else {
      throw std::invalid_argument("labels must be +1 or -1");
    }
  }
  if (positives == 0 || negatives == 0) {
    throw DegenerateDataError("training needs both label values; got " +
                              std::to_string(positives) + " positive and " +
                              std::to_string(negatives) + " negative");
  }

  // Dual problem: minimize 0.5*||w(alpha)||^2 - sum alpha_i over
  // 0 <= alpha <= C with sum alpha_i y_i = 0 (the constraint that makes the
  // bias free); w(alpha) = sum alpha_i y_i x_i. grad_i = y_i*(w.x_i) - 1.
  const std::size_t l = examples.size();
  const double C = config.C;
  std::vector<double> w(dim, 0.0);
  std::vector<double> alpha(l, 0.0);

  auto grad = [&](std::size_t a) {
    return labels[a] * kernels::sparse_sum(w.data(), examples[a].data(),
                                           examples[a].size()) -
           1.0;
  };

  // Exact minimization over the pair (i, j) along the one direction that
  // preserves the equality constraint: alpha_i moves by t*y_i, alpha_j by
  // -t*y_j. The curvature along it is ||x_i - x_j||^2; when that is zero
  // the restriction is linear and the step runs to whichever box wall the
  // slope points at.
  auto update_pair = [&](std::size_t i, std::size_t j, double gi, double gj) {
    if (i == j) return;
    const double yi = labels[i];
    const double yj = labels[j];
    const double slope = yi * gi - yj * gj;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    if (yi > 0) {
      lo = std::max(lo, -alpha[i]);
      hi = std::min(hi, C - alpha[i]);
    } else {
      lo = std::max(lo, alpha[i] - C);
      hi = std::min(hi, alpha[i]);
    }
    if (yj > 0) {
      lo = std::max(lo, alpha[j] - C);
      hi = std::min(hi, alpha[j]);
    } else {
      lo = std::max(lo, -alpha[j]);
      hi = std::min(hi, C - alpha[j]);
    }
    const double kappa =
        static_cast<double>(examples[i].size() + examples[j].size()) -
        2.0 * static_cast<double>(intersection_size(examples[i], examples[j]));
    double t;
    if (kappa > 0.0) {
      t = std::clamp(-slope / kappa, lo, hi);
    } else {
      t = slope < 0.0 ? hi : (slope > 0.0 ? lo : 0.0);
    }
    if (t == 0.0) return;
    alpha[i] = std::clamp(alpha[i] + t * yi, 0.0, C);
    alpha[j] = std::clamp(alpha[j] - t * yj, 0.0, C);
    kernels::scatter_add(w.data(), examples[i].data(), examples[i].size(), t);
    kernels::scatter_add(w.data(), examples[j].data(), examples[j].size(), -t);
  };

  Rng rng(config.seed);
  std::vector<std::size_t> order(l);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t epoch = 0; epoch < config.max_epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t k = 0; k + 1 < l; ++k) {
      const std::size_t i = order[k];
      const std::size_t j = order[k + 1];
      update_pair(i, j, grad(i), grad(j));
    }

    // Full scan: the maximal KKT violation m - M decides convergence, and
    // its argmax/argmin is the most violating pair, which gets one more
    // update so every epoch makes guaranteed progress.
    double m = -std::numeric_limits<double>::infinity();
    double M = std::numeric_limits<double>::infinity();
    double g_up = 0.0, g_low = 0.0;
    std::size_t arg_up = l, arg_low = l;
    for (std::size_t a = 0; a < l; ++a) {
      const double g = grad(a);
      const double v = -labels[a] * g;
      const bool in_up = labels[a] > 0 ? alpha[a] < C : alpha[a] > 0.0;
      const bool in_low = labels[a] > 0 ? alpha[a] > 0.0 : alpha[a] < C;
      if (in_up && v > m) {
        m = v;
        g_up = g;
        arg_up = a;
      }
      if (in_low && v < M) {
        M = v;
        g_low = g;
        arg_low = a;
      }
    }
    if (m - M <= config.tolerance) break;
    if (arg_up < l && arg_low < l) update_pair(arg_up, arg_low, g_up, g_low);
  }

  BinaryLinearModel model;
  model.weights = std::move(w);
  model.bias = exact_bias(examples, labels, model.weights);
  for (double v : model.weights) {
    if (!std::isfinite(v)) {
      throw std::runtime_error("training produced a non-finite weight");
    }
  }
  if (!std::isfinite(model.bias)) {
    throw std::runtime_error("training produced a non-finite bias");
  }
  return model;
}

MulticlassModel::MulticlassModel(std::vector<std::string> class_list,
                                 std::vector<BinaryLinearModel> models,
                                 FeatureSpace space, TrainConfig config)
    : class_list_(std::move(class_list)),
      models_(std::move(models)),
      space_(std::move(space)),
      config_(config) {
  if (class_list_.empty()) {
    throw std::invalid_argument("class list is empty");
  }
  if (models_.size() != class_list_.size()) {
    throw std::invalid_argument("need exactly one binary model per class");
  }
  std::map<std::string, bool> seen;
  for (const auto& name : class_list_) {
    if (!seen.emplace(name, true).second) {
      throw std::invalid_argument("duplicate class: " + name);
    }
  }
  for (const auto& m : models_) {
    if (m.weights.size() != space_.size()) {
      throw std::invalid_argument(
          "weight vector length differs from the feature space size");
    }
  }
  pack();
}

void MulticlassModel::pack() {
  const std::size_t ncls = class_list_.size();
  const std::size_t dim = space_.size();
  packed_.assign(dim * ncls, 0.0);
  biases_.resize(ncls);
  for (std::size_t c = 0; c < ncls; ++c) {
    biases_[c] = models_[c].bias;
    for (std::size_t f = 0; f < dim; ++f) {
      packed_[f * ncls + c] = models_[c].weights[f];
    }
  }
}

std::vector<double> MulticlassModel::decision_values(
    const SparseBinaryVector& x) const {
  for (std::int32_t id : x) {
    if (id < 0 || static_cast<std::size_t>(id) >= space_.size()) {
      throw std::out_of_range("feature column outside the model's space");
    }
  }
  std::vector<double> values = biases_;
  kernels::class_accumulate(values.data(), packed_.data(), class_list_.size(),
                            x.data(), x.size());
  return values;
}

std::size_t MulticlassModel::predict_index(const SparseBinaryVector& x) const {
  const std::vector<double> values = decision_values(x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < values.size(); ++c) {
    if (values[c] > values[best]) best = c;
  }
  return best;
}

const std::string& MulticlassModel::predict(const SparseBinaryVector& x) const {
  return class_list_[predict_index(x)];
}

nlohmann::json MulticlassModel::to_json() const {
  nlohmann::json models = nlohmann::json::array();
  for (std::size_t c = 0; c < class_list_.size(); ++c) {
    models.push_back(nlohmann::json{{"class", class_list_[c]},
                                    {"weights", models_[c].weights},
                                    {"bias", models_[c].bias}});
  }
  return nlohmann::json{{"format_version", 1},
                        {"class_list", class_list_},
                        {"config", config_.to_json()},
                        {"feature_space", space_.to_json()},
                        {"models", std::move(models)}};
}

MulticlassModel MulticlassModel::from_json(const nlohmann::json& j) {
  if (j.value("format_version", 0) != 1) {
    throw std::invalid_argument("unsupported model format_version");
  }
  auto classes = j.at("class_list").get<std::vector<std::string>>();
  auto space = FeatureSpace::from_json(j.at("feature_space"));
  auto config = TrainConfig::from_json(j.at("config"));
  const auto& entries = j.at("models");
  if (!entries.is_array() || entries.size() != classes.size()) {
    throw std::invalid_argument("models must align with class_list");
  }
  std::vector<BinaryLinearModel> models;
  models.reserve(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& e = entries[c];
    if (e.at("class").get<std::string>() != classes[c]) {
      throw std::invalid_argument("model entries must follow class_list order");
    }
    BinaryLinearModel m;
    e.at("weights").get_to(m.weights);
    m.bias = e.at("bias").get<double>();
    if (!std::isfinite(m.bias)) {
      throw std::invalid_argument("model bias must be finite");
    }
    for (double v : m.weights) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("model weights must be finite");
      }
    }
    models.push_back(std::move(m));
  }
  return MulticlassModel(std::move(classes), std::move(models),
                         std::move(space), config);
}

void MulticlassModel::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << to_json().dump(2) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("failed writing model file: " + path);
}

MulticlassModel MulticlassModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("cannot open model file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("model file is not valid JSON: ") +
                                e.what());
  }
  return from_json(j);
}

MulticlassModel train_ovr(const std::vector<SparseBinaryVector>& examples,
                          const std::vector<std::string>& labels,
                          const std::vector<std::string>& classes,
                          FeatureSpace space, const TrainConfig& config) {
  config.validate();
  if (classes.empty()) {
    throw std::invalid_argument("class list is empty");
  }
  if (examples.size() != labels.size()) {
    throw std::invalid_argument("examples and labels differ in length");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (!index.emplace(classes[c], c).second) {
      throw std::invalid_argument("duplicate class: " + classes[c]);
    }
  }
  std::vector<std::size_t> which(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = index.find(labels[i]);
    if (it == index.end()) {
      throw LabelMismatchError("label '" + labels[i] +
                               "' is not in the class list");
    }
    which[i] = it->second;
  }

  std::vector<BinaryLinearModel> models;
  models.reserve(classes.size());
  std::vector<int> y(examples.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < examples.size(); ++i) {
      y[i] = which[i] == c ? 1 : -1;
      pos += which[i] == c;
    }
    if (pos == 0) {
      throw DegenerateDataError("class '" + classes[c] +
                                "' has no training examples");
    }
    // Stream keyed by name, not position: reordering the class list must
    // reproduce each class's training run exactly.
    TrainConfig per_class = config;
    per_class.seed = derive_seed(config.seed, stable_hash64(classes[c]));
    try {
      models.push_back(train_binary(examples, y, space.size(), per_class));
    } catch (const DegenerateDataError& e) {
      throw DegenerateDataError("class '" + classes[c] + "': " + e.what());
    }
  }
  return MulticlassModel(classes, std::move(models), std::move(space), config);
}

}  // namespace silvercat
