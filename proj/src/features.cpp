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

#include "silvercat/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "silvercat/errors.hpp"

namespace silvercat {

TermClassCounts::TermClassCounts(std::vector<std::string> classes)
    : classes_(std::move(classes)), n_c_(classes_.size(), 0) {
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    class_index_[classes_[c]] = c;
  }
}

void TermClassCounts::add_document(const text::TokenList& tokens,
                                   const std::string& label) {
  auto it = class_index_.find(label);
  if (it == class_index_.end()) {
    throw LabelMismatchError("label '" + label + "' is not a known class");
  }
  const std::size_t c = it->second;
  ++n_c_[c];
  ++total_;
  std::set<std::string> distinct(tokens.begin(), tokens.end());
  for (const std::string& term : distinct) {
    auto [entry, inserted] =
        df_.try_emplace(term, std::vector<std::uint32_t>(classes_.size(), 0));
    ++entry->second[c];
  }
}

void TermClassCounts::merge(const TermClassCounts& other) {
  if (other.classes_ != classes_) {
    throw LabelMismatchError("cannot merge counts over different class lists");
  }
  total_ += other.total_;
  for (std::size_t c = 0; c < n_c_.size(); ++c) n_c_[c] += other.n_c_[c];
  for (const auto& [term, counts] : other.df_) {
    auto [entry, inserted] =
        df_.try_emplace(term, std::vector<std::uint32_t>(classes_.size(), 0));
    for (std::size_t c = 0; c < counts.size(); ++c) {
      entry->second[c] += counts[c];
    }
  }
}

std::size_t TermClassCounts::term_documents(const std::string& term) const {
  auto it = df_.find(term);
  if (it == df_.end()) return 0;
  std::size_t sum = 0;
  for (std::uint32_t x : it->second) sum += x;
  return sum;
}

std::size_t TermClassCounts::term_class_documents(const std::string& term,
                                                  std::size_t c) const {
  auto it = df_.find(term);
  return it == df_.end() ? 0 : it->second[c];
}

namespace {

// One addend of the mutual-information sum, from raw counts:
// (joint/N) * log2(joint*N / (a*b)), zero when the joint count is zero.
double mi_cell(std::size_t joint, std::size_t a, std::size_t b,
               std::size_t N) {
  if (joint == 0) return 0.0;
  const double dj = static_cast<double>(joint);
  return dj / static_cast<double>(N) *
         std::log2(dj * static_cast<double>(N) /
                   (static_cast<double>(a) * static_cast<double>(b)));
}

}  // namespace

double information_gain(std::size_t N, std::size_t n_c, std::size_t df_t,
                        std::size_t df_tc) {
  if (N == 0) {
    throw DegenerateDataError(
        "information gain is undefined on an empty corpus");
  }
  if (n_c > N || df_t > N || df_tc > df_t || df_tc > n_c ||
      df_t - df_tc > N - n_c) {
    throw std::invalid_argument("inconsistent document counts");
  }
  const double ig =
      mi_cell(df_tc, df_t, n_c, N) +
      mi_cell(df_t - df_tc, df_t, N - n_c, N) +
      mi_cell(n_c - df_tc, N - df_t, n_c, N) +
      mi_cell(N - df_t - n_c + df_tc, N - df_t, N - n_c, N);
  return std::max(ig, 0.0);
}

double information_gain(const TermClassCounts& counts, const std::string& term,
                        std::size_t c) {
  return information_gain(counts.total_documents(),
                          counts.class_documents(c),
                          counts.term_documents(term),
                          counts.term_class_documents(term, c));
}

FeatureSpace select_round_robin(const TermClassCounts& counts,
                                std::size_t n_per_class) {
  if (n_per_class == 0) {
    throw std::invalid_argument("n_per_class must be >= 1");
  }
  const std::size_t ncls = counts.num_classes();
  const std::size_t N = counts.total_documents();

  // Flat copy of the table; df_t is reused across all classes.
  struct TermRow {
    const std::string* term;
    const std::vector<std::uint32_t>* df;
    std::size_t df_t;
  };
  std::vector<TermRow> rows;
  rows.reserve(counts.table().size());
  for (const auto& [term, df] : counts.table()) {
    std::size_t df_t = 0;
    for (std::uint32_t x : df) df_t += x;
    rows.push_back({&term, &df, df_t});
  }

  struct Ranked {
    double ig;
    std::size_t df_t;
    const std::string* term;
  };
  const auto better = [](const Ranked& a, const Ranked& b) {
    if (a.ig != b.ig) return a.ig > b.ig;
    if (a.df_t != b.df_t) return a.df_t > b.df_t;
    return *a.term < *b.term;
  };

  FeatureSpace space;
  space.n_per_class = n_per_class;
  std::set<std::string> merged;
  std::vector<Ranked> ranked(rows.size());
  for (std::size_t c = 0; c < ncls; ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double ig = information_gain(N, counts.class_documents(c),
                                         rows[r].df_t, (*rows[r].df)[c]);
      ranked[r] = {ig, rows[r].df_t, rows[r].term};
    }
    const std::size_t take = std::min(n_per_class, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + take, ranked.end(),
                      better);
    std::vector<std::string>& top = space.per_class_top[counts.classes()[c]];
    top.reserve(take);
    for (std::size_t r = 0; r < take; ++r) {
      top.push_back(*ranked[r].term);
      merged.insert(*ranked[r].term);
    }
  }

  space.terms.assign(merged.begin(), merged.end());
  for (std::size_t i = 0; i < space.terms.size(); ++i) {
    space.index[space.terms[i]] = static_cast<std::int32_t>(i);
  }
  return space;
}

SparseBinaryVector vectorize(const text::TokenList& tokens,
                             const FeatureSpace& space) {
  SparseBinaryVector v;
  for (const std::string& token : tokens) {
    auto it = space.index.find(token);
    if (it != space.index.end()) v.push_back(it->second);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

FeatureSpace FeatureSpace::from_json(const nlohmann::json& j) {
  FeatureSpace space;
  space.n_per_class = j.at("n_per_class").get<std::size_t>();
  j.at("terms").get_to(space.terms);
  j.at("per_class_top").get_to(space.per_class_top);
  for (std::size_t i = 0; i < space.terms.size(); ++i) {
    auto [it, inserted] =
        space.index.emplace(space.terms[i], static_cast<std::int32_t>(i));
    if (!inserted) {
      throw std::invalid_argument("feature space has duplicate terms");
    }
  }
  return space;
}

nlohmann::json FeatureSpace::to_json() const {
  return nlohmann::json{{"n_per_class", n_per_class},
                        {"terms", terms},
                        {"per_class_top", per_class_top}};
}

}  // namespace silvercat
