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

#ifndef SILVERCAT_FEATURES_HPP_
#define SILVERCAT_FEATURES_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "silvercat/textproc.hpp"

namespace silvercat {

// Column ids of the terms present in a document, strictly increasing.
// Features are binary, so presence is all there is to store.
using SparseBinaryVector = std::vector<std::int32_t>;

// Document-frequency statistics per term and class. A document contributes
// at most one count per distinct term (set semantics), so df_t[t] is the
// number of documents containing t and equals the sum of df_tc[t][c] over
// classes. Counts from disjoint shards merge associatively.
class TermClassCounts {
 public:
  explicit TermClassCounts(std::vector<std::string> classes);

  void add_document(const text::TokenList& tokens, const std::string& label);
  void merge(const TermClassCounts& other);

  std::size_t total_documents() const { return total_; }
  std::size_t num_classes() const { return classes_.size(); }
  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t class_documents(std::size_t c) const { return n_c_[c]; }

  // Documents containing the term, overall and within one class.
  std::size_t term_documents(const std::string& term) const;
  std::size_t term_class_documents(const std::string& term,
                                   std::size_t c) const;

  // Per-class document frequencies keyed by term.
  const std::map<std::string, std::vector<std::uint32_t>>& table() const {
    return df_;
  }

 private:
  std::vector<std::string> classes_;
  std::map<std::string, std::size_t> class_index_;
  std::vector<std::size_t> n_c_;
  std::size_t total_ = 0;
  std::map<std::string, std::vector<std::uint32_t>> df_;
};

// Information gain of a term for one class, in bits: the mutual information
// of the presence indicator and the class-membership indicator,
//   sum over t in {present, absent}, c in {member, not}
//       of P(t,c) * log2(P(t,c) / (P(t) P(c))),
// with maximum-likelihood probabilities straight from the counts (no
// smoothing), the 0*log(0) = 0 convention, and the result clamped at >= 0
// against rounding. Throws on N = 0 or inconsistent counts.
double information_gain(std::size_t N, std::size_t n_c, std::size_t df_t,
                        std::size_t df_tc);
double information_gain(const TermClassCounts& counts, const std::string& term,
                        std::size_t c);

// The merged feature space: per-class top-n terms by information gain,
// unioned, with dense column ids in lexicographic term order (score order
// would tie column ids to floating-point ranks; lexicographic keeps model
// files diffable).
struct FeatureSpace {
  std::size_t n_per_class = 0;
  std::vector<std::string> terms;
  std::map<std::string, std::int32_t> index;
  std::map<std::string, std::vector<std::string>> per_class_top;

  std::size_t size() const { return terms.size(); }

  static FeatureSpace from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Ranks every term per class by (information gain desc, df_t desc, term
// asc - the tie-breaks keep selection deterministic), takes the top
// min(n_per_class, vocabulary) for each class, and merges.
FeatureSpace select_round_robin(const TermClassCounts& counts,
                                std::size_t n_per_class);

// Column ids of the distinct in-space tokens, sorted; out-of-space tokens
// are dropped.
SparseBinaryVector vectorize(const text::TokenList& tokens,
                             const FeatureSpace& space);

}  // namespace silvercat

#endif  // SILVERCAT_FEATURES_HPP_
