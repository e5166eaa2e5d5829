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

#ifndef SILVERCAT_PIPELINE_HPP_
#define SILVERCAT_PIPELINE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "silvercat/records.hpp"
#include "silvercat/svm.hpp"
#include "silvercat/textproc.hpp"

namespace silvercat {

// The four training setups: `v` enriches training tokens with the linked
// video's title, `h` duplicates hashtags as plain words, `vh` does both.
// Title enrichment applies to training text only (arbitrary input text has
// no linked video); hashtag duplication is a text transform and applies on
// both sides, otherwise a "#news" in a test tweet could never hit the
// "news" column it was trained with.
enum class Variant { base, v, h, vh };

Variant variant_from_string(std::string_view name);
std::string_view variant_name(Variant variant);

struct PipelineOptions {
  Variant variant = Variant::base;
  text::NormalizeOptions normalize;
};

// Token view of one example as the trainer sees it.
text::TokenList train_tokens(const LabeledExample& example,
                             const PipelineOptions& options);
// Token view of arbitrary text as the predictor sees it: never enriched.
text::TokenList predict_tokens(std::string_view text,
                               const PipelineOptions& options);

// Both token views of a labeled corpus, index-aligned with it. Protocols
// that train and test on slices of one corpus (cross-validation, curves)
// need the two views of the same document to differ exactly as live
// training and prediction would.
struct TokenizedCorpus {
  std::vector<text::TokenList> train;
  std::vector<text::TokenList> predict;
  std::vector<std::string> labels;

  std::size_t size() const { return labels.size(); }
};

TokenizedCorpus tokenize_corpus(const std::vector<LabeledExample>& examples,
                                const PipelineOptions& options);

// count -> select -> vectorize -> one-vs-rest train, from token lists.
MulticlassModel build_model(const std::vector<text::TokenList>& train_tokens,
                            const std::vector<std::string>& labels,
                            const std::vector<std::string>& classes,
                            std::size_t n_per_class, const TrainConfig& config);

std::vector<std::string> predict_corpus(
    const MulticlassModel& model,
    const std::vector<text::TokenList>& predict_tokens);

}  // namespace silvercat

#endif  // SILVERCAT_PIPELINE_HPP_
