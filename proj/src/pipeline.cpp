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

#include "silvercat/pipeline.hpp"

#include <stdexcept>
#include <utility>

#include "silvercat/features.hpp"

namespace silvercat {

Variant variant_from_string(std::string_view name) {
  if (name == "base") return Variant::base;
  if (name == "v") return Variant::v;
  if (name == "h") return Variant::h;
  if (name == "vh") return Variant::vh;
  throw std::invalid_argument("unknown variant '" + std::string(name) +
                              "' (expected base, v, h or vh)");
}

std::string_view variant_name(Variant variant) {
  switch (variant) {
    case Variant::base:
      return "base";
    case Variant::v:
      return "v";
    case Variant::h:
      return "h";
    case Variant::vh:
      return "vh";
  }
  throw std::invalid_argument("unknown variant value");
}

namespace {

bool duplicates_hashtags(Variant v) {
  return v == Variant::h || v == Variant::vh;
}

bool enriches_with_title(Variant v) {
  return v == Variant::v || v == Variant::vh;
}

}  // namespace

text::TokenList train_tokens(const LabeledExample& example,
                             const PipelineOptions& options) {
  text::TokenList tokens =
      text::tokenize(text::normalize(example.text, options.normalize));
  if (duplicates_hashtags(options.variant)) {
    tokens = text::duplicate_hashtags(std::move(tokens));
  }
  if (enriches_with_title(options.variant) && example.title) {
    tokens = text::enrich_with_title(std::move(tokens), *example.title,
                                     options.normalize);
  }
  return tokens;
}

text::TokenList predict_tokens(std::string_view text,
                               const PipelineOptions& options) {
  text::TokenList tokens =
      text::tokenize(text::normalize(text, options.normalize));
  if (duplicates_hashtags(options.variant)) {
    tokens = text::duplicate_hashtags(std::move(tokens));
  }
  return tokens;
}

TokenizedCorpus tokenize_corpus(const std::vector<LabeledExample>& examples,
                                const PipelineOptions& options) {
  TokenizedCorpus corpus;
  corpus.train.reserve(examples.size());
  corpus.predict.reserve(examples.size());
  corpus.labels.reserve(examples.size());
  for (const auto& example : examples) {
    corpus.train.push_back(train_tokens(example, options));
    corpus.predict.push_back(predict_tokens(example.text, options));
    corpus.labels.push_back(example.label);
  }
  return corpus;
}

MulticlassModel build_model(const std::vector<text::TokenList>& train_tokens,
                            const std::vector<std::string>& labels,
                            const std::vector<std::string>& classes,
                            std::size_t n_per_class,
                            const TrainConfig& config) {
  if (train_tokens.size() != labels.size()) {
    throw std::invalid_argument("token lists and labels differ in length");
  }
  TermClassCounts counts(classes);
  for (std::size_t i = 0; i < train_tokens.size(); ++i) {
    counts.add_document(train_tokens[i], labels[i]);
  }
  FeatureSpace space = select_round_robin(counts, n_per_class);
  std::vector<SparseBinaryVector> xs;
  xs.reserve(train_tokens.size());
  for (const auto& tokens : train_tokens) {
    xs.push_back(vectorize(tokens, space));
  }
  return train_ovr(xs, labels, classes, std::move(space), config);
}

std::vector<std::string> predict_corpus(
    const MulticlassModel& model,
    const std::vector<text::TokenList>& predict_tokens) {
  std::vector<std::string> predicted;
  predicted.reserve(predict_tokens.size());
  for (const auto& tokens : predict_tokens) {
    predicted.push_back(model.predict(vectorize(tokens, model.feature_space())));
  }
  return predicted;
}

}  // namespace silvercat
