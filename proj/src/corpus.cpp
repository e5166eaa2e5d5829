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

#include "silvercat/corpus.hpp"

#include <iostream>

#include "silvercat/errors.hpp"
#include "silvercat/rng.hpp"
#include "silvercat/textproc.hpp"
#include "silvercat/unicode.hpp"
#include "silvercat/video_urls.hpp"

namespace silvercat {

nlohmann::json TransferStats::to_json() const {
  return nlohmann::json{{"resolved", resolved},
                        {"unresolved", unresolved},
                        {"dropped_class", dropped_class},
                        {"unknown_category", unknown_category},
                        {"per_class", per_class}};
}

nlohmann::json DedupStats::to_json() const {
  return nlohmann::json{
      {"kept", kept}, {"retweets", retweets}, {"duplicates", duplicates}};
}

std::optional<LabeledExample> transfer_label(
    const TweetRecord& tweet,
    const std::map<std::string, VideoMeta>& videos, const ClassScheme& scheme,
    TransferStats& stats) {
  const VideoMeta* video = nullptr;
  for (const std::string& id : extract_video_ids(tweet.text, tweet.urls)) {
    auto it = videos.find(id);
    if (it != videos.end()) {
      video = &it->second;
      break;
    }
  }
  if (video == nullptr) {
    ++stats.unresolved;
    return std::nullopt;
  }
  if (!scheme.is_raw_category(video->category)) {
    ++stats.unknown_category;
    std::cerr << "warning: unknown category '" << video->category
              << "' for video " << video->video_id << ", skipped\n";
    return std::nullopt;
  }
  const std::string& label = scheme.merge(video->category);
  if (label == ClassScheme::kDrop) {
    ++stats.dropped_class;
    return std::nullopt;
  }
  ++stats.resolved;
  ++stats.per_class[label];

  LabeledExample example;
  example.text = tweet.text;
  example.label = label;
  example.video_id = video->video_id;
  if (!video->title.empty()) example.title = video->title;
  example.timestamp = tweet.timestamp;
  return example;
}

bool Deduper::is_retweet(const std::string& text) {
  const std::u32string cps = uni::decode_utf8(text);
  std::size_t i = 0;
  while (i < cps.size() && uni::is_whitespace(cps[i])) ++i;
  return i + 3 < cps.size() && (cps[i] == U'R' || cps[i] == U'r') &&
         (cps[i + 1] == U'T' || cps[i + 1] == U't') && cps[i + 2] == U' ' &&
         cps[i + 3] == U'@';
}

std::string Deduper::dedup_key(const std::string& text) {
  // Elongation collapse stays off: "cooool" and "coool" are different posts.
  text::NormalizeOptions options;
  options.collapse_elongation = false;
  return text::normalize(text, options);
}

bool Deduper::keep(const LabeledExample& example) {
  if (is_retweet(example.text)) {
    ++stats_.retweets;
    return false;
  }
  if (!seen_.insert(dedup_key(example.text)).second) {
    ++stats_.duplicates;
    return false;
  }
  ++stats_.kept;
  return true;
}

std::vector<LabeledExample> dedupe(const std::vector<LabeledExample>& examples,
                                   DedupStats& stats) {
  Deduper deduper;
  std::vector<LabeledExample> out;
  for (const LabeledExample& e : examples) {
    if (deduper.keep(e)) out.push_back(e);
  }
  stats = deduper.stats();
  return out;
}

namespace {

// Example indices grouped by label, one bucket per entry of `classes`,
// preserving input order within each bucket.
std::vector<std::vector<std::size_t>> bucket_by_class(
    const std::vector<LabeledExample>& examples,
    const std::vector<std::string>& classes) {
  std::map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < classes.size(); ++c) index[classes[c]] = c;
  std::vector<std::vector<std::size_t>> buckets(classes.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    auto it = index.find(examples[i].label);
    if (it != index.end()) buckets[it->second].push_back(i);
  }
  return buckets;
}

}  // namespace

std::vector<LabeledExample> balance_sample(
    const std::vector<LabeledExample>& examples,
    const std::vector<std::string>& classes, std::size_t cap,
    std::uint64_t seed) {
  const auto buckets = bucket_by_class(examples, classes);
  std::vector<LabeledExample> out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (buckets[c].empty()) {
      std::cerr << "warning: class '" << classes[c]
                << "' has no examples to sample\n";
      continue;
    }
    const std::size_t take = std::min(cap, buckets[c].size());
    Rng rng(derive_seed(seed, c));
    for (std::size_t i : sample_indices(buckets[c].size(), take, rng)) {
      out.push_back(examples[buckets[c][i]]);
    }
  }
  return out;
}

std::pair<std::vector<LabeledExample>, std::vector<LabeledExample>>
split_holdout(const std::vector<LabeledExample>& examples,
              const std::vector<std::string>& classes,
              std::size_t per_class_test, std::uint64_t seed) {
  const auto buckets = bucket_by_class(examples, classes);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (buckets[c].size() <= per_class_test) {
      throw DegenerateDataError(
          "class '" + classes[c] + "' has " +
          std::to_string(buckets[c].size()) +
          " examples, need more than " + std::to_string(per_class_test) +
          " to hold out a test set");
    }
  }
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> test;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    Rng rng(derive_seed(seed, c));
    const auto order =
        sample_indices(buckets[c].size(), buckets[c].size(), rng);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const LabeledExample& e = examples[buckets[c][order[i]]];
      (i < per_class_test ? test : train).push_back(e);
    }
  }
  return {std::move(train), std::move(test)};
}

LabeledExample coarsen(LabeledExample example, const ClassScheme& scheme) {
  const std::string& coarse = scheme.coarsen(example.label);
  if (coarse.empty()) {
    throw LabelMismatchError("label '" + example.label +
                             "' has no coarse class");
  }
  example.label = coarse;
  return example;
}

}  // namespace silvercat
