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

#ifndef SILVERCAT_CORPUS_HPP_
#define SILVERCAT_CORPUS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "silvercat/class_scheme.hpp"
#include "silvercat/records.hpp"

namespace silvercat {

struct TransferStats {
  std::size_t resolved = 0;
  std::size_t unresolved = 0;
  std::size_t dropped_class = 0;
  std::size_t unknown_category = 0;
  std::map<std::string, std::size_t> per_class;

  nlohmann::json to_json() const;
};

struct DedupStats {
  std::size_t kept = 0;
  std::size_t retweets = 0;
  std::size_t duplicates = 0;

  nlohmann::json to_json() const;
};

// Labels one tweet from the video it links: the first extractable video id
// that resolves in the map decides. Returns nothing when no id resolves, the
// video's category is unknown, or the category merges to DROP; stats pick up
// the reason either way.
std::optional<LabeledExample> transfer_label(
    const TweetRecord& tweet,
    const std::map<std::string, VideoMeta>& videos, const ClassScheme& scheme,
    TransferStats& stats);

// Retweet and duplicate filter, streaming: feed examples in order, keep those
// for which keep() says true. Retweets (text starting "RT @", case-
// insensitive, after leading whitespace) are dropped outright; of the rest
// the first example per dedup key wins. The key is the text case-folded,
// URL-stripped and whitespace-collapsed, so share-button copies differing
// only by link or case collide.
class Deduper {
 public:
  bool keep(const LabeledExample& example);
  const DedupStats& stats() const { return stats_; }

  static bool is_retweet(const std::string& text);
  static std::string dedup_key(const std::string& text);

 private:
  std::set<std::string> seen_;
  DedupStats stats_;
};

std::vector<LabeledExample> dedupe(const std::vector<LabeledExample>& examples,
                                   DedupStats& stats);

// Uniform per-class sample of min(cap, class size) examples without
// replacement. Classes are processed in `classes` order, each with its own
// seed-derived stream, so the result is a deterministic function of (input
// order, classes, cap, seed). Labels outside `classes` are ignored. An empty
// class is skipped with a stderr warning.
std::vector<LabeledExample> balance_sample(
    const std::vector<LabeledExample>& examples,
    const std::vector<std::string>& classes, std::size_t cap,
    std::uint64_t seed);

// Seeded disjoint split with exactly per_class_test examples of every class
// in the test half. Throws DegenerateDataError (naming the class) unless
// every class has strictly more than per_class_test examples.
std::pair<std::vector<LabeledExample>, std::vector<LabeledExample>>
split_holdout(const std::vector<LabeledExample>& examples,
              const std::vector<std::string>& classes,
              std::size_t per_class_test, std::uint64_t seed);

// Relabels with the 4-class coarse scheme.
LabeledExample coarsen(LabeledExample example, const ClassScheme& scheme);

}  // namespace silvercat

#endif  // SILVERCAT_CORPUS_HPP_
