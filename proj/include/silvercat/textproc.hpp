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

#ifndef SILVERCAT_TEXTPROC_HPP_
#define SILVERCAT_TEXTPROC_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace silvercat::text {

// Tweet-text cleanup knobs. The defaults reproduce the standard pipeline:
// fold case, drop hyperlinks, squeeze letter elongations down to doubles.
struct NormalizeOptions {
  bool case_fold = true;
  bool strip_urls = true;
  bool collapse_elongation = true;
  // Runs of three or more identical code points shrink to this many copies.
  int max_run = 2;
  // Optional per-code-point substitution applied right after NFC. Extension
  // seam for script-specific cleanup (e.g. mapping letter variants).
  std::map<char32_t, char32_t> extra_char_map;
};

using TokenList = std::vector<std::string>;

// Cleans one piece of text. Steps, in order: Unicode NFC, extra_char_map
// substitution, URL removal, case folding, elongation collapse, whitespace
// collapse and trim. Idempotent under the default options.
std::string normalize(std::string_view text, const NormalizeOptions& options = {});

// Splits normalized text on whitespace and bares each token of leading and
// trailing punctuation or symbols. A leading '#' or '@' survives, so hashtags
// and mentions stay distinct from plain words. Interior punctuation
// (apostrophes, hyphens) is untouched. Empty results are dropped.
TokenList tokenize(std::string_view normalized);

// Appends, for every "#tag" token with a nonempty tag, a copy without the
// hash sign. Appended copies keep the hashtags' original order.
TokenList duplicate_hashtags(TokenList tokens);

// Appends the normalized, tokenized title. A missing title (or one that
// normalizes to nothing, e.g. a bare hyperlink) leaves the tokens unchanged.
TokenList enrich_with_title(TokenList tokens, std::string_view title,
                            const NormalizeOptions& options = {});

void to_json(nlohmann::json& j, const NormalizeOptions& options);
void from_json(const nlohmann::json& j, NormalizeOptions& options);

}  // namespace silvercat::text

#endif  // SILVERCAT_TEXTPROC_HPP_
