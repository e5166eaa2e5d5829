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

#include "silvercat/textproc.hpp"

#include <algorithm>
#include <stdexcept>

#include "silvercat/unicode.hpp"

namespace silvercat::text {

namespace {

// Hyperlink shapes worth recognizing in tweets. Matching is fold-based, so
// the check stays correct both before and after case folding.
constexpr std::string_view kUrlPrefixes[] = {
    "http://", "https://", "www.", "youtu.be/", "youtube.com/",
};

// True when the code points at s[pos..] case-fold to `prefix` (an ASCII
// lowercase string). Advances `end` past the matched code points.
bool folds_to_prefix(const std::u32string& s, std::size_t pos,
                     std::string_view prefix, std::size_t& end) {
  std::size_t want = 0;
  std::size_t i = pos;
  while (want < prefix.size()) {
    if (i >= s.size()) return false;
    const std::u32string folded = uni::case_fold(std::u32string(1, s[i]));
    for (char32_t f : folded) {
      if (want >= prefix.size() ||
          f != static_cast<unsigned char>(prefix[want])) {
        return false;
      }
      ++want;
    }
    ++i;
  }
  end = i;
  return true;
}

// Deletes every hyperlink: a recognized prefix at a word boundary plus all
// code points up to the next whitespace. A boundary is the string start or
// any preceding code point that is not an ASCII letter or digit.
std::u32string strip_urls(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const bool boundary = i == 0 || !uni::is_ascii_alnum(s[i - 1]);
    if (boundary) {
      std::size_t end = 0;
      bool matched = false;
      for (std::string_view prefix : kUrlPrefixes) {
        if (folds_to_prefix(s, i, prefix, end)) {
          matched = true;
          break;
        }
      }
      if (matched) {
        while (end < s.size() && !uni::is_whitespace(s[end])) ++end;
        i = end;
        continue;
      }
    }
    out.push_back(s[i]);
    ++i;
  }
  return out;
}

std::u32string collapse_runs(const std::u32string& s, int max_run) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    const std::size_t run = j - i;
    const std::size_t keep =
        run >= 3 ? std::min(run, static_cast<std::size_t>(max_run)) : run;
    out.append(keep, s[i]);
    i = j;
  }
  return out;
}

std::u32string collapse_whitespace(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char32_t cp : s) {
    if (uni::is_whitespace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(U' ');
      pending_space = false;
    }
    out.push_back(cp);
  }
  return out;
}

}  // namespace

std::string normalize(std::string_view text, const NormalizeOptions& options) {
  if (options.max_run < 1) throw std::invalid_argument("max_run must be >= 1");

  std::u32string cps = uni::nfc(uni::decode_utf8(text));
  if (!options.extra_char_map.empty()) {
    for (char32_t& cp : cps) {
      auto it = options.extra_char_map.find(cp);
      if (it != options.extra_char_map.end()) cp = it->second;
    }
  }
  if (options.strip_urls) cps = strip_urls(cps);
  if (options.case_fold) cps = uni::case_fold(cps);
  if (options.collapse_elongation) cps = collapse_runs(cps, options.max_run);
  cps = collapse_whitespace(cps);
  // Folding and run collapse can denormalize (e.g. one fold of U+00DF plus a
  // trailing combining mark yields "ss" + mark, which NFC would recompose).
  // Renormalizing keeps the output a fixed point of this function.
  cps = uni::nfc(cps);
  return uni::encode_utf8(cps);
}

TokenList tokenize(std::string_view normalized) {
  const std::u32string cps = uni::decode_utf8(normalized);
  TokenList tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && uni::is_whitespace(cps[i])) ++i;
    std::size_t j = i;
    while (j < cps.size() && !uni::is_whitespace(cps[j])) ++j;
    if (i == j) break;

    std::size_t lo = i;
    std::size_t hi = j;
    while (lo < hi && uni::is_punct_or_symbol(cps[lo])) {
      if (cps[lo] == U'#' || cps[lo] == U'@') break;
      ++lo;
    }
    while (lo < hi && uni::is_punct_or_symbol(cps[hi - 1])) --hi;
    if (lo < hi) {
      std::string token;
      for (std::size_t k = lo; k < hi; ++k) uni::append_utf8(token, cps[k]);
      tokens.push_back(std::move(token));
    }
    i = j;
  }
  return tokens;
}

TokenList duplicate_hashtags(TokenList tokens) {
  const std::size_t n = tokens.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (tokens[i].size() > 1 && tokens[i][0] == '#') {
      tokens.push_back(tokens[i].substr(1));
    }
  }
  return tokens;
}

TokenList enrich_with_title(TokenList tokens, std::string_view title,
                            const NormalizeOptions& options) {
  if (title.empty()) return tokens;
  TokenList extra = tokenize(normalize(title, options));
  tokens.insert(tokens.end(), std::make_move_iterator(extra.begin()),
                std::make_move_iterator(extra.end()));
  return tokens;
}

void to_json(nlohmann::json& j, const NormalizeOptions& options) {
  j = nlohmann::json{{"case_fold", options.case_fold},
                     {"strip_urls", options.strip_urls},
                     {"collapse_elongation", options.collapse_elongation},
                     {"max_run", options.max_run}};
  if (!options.extra_char_map.empty()) {
    nlohmann::json map = nlohmann::json::object();
    for (auto [from, to] : options.extra_char_map) {
      std::string key;
      std::string value;
      uni::append_utf8(key, from);
      uni::append_utf8(value, to);
      map[key] = value;
    }
    j["extra_char_map"] = std::move(map);
  }
}

void from_json(const nlohmann::json& j, NormalizeOptions& options) {
  options = NormalizeOptions{};
  options.case_fold = j.value("case_fold", options.case_fold);
  options.strip_urls = j.value("strip_urls", options.strip_urls);
  options.collapse_elongation =
      j.value("collapse_elongation", options.collapse_elongation);
  options.max_run = j.value("max_run", options.max_run);
  if (options.max_run < 1) throw std::invalid_argument("max_run must be >= 1");
  if (j.contains("extra_char_map")) {
    for (const auto& [key, value] : j.at("extra_char_map").items()) {
      const std::u32string from = uni::decode_utf8(key);
      const std::u32string to = uni::decode_utf8(value.get<std::string>());
      if (from.size() != 1 || to.size() != 1) {
        throw std::invalid_argument(
            "extra_char_map entries must map one character to one character");
      }
      options.extra_char_map[from[0]] = to[0];
    }
  }
}

}  // namespace silvercat::text
