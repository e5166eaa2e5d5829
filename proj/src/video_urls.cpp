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

#include "silvercat/video_urls.hpp"

#include <algorithm>
#include <set>

namespace silvercat {

namespace {

constexpr std::size_t kIdLength = 11;

bool is_id_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-';
}

char ascii_lower(char c) { return c >= 'A' && c <= 'Z' ? c + 32 : c; }

// An id candidate at `pos` is accepted only when exactly kIdLength id chars
// follow and the next char (if any) is outside the alphabet; a longer run is
// some other token.
bool take_id(std::string_view s, std::size_t pos, std::string& id) {
  if (pos + kIdLength > s.size()) return false;
  for (std::size_t i = 0; i < kIdLength; ++i) {
    if (!is_id_char(s[pos + i])) return false;
  }
  if (pos + kIdLength < s.size() && is_id_char(s[pos + kIdLength])) {
    return false;
  }
  id.assign(s.substr(pos, kIdLength));
  return true;
}

bool starts_with_at(const std::string& lower, std::size_t pos,
                    std::string_view prefix) {
  return lower.compare(pos, prefix.size(), prefix) == 0;
}

// Scans the query string after "watch" for a v=<id> parameter, wherever it
// sits in the parameter order.
bool watch_param_id(std::string_view s, std::size_t path, std::string& id) {
  std::size_t q = path + 5;
  if (q < s.size() && s[q] == '/') ++q;
  if (q >= s.size() || s[q] != '?') return false;
  ++q;
  while (q < s.size()) {
    if (s.compare(q, 2, "v=") == 0 && take_id(s, q + 2, id)) return true;
    const std::size_t amp = s.find('&', q);
    if (amp == std::string_view::npos) return false;
    q = amp + 1;
  }
  return false;
}

}  // namespace

bool is_video_id(std::string_view s) {
  return s.size() == kIdLength &&
         std::all_of(s.begin(), s.end(), is_id_char);
}

void scan_video_ids(std::string_view text, std::vector<std::string>& out) {
  std::string lower(text);
  for (char& c : lower) c = ascii_lower(c);

  std::size_t pos = 0;
  while ((pos = lower.find("youtu", pos)) != std::string::npos) {
    // Host boundary: "myyoutube.com" and "my-youtube.com" are other domains;
    // a preceding '.' is a subdomain and fine.
    if (pos > 0 && (is_id_char(lower[pos - 1]) && lower[pos - 1] != '_')) {
      pos += 5;
      continue;
    }
    std::string id;
    if (starts_with_at(lower, pos, "youtu.be/")) {
      if (take_id(text, pos + 9, id)) out.push_back(std::move(id));
      pos += 9;
      continue;
    }
    if (starts_with_at(lower, pos, "youtube.com/")) {
      const std::size_t path = pos + 12;
      if (starts_with_at(lower, path, "watch")) {
        if (watch_param_id(text, path, id)) out.push_back(std::move(id));
      } else if (starts_with_at(lower, path, "v/")) {
        if (take_id(text, path + 2, id)) out.push_back(std::move(id));
      } else if (starts_with_at(lower, path, "embed/")) {
        if (take_id(text, path + 6, id)) out.push_back(std::move(id));
      }
      pos = path;
      continue;
    }
    pos += 5;
  }
}

std::vector<std::string> extract_video_ids(
    std::string_view text, const std::vector<std::string>& urls) {
  std::vector<std::string> found;
  for (const std::string& url : urls) scan_video_ids(url, found);
  scan_video_ids(text, found);

  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::string& id : found) {
    if (seen.insert(id).second) out.push_back(std::move(id));
  }
  return out;
}

}  // namespace silvercat
