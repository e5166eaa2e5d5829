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

#ifndef SILVERCAT_VIDEO_URLS_HPP_
#define SILVERCAT_VIDEO_URLS_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace silvercat {

// True for the 11-character id alphabet [A-Za-z0-9_-].
bool is_video_id(std::string_view s);

// Pulls video ids out of one URL or text fragment. Recognized shapes:
// watch?v=<id> with the v parameter anywhere in the query string,
// youtu.be/<id>, /v/<id> and /embed/<id>; any scheme, any subdomain, host
// matched case-insensitively. Ids must be exactly 11 chars of the id
// alphabet (a longer run is some other token, not an id). Malformed
// candidates are skipped, never fatal.
void scan_video_ids(std::string_view text, std::vector<std::string>& out);

// Ids from the url list (scanned first, in order) and then the inline text;
// first-occurrence order, deduplicated.
std::vector<std::string> extract_video_ids(
    std::string_view text, const std::vector<std::string>& urls);

}  // namespace silvercat

#endif  // SILVERCAT_VIDEO_URLS_HPP_
