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

#include "silvercat/records.hpp"

#include <stdexcept>

#include "silvercat/errors.hpp"

namespace silvercat {

void to_json(nlohmann::json& j, const TweetRecord& r) {
  j = nlohmann::json{{"id", r.id},
                     {"text", r.text},
                     {"lang", r.lang},
                     {"timestamp", r.timestamp}};
  if (!r.urls.empty()) j["urls"] = r.urls;
}

void from_json(const nlohmann::json& j, TweetRecord& r) {
  r = TweetRecord{};
  j.at("id").get_to(r.id);
  j.at("text").get_to(r.text);
  r.lang = j.value("lang", "");
  r.timestamp = j.value("timestamp", std::int64_t{0});
  if (j.contains("urls")) j.at("urls").get_to(r.urls);
  if (r.id.empty()) throw nlohmann::json::other_error::create(501, "empty id", &j);
  if (r.text.empty()) {
    throw nlohmann::json::other_error::create(501, "empty text", &j);
  }
}

void to_json(nlohmann::json& j, const VideoMeta& v) {
  j = nlohmann::json{
      {"video_id", v.video_id}, {"title", v.title}, {"category", v.category}};
}

void from_json(const nlohmann::json& j, VideoMeta& v) {
  v = VideoMeta{};
  j.at("video_id").get_to(v.video_id);
  v.title = j.value("title", "");
  j.at("category").get_to(v.category);
}

void to_json(nlohmann::json& j, const LabeledExample& e) {
  j = nlohmann::json{{"text", e.text}, {"label", e.label}};
  if (e.video_id) j["video_id"] = *e.video_id;
  if (e.title) j["title"] = *e.title;
  if (e.timestamp) j["timestamp"] = *e.timestamp;
}

void from_json(const nlohmann::json& j, LabeledExample& e) {
  e = LabeledExample{};
  j.at("text").get_to(e.text);
  j.at("label").get_to(e.label);
  if (j.contains("video_id")) e.video_id = j.at("video_id").get<std::string>();
  if (j.contains("title")) e.title = j.at("title").get<std::string>();
  if (j.contains("timestamp")) {
    e.timestamp = j.at("timestamp").get<std::int64_t>();
  }
}

JsonlReader::JsonlReader(const std::string& path) : in_(path), path_(path) {
  if (!in_.is_open()) {
    throw MissingInputError("cannot open input file: " + path);
  }
}

bool JsonlReader::next_json(nlohmann::json& j) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      ++malformed_;
      continue;
    }
    return true;
  }
  return false;
}

JsonlWriter::JsonlWriter(const std::string& path) : out_(path) {
  if (!out_.is_open()) {
    throw std::runtime_error("cannot open output file: " + path);
  }
}

void JsonlWriter::write(const nlohmann::json& j) { out_ << j.dump() << '\n'; }

}  // namespace silvercat
