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

#ifndef SILVERCAT_RECORDS_HPP_
#define SILVERCAT_RECORDS_HPP_

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace silvercat {

// One ingested post. `urls` holds expanded link entities; links may also sit
// inline in `text`, and both places are scanned for video ids.
struct TweetRecord {
  std::string id;
  std::string text;
  std::string lang;
  std::int64_t timestamp = 0;
  std::vector<std::string> urls;
};

// Metadata of one linked video: the label source.
struct VideoMeta {
  std::string video_id;
  std::string title;
  std::string category;
};

// The unit of training and evaluation. video_id/title/timestamp are carried
// along when known (title feeds the title-enrichment variant, timestamp the
// drift report) and stay optional otherwise.
struct LabeledExample {
  std::string text;
  std::string label;
  std::optional<std::string> video_id;
  std::optional<std::string> title;
  std::optional<std::int64_t> timestamp;
};

void to_json(nlohmann::json& j, const TweetRecord& r);
void from_json(const nlohmann::json& j, TweetRecord& r);
void to_json(nlohmann::json& j, const VideoMeta& v);
void from_json(const nlohmann::json& j, VideoMeta& v);
void to_json(nlohmann::json& j, const LabeledExample& e);
void from_json(const nlohmann::json& j, LabeledExample& e);

// Streams a JSON-lines file. Lines that fail to parse as the record type are
// counted, not fatal; blank lines are ignored. A missing file throws
// MissingInputError from the constructor.
class JsonlReader {
 public:
  explicit JsonlReader(const std::string& path);

  // Parses the next well-formed line into `out`. Returns false at EOF.
  template <typename T>
  bool next(T& out) {
    nlohmann::json j;
    while (next_json(j)) {
      try {
        out = j.get<T>();
        return true;
      } catch (const nlohmann::json::exception&) {
        ++malformed_;
      }
    }
    return false;
  }

  std::size_t malformed() const { return malformed_; }
  std::size_t line_number() const { return line_number_; }

  template <typename T>
  std::vector<T> read_all() {
    std::vector<T> out;
    T record;
    while (next(record)) out.push_back(std::move(record));
    return out;
  }

 private:
  bool next_json(nlohmann::json& j);

  std::ifstream in_;
  std::string path_;
  std::size_t malformed_ = 0;
  std::size_t line_number_ = 0;
};

// Writes one compact JSON object per line. Keys are emitted in sorted order,
// so reruns are byte-identical.
class JsonlWriter {
 public:
  explicit JsonlWriter(const std::string& path);

  void write(const nlohmann::json& j);

  template <typename T>
  void write_record(const T& record) {
    write(nlohmann::json(record));
  }

 private:
  std::ofstream out_;
};

}  // namespace silvercat

#endif  // SILVERCAT_RECORDS_HPP_
