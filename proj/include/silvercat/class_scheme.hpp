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

#ifndef SILVERCAT_CLASS_SCHEME_HPP_
#define SILVERCAT_CLASS_SCHEME_HPP_

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace silvercat {

// Fixes class identity and order for the whole pipeline: which raw video
// categories exist, how they merge into the canonical classes, and how the
// canonical classes group into the coarse scheme. Loaded from a data file so
// scheme revisions need no code change; data/class_scheme.json ships the
// 18-category scheme with its 14 canonical and 4 coarse classes.
class ClassScheme {
 public:
  // In merge_map values, this sentinel discards the category entirely.
  static constexpr const char* kDrop = "DROP";

  static ClassScheme from_json(const nlohmann::json& j);
  static ClassScheme load(const std::string& path);

  const std::vector<std::string>& raw_categories() const {
    return raw_categories_;
  }
  // Canonical classes, sorted; this order is the row/column order of every
  // matrix and the storage order of every model.
  const std::vector<std::string>& class_list() const { return class_list_; }
  const std::vector<std::string>& coarse_list() const { return coarse_list_; }

  bool is_raw_category(const std::string& raw) const;
  // Canonical class for a raw category, or kDrop. Unknown categories return
  // an empty string; callers decide whether that is a warning or an error.
  const std::string& merge(const std::string& raw) const;
  const std::string& coarsen(const std::string& cls) const;

  // Index in class_list, or -1.
  int class_index(const std::string& cls) const;
  int coarse_index(const std::string& coarse) const;

  nlohmann::json to_json() const;

 private:
  std::vector<std::string> raw_categories_;
  std::map<std::string, std::string> merge_map_;
  std::vector<std::string> class_list_;
  std::map<std::string, std::string> coarse_map_;
  std::vector<std::string> coarse_list_;
};

}  // namespace silvercat

#endif  // SILVERCAT_CLASS_SCHEME_HPP_
