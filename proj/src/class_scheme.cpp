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

#include "silvercat/class_scheme.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "silvercat/errors.hpp"

namespace silvercat {

namespace {

const std::string kEmpty;

std::vector<std::string> sorted_unique(const std::set<std::string>& values) {
  return std::vector<std::string>(values.begin(), values.end());
}

}  // namespace

ClassScheme ClassScheme::from_json(const nlohmann::json& j) {
  ClassScheme s;
  j.at("merge_map").get_to(s.merge_map_);
  j.at("coarse_map").get_to(s.coarse_map_);

  std::set<std::string> classes;
  for (const auto& [raw, target] : s.merge_map_) {
    s.raw_categories_.push_back(raw);
    if (target.empty()) {
      throw std::invalid_argument("merge_map: empty target for " + raw);
    }
    if (target != kDrop) classes.insert(target);
  }
  s.class_list_ = sorted_unique(classes);
  if (s.class_list_.empty()) {
    throw std::invalid_argument("merge_map maps every category to DROP");
  }

  std::set<std::string> coarse;
  for (const std::string& cls : s.class_list_) {
    auto it = s.coarse_map_.find(cls);
    if (it == s.coarse_map_.end()) {
      throw std::invalid_argument("coarse_map: no entry for class " + cls);
    }
    coarse.insert(it->second);
  }
  for (const auto& [cls, target] : s.coarse_map_) {
    if (!std::binary_search(s.class_list_.begin(), s.class_list_.end(), cls)) {
      throw std::invalid_argument("coarse_map: unknown class " + cls);
    }
    (void)target;
  }
  s.coarse_list_ = sorted_unique(coarse);

  if (j.contains("class_list")) {
    std::vector<std::string> declared;
    j.at("class_list").get_to(declared);
    if (declared != s.class_list_) {
      throw std::invalid_argument(
          "class_list does not match the sorted merge_map targets");
    }
  }
  return s;
}

ClassScheme ClassScheme::load(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) {
    throw MissingInputError("cannot open class scheme: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("invalid class scheme " + path + ": " +
                                e.what());
  }
  return from_json(j);
}

bool ClassScheme::is_raw_category(const std::string& raw) const {
  return merge_map_.count(raw) != 0;
}

const std::string& ClassScheme::merge(const std::string& raw) const {
  auto it = merge_map_.find(raw);
  return it == merge_map_.end() ? kEmpty : it->second;
}

const std::string& ClassScheme::coarsen(const std::string& cls) const {
  auto it = coarse_map_.find(cls);
  return it == coarse_map_.end() ? kEmpty : it->second;
}

int ClassScheme::class_index(const std::string& cls) const {
  auto it = std::lower_bound(class_list_.begin(), class_list_.end(), cls);
  if (it == class_list_.end() || *it != cls) return -1;
  return static_cast<int>(it - class_list_.begin());
}

int ClassScheme::coarse_index(const std::string& coarse) const {
  auto it = std::lower_bound(coarse_list_.begin(), coarse_list_.end(), coarse);
  if (it == coarse_list_.end() || *it != coarse) return -1;
  return static_cast<int>(it - coarse_list_.begin());
}

nlohmann::json ClassScheme::to_json() const {
  return nlohmann::json{{"merge_map", merge_map_},
                        {"coarse_map", coarse_map_},
                        {"class_list", class_list_}};
}

}  // namespace silvercat
