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

#ifndef SILVERCAT_ERRORS_HPP_
#define SILVERCAT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace silvercat {

// Each error family maps to one process exit code (see tools/silvercat.cpp):
// missing input 2, degenerate training data 3, label mismatch 4, anything
// else 1.

// A referenced file or directory does not exist or cannot be opened.
class MissingInputError : public std::runtime_error {
 public:
  explicit MissingInputError(const std::string& what)
      : std::runtime_error(what) {}
};

// The data cannot support the requested computation (empty class, class
// smaller than the holdout or fold count, single-class training input).
class DegenerateDataError : public std::runtime_error {
 public:
  explicit DegenerateDataError(const std::string& what)
      : std::runtime_error(what) {}
};

// A label in an input file is not part of the active class scheme.
class LabelMismatchError : public std::runtime_error {
 public:
  explicit LabelMismatchError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace silvercat

#endif  // SILVERCAT_ERRORS_HPP_
