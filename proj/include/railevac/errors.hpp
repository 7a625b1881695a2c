// Copyright 2026 The railevac Authors
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

#ifndef RAILEVAC_ERRORS_HPP
#define RAILEVAC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace railevac {

// Any problem with user-provided input: malformed files, bad flag values,
// references to unknown stations. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Validation failure tied to a specific location in an input file.
class LoadError : public ValidationError {
 public:
  LoadError(std::string file, std::size_t line, const std::string& what)
      : ValidationError(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

}  // namespace railevac

#endif  // RAILEVAC_ERRORS_HPP
