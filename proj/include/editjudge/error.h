// Copyright 2026 The EditJudge Authors.
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

#ifndef EDITJUDGE_ERROR_H_
#define EDITJUDGE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace editjudge {

// Bad flags, missing files, malformed configuration. CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A data file violates its schema or an invariant. CLI exit code 2.
// `line` is 1-based; 0 means the error is not tied to one line.
class DataError : public std::runtime_error {
 public:
  DataError(std::string path, std::size_t line, std::string reason);
  explicit DataError(std::string reason);

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string path_;
  std::size_t line_ = 0;
  std::string reason_;
};

// A judge/classifier/embedder call failed after all retries, or its output
// could not be parsed. CLI exit code 3 when every sample is affected.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace editjudge

#endif  // EDITJUDGE_ERROR_H_
