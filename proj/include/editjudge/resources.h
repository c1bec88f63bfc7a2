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

// Shipped default data files (data/ in the source tree), compiled in.

#ifndef EDITJUDGE_RESOURCES_H_
#define EDITJUDGE_RESOURCES_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace editjudge::resources {

// Keyed by path relative to data/, e.g. "prompts/judge.txt".
const std::map<std::string, std::string_view>& embedded_resources();

// Throws ConfigError for an unknown key.
std::string_view get(const std::string& key);

// Reads `override_dir / key` when an override directory is given and the
// file exists there; otherwise the embedded copy.
std::string load(const std::string& key, const std::optional<std::filesystem::path>& override_dir);

// Whole-file read; throws ConfigError if the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace editjudge::resources

#endif  // EDITJUDGE_RESOURCES_H_
