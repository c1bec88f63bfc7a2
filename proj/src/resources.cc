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

#include "editjudge/resources.h"

#include <fstream>
#include <sstream>
#include <system_error>

#include "editjudge/error.h"

namespace editjudge::resources {

std::string_view get(const std::string& key) {
  const auto& table = embedded_resources();
  auto it = table.find(key);
  if (it == table.end()) throw ConfigError("no embedded resource named '" + key + "'");
  return it->second;
}

std::string load(const std::string& key, const std::optional<std::filesystem::path>& override_dir) {
  if (override_dir) {
    const auto candidate = *override_dir / key;
    std::error_code ec;
    if (std::filesystem::is_regular_file(candidate, ec)) return read_file(candidate);
  }
  return std::string(get(key));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw ConfigError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ConfigError("cannot move '" + tmp.string() + "' into place");
  }
}

}  // namespace editjudge::resources
