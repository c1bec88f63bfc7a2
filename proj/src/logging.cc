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

#include "editjudge/logging.h"

#include <cstdlib>
#include <mutex>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

namespace editjudge {

void init_logging() {
  static std::once_flag once;
  std::call_once(once, [] {
    auto logger = spdlog::stderr_logger_mt("editjudge");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
  });
  auto level = spdlog::level::warn;
  if (const char* env = std::getenv("EDITJUDGE_LOG"); env != nullptr && *env) {
    level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; keep warnings in that case.
    if (level == spdlog::level::off && std::string_view(env) != "off") level = spdlog::level::warn;
  }
  spdlog::set_level(level);
}

}  // namespace editjudge
