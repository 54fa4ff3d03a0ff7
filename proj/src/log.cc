// Copyright 2026 The textscope Authors.
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

#include "textscope/log.h"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <memory>

namespace textscope::log {
namespace {

spdlog::logger& Logger() {
  static std::shared_ptr<spdlog::logger> logger = [] {
    auto l = spdlog::stderr_logger_mt("textscope");
    l->set_pattern("[%l] %v");
    l->set_level(spdlog::level::warn);
    return l;
  }();
  return *logger;
}

spdlog::level::level_enum ToSpd(Level level) {
  switch (level) {
    case Level::kDebug:
      return spdlog::level::debug;
    case Level::kInfo:
      return spdlog::level::info;
    case Level::kWarn:
      return spdlog::level::warn;
    case Level::kError:
      return spdlog::level::err;
    case Level::kOff:
      return spdlog::level::off;
  }
  return spdlog::level::warn;
}

}  // namespace

void InitFromEnv() {
  const char* env = std::getenv("TEXTSCOPE_LOG");
  if (env == nullptr || *env == '\0') return;
  // from_str maps unknown names to "off"; keep the default instead.
  auto level = spdlog::level::from_str(env);
  if (level == spdlog::level::off && std::string(env) != "off") {
    Logger().warn("unknown TEXTSCOPE_LOG level '{}', using warn", env);
    return;
  }
  Logger().set_level(level);
}

void SetLevel(Level level) { Logger().set_level(ToSpd(level)); }

void Write(Level level, const std::string& message) {
  Logger().log(ToSpd(level), "{}", message);
}

}  // namespace textscope::log
