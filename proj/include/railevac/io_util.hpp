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

#ifndef RAILEVAC_IO_UTIL_HPP
#define RAILEVAC_IO_UTIL_HPP

#include <filesystem>
#include <string>

namespace railevac {

// Reads a whole file; throws ValidationError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Writes content to a temporary file next to `path` and renames it into
// place, so readers never observe a partially written file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Shortest decimal representation that round-trips to the same double.
std::string fmt_double(double value);

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

// Level from RAIL_EVAC_LOG (error|warn|info|debug), default warn.
LogLevel log_level();

// Writes "railevac: <level>: <message>" to stderr if `level` is enabled.
void log(LogLevel level, const std::string& message);

}  // namespace railevac

#endif  // RAILEVAC_IO_UTIL_HPP
