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

#ifndef RAILEVAC_CSV_HPP
#define RAILEVAC_CSV_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace railevac::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the source file
  std::vector<std::string> fields;
};

struct Table {
  std::string file;                  // display name used in error messages
  std::vector<std::string> header;
  std::vector<Row> rows;
};

// Parses UTF-8 CSV text. Fields may be double-quoted; quoted fields may
// contain commas, doubled quotes and newlines. CRLF line endings are
// accepted. The first record is the header; fully empty lines are skipped.
// `expected_header` is enforced column-for-column.
Table parse_csv(const std::string& text, const std::string& file_name,
                const std::vector<std::string>& expected_header);

// Encodes one CSV field, quoting only when the value requires it.
std::string escape_field(const std::string& value);

}  // namespace railevac::csv

#endif  // RAILEVAC_CSV_HPP
