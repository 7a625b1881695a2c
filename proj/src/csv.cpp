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

#include "railevac/csv.hpp"

#include "railevac/errors.hpp"

namespace railevac::csv {
namespace {

// One pass over the text; quoted fields may span lines, so the scanner
// tracks line numbers itself instead of splitting on '\n' first.
std::vector<Row> scan(const std::string& text, const std::string& file) {
  std::vector<Row> records;
  Row current;
  std::string field;
  bool in_quotes = false;
  bool row_started = false;
  std::size_t line = 1;
  current.line = 1;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    if (row_started || !current.fields.empty()) {
      end_field();
      records.push_back(std::move(current));
      current = Row{};
    }
    row_started = false;
    current.line = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          throw LoadError(file, line, "unexpected quote inside unquoted field");
        }
        in_quotes = true;
        row_started = true;
        break;
      case ',':
        end_field();
        row_started = true;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        current.line = line;
        break;
      default:
        field.push_back(c);
        row_started = true;
        break;
    }
  }
  if (in_quotes) {
    throw LoadError(file, line, "unterminated quoted field");
  }
  end_record();
  return records;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ",";
    out += parts[i];
  }
  return out;
}

}  // namespace

Table parse_csv(const std::string& text, const std::string& file_name,
                const std::vector<std::string>& expected_header) {
  auto records = scan(text, file_name);
  if (records.empty()) {
    throw LoadError(file_name, 1, "file is empty, expected header: " + join(expected_header));
  }
  Table table;
  table.file = file_name;
  table.header = records.front().fields;
  if (table.header != expected_header) {
    throw LoadError(file_name, records.front().line,
                    "bad header '" + join(table.header) + "', expected '" +
                        join(expected_header) + "'");
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].fields.size() != expected_header.size()) {
      throw LoadError(file_name, records[r].line,
                      "expected " + std::to_string(expected_header.size()) +
                          " columns, got " + std::to_string(records[r].fields.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

std::string escape_field(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace railevac::csv
