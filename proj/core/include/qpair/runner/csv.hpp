// Copyright 2026 The qpair Authors
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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qpair::runner {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// RFC-4180 quoting for a single field.
std::string csv_field(const std::string& s);

/// Header row plus data rows, each line terminated by '\n'.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& values);
  void add_row(const std::vector<std::string>& cells);
  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

ParsedCsv read_csv(const std::filesystem::path& path);
ParsedCsv parse_csv(const std::string& text);

/// Compares header exactly and cells numerically (absolute tolerance) or
/// textually when a cell is not numeric. Appends a message per mismatch.
bool csv_equivalent(const ParsedCsv& expected, const ParsedCsv& actual, double tol,
                    std::vector<std::string>& mismatches, const std::string& label);

}  // namespace qpair::runner
