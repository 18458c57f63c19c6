/* Copyright 2026 The loclab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "loclab/csv.hpp"

#include <cstdio>

#include "loclab/error.hpp"

namespace loclab {

namespace {

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), columns_(header.size()) {
  require(columns_ > 0, ErrorCode::domain, "csv header must not be empty");
  write_row(out_, header);
}

CsvWriter& CsvWriter::operator<<(double x) { return cell(format_double(x)); }

CsvWriter& CsvWriter::cell(const std::string& text) {
  require(text.find_first_of(",\n\"") == std::string::npos, ErrorCode::domain,
          "csv cell must not contain separators or quotes");
  pending_.push_back(text);
  return *this;
}

void CsvWriter::end_row() {
  require(pending_.size() == columns_, ErrorCode::domain, "csv row width differs from header");
  write_row(out_, pending_);
  pending_.clear();
  ++rows_;
}

}  // namespace loclab
