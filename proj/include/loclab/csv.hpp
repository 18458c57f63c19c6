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


#ifndef LOCLAB_CSV_HPP
#define LOCLAB_CSV_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace loclab {

/// Scientific notation with 17 significant digits.
std::string format_double(double x);

/// Comma-separated writer with a fixed header.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  CsvWriter& operator<<(double x);
  CsvWriter& operator<<(int x) { return cell(std::to_string(x)); }
  CsvWriter& operator<<(long x) { return cell(std::to_string(x)); }
  CsvWriter& operator<<(std::uint64_t x) { return cell(std::to_string(x)); }
  CsvWriter& operator<<(bool x) { return cell(x ? "1" : "0"); }
  CsvWriter& operator<<(const std::string& x) { return cell(x); }
  CsvWriter& operator<<(const char* x) { return cell(x); }

  /// Ends the current row; throws if the cell count differs from the header.
  void end_row();
  std::size_t rows() const { return rows_; }

 private:
  CsvWriter& cell(const std::string& text);

  std::ostream& out_;
  std::size_t columns_;
  std::vector<std::string> pending_;
  std::size_t rows_ = 0;
};

}  // namespace loclab

#endif
