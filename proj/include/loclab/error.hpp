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

#ifndef LOCLAB_ERROR_HPP
#define LOCLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace loclab {

enum class ErrorCode {
  domain,
  containment,
  scale,
  empty_interior,
  order,
  insufficient_ladder,
  config,
  truncation,
  capacity,
  singular_energy,
  not_normal,
  precondition,
  r_too_small,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::containment: return "containment";
    case ErrorCode::scale: return "scale";
    case ErrorCode::empty_interior: return "empty_interior";
    case ErrorCode::order: return "order";
    case ErrorCode::insufficient_ladder: return "insufficient_ladder";
    case ErrorCode::config: return "config";
    case ErrorCode::truncation: return "truncation";
    case ErrorCode::capacity: return "capacity";
    case ErrorCode::singular_energy: return "singular_energy";
    case ErrorCode::not_normal: return "not_normal";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::r_too_small: return "r_too_small";
  }
  return "unknown";
}

/// Base exception carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace loclab

#endif
