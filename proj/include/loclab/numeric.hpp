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

#ifndef LOCLAB_NUMERIC_HPP
#define LOCLAB_NUMERIC_HPP

#include <algorithm>
#include <algorithm>
#include <cmath>
#include <limits>

namespace loclab {

// Floor/ceil that absorb rounding noise near integers, so that for
// example 32^1.2 lands on 64 rather than 65.
inline double integer_slack(double x) {
  return std::clamp(4.0 * std::numeric_limits<double>::epsilon() * std::abs(x), 1e-9, 0.25);
}

inline double robust_floor(double x) {
  const double n = std::round(x);
  if (std::abs(x - n) <= integer_slack(x)) return n;
  return std::floor(x);
}

inline double robust_ceil(double x) {
  const double n = std::round(x);
  if (std::abs(x - n) <= integer_slack(x)) return n;
  return std::ceil(x);
}

inline long long ipow(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace loclab

#endif
