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


// Conversions between library types and the oracle representation.

#ifndef LOCLAB_TESTS_SUPPORT_HPP
#define LOCLAB_TESTS_SUPPORT_HPP

#include "loclab/error.hpp"
#include "loclab/lattice.hpp"
#include "oracles.hpp"

#include <optional>

namespace testing {

inline oracle::Pt to_pt(const loclab::Site& s) {
  oracle::Pt p(static_cast<std::size_t>(s.dim()));
  for (int i = 0; i < s.dim(); ++i) p[static_cast<std::size_t>(i)] = s[i];
  return p;
}

inline loclab::Site to_site(const oracle::Pt& p) {
  loclab::Site s(static_cast<int>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) s[static_cast<int>(i)] = p[i];
  return s;
}

inline oracle::PtSet to_set(const loclab::Region& r) {
  oracle::PtSet s;
  for (const auto& x : r.sites()) s.insert(to_pt(x));
  return s;
}

inline loclab::Region to_region(const oracle::PtSet& s) {
  std::vector<loclab::Site> v;
  for (const auto& p : s) v.push_back(to_site(p));
  return loclab::Region(std::move(v));
}

template <class F>
std::optional<loclab::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const loclab::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing

#endif
