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

#ifndef LOCLAB_BOXMERGE_HPP
#define LOCLAB_BOXMERGE_HPP

#include <optional>
#include <span>
#include <vector>

#include "loclab/lattice.hpp"

namespace loclab {

/// Rungs (r_q, s_q), q = 1..Q, stored zero-based.
struct ScaleLadder {
  std::vector<int> inner;  // r_q
  std::vector<int> outer;  // s_q
  int size() const { return static_cast<int>(inner.size()); }
};

/// r_1 = r, s_q = r_q + gap, r_{q+1} = 3 s_q, stopping before s_q > R.
ScaleLadder geometric_ladder(int r, int gap, int R);

struct MergeOptions {
  /// Require the ladder length demanded by the guarantee (Q > K for
  /// merge, Q > (d+1)K for merge_acceptable). When false the algorithm
  /// runs anyway and throws insufficient_ladder only if it runs out of
  /// rungs.
  bool enforce_ladder_length = true;
};

struct MergeResult {
  std::vector<Site> centers;
  std::vector<int> levels;  // 1-based rung index
  int escalations = 0;
  std::size_t count() const { return centers.size(); }
};

/// Cubes Lambda^R_{s_q}(m) pairwise disjoint whose Lambda^R_{r_q}(m)
/// cover Lambda_r(n_k) within Lambda_R(0) for every input point.
MergeResult merge(std::span<const Site> points, const ScaleLadder& ladder, int r, int R,
                  MergeOptions options = {});

/// As merge, additionally skipping rungs whose cubes could leave a thin
/// slab against the outer boundary, so that the complement stays
/// r-acceptable.
MergeResult merge_acceptable(std::span<const Site> points, const ScaleLadder& ladder, int r,
                             int R, MergeOptions options = {});

bool merge_disjoint(const MergeResult& res, const ScaleLadder& ladder, int R);
bool merge_covers(const MergeResult& res, std::span<const Site> points,
                  const ScaleLadder& ladder, int r, int R);
/// Checks every admissible choice of inner radii. Empty when the number
/// of choices exceeds max_choices.
std::optional<bool> merge_complement_acceptable(const MergeResult& res,
                                                const ScaleLadder& ladder, int r, int R,
                                                long long max_choices = 4096);

/// Lambda_r(p) intersected with Lambda_R(0) lies in Lambda^R_rho(m).
bool clipped_cube_inside(const Site& p, int r, const Site& m, int rho, int R);

}  // namespace loclab

#endif
