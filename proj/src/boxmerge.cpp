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

#include "loclab/boxmerge.hpp"

#include <algorithm>
#include <string>

#include "loclab/error.hpp"

namespace loclab {

namespace {

struct Cube {
  Site m;
  int q;  // 1-based
};

void validate(const ScaleLadder& ladder, int r, int R, bool acceptable) {
  require(ladder.size() >= 1 && ladder.inner.size() == ladder.outer.size(), ErrorCode::domain,
          "empty or malformed ladder");
  require(r >= 0 && R >= 0, ErrorCode::scale, "negative scale");
  require(ladder.inner[0] >= r, ErrorCode::scale, "first rung below r");
  for (int q = 0; q < ladder.size(); ++q) {
    require(ladder.outer[q] >= ladder.inner[q] + (acceptable ? 3 * r : 0), ErrorCode::scale,
            "rung " + std::to_string(q + 1) + " has s_q too small");
    require(ladder.outer[q] <= R, ErrorCode::scale, "rung exceeds R");
    if (q + 1 < ladder.size())
      require(ladder.inner[q + 1] >= 3 * ladder.outer[q], ErrorCode::scale,
              "rung " + std::to_string(q + 2) + " violates r_{q+1} >= 3 s_q");
  }
}

bool collide(const Cube& a, const Cube& b, const ScaleLadder& ladder, int R) {
  const int sa = ladder.outer[a.q - 1];
  const int sb = ladder.outer[b.q - 1];
  return shifted_cube(a.m, sa, R).intersects(shifted_cube(b.m, sb, R));
}

// A rung is forbidden for a center when some admissible inner radius
// leaves a slab of width 1..2r between the clamped cube and the outer
// boundary.
bool forbidden(const Site& m, int q, const ScaleLadder& ladder, int r, int R) {
  const int lo = ladder.inner[q - 1];
  const int hi = std::max(lo, ladder.outer[q - 1] - 2 * r - 2);
  for (int rt = lo; rt <= hi; ++rt) {
    const Site c = shifted_point(m, rt, R);
    for (int i = 0; i < m.dim(); ++i) {
      const int gap_hi = R - (c[i] + rt);
      const int gap_lo = (c[i] - rt) + R;
      if ((gap_hi >= 1 && gap_hi <= 2 * r) || (gap_lo >= 1 && gap_lo <= 2 * r)) return true;
    }
  }
  return false;
}

template <class NextLevel>
MergeResult run_merge(std::span<const Site> points, const ScaleLadder& ladder, int r, int R,
                      NextLevel next_level) {
  const int Q = ladder.size();
  std::vector<Cube> cubes;
  MergeResult res;
  auto escalate = [&](Cube& c, int from) {
    c.q = next_level(c.m, from);
    require(c.q <= Q, ErrorCode::insufficient_ladder, "ladder exhausted during merge");
    ++res.escalations;
  };

  for (const Site& p : points) {
    require(p.norm_inf() <= R, ErrorCode::containment, "point outside Lambda_R(0)");
    bool covered = false;
    for (const auto& c : cubes)
      covered = covered || clipped_cube_inside(p, r, c.m, ladder.inner[c.q - 1], R);
    if (covered) continue;

    Cube fresh{p, next_level(p, 1)};
    require(fresh.q <= Q, ErrorCode::insufficient_ladder, "no admissible rung for point");

    // Absorb into the intersecting cube of maximal level, lowest index on
    // ties.
    int best = -1;
    for (int j = 0; j < static_cast<int>(cubes.size()); ++j) {
      if (!collide(fresh, cubes[j], ladder, R)) continue;
      if (best < 0 || cubes[j].q > cubes[best].q) best = j;
    }
    if (best < 0) {
      cubes.push_back(fresh);
    } else if (fresh.q <= cubes[best].q) {
      escalate(cubes[best], cubes[best].q + 1);
    } else {
      escalate(fresh, fresh.q + 1);
      cubes[best] = fresh;
    }

    // Resolve remaining collisions: the higher level absorbs the lower,
    // the lower index survives ties.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < cubes.size() && !changed; ++a) {
        for (std::size_t b = a + 1; b < cubes.size() && !changed; ++b) {
          if (!collide(cubes[a], cubes[b], ladder, R)) continue;
          const std::size_t keep = cubes[b].q > cubes[a].q ? b : a;
          const std::size_t drop = keep == a ? b : a;
          escalate(cubes[keep], std::max(cubes[a].q, cubes[b].q) + 1);
          cubes.erase(cubes.begin() + static_cast<std::ptrdiff_t>(drop));
          changed = true;
        }
      }
    }
  }
  for (const auto& c : cubes) {
    res.centers.push_back(c.m);
    res.levels.push_back(c.q);
  }
  return res;
}

}  // namespace

ScaleLadder geometric_ladder(int r, int gap, int R) {
  ScaleLadder ladder;
  int rq = r;
  while (rq + gap <= R) {
    ladder.inner.push_back(rq);
    ladder.outer.push_back(rq + gap);
    rq = 3 * (rq + gap);
  }
  return ladder;
}

bool clipped_cube_inside(const Site& p, int r, const Site& m, int rho, int R) {
  const Site c = shifted_point(m, rho, R);
  for (int i = 0; i < p.dim(); ++i) {
    const int lo = std::max(p[i] - r, -R);
    const int hi = std::min(p[i] + r, R);
    if (lo < c[i] - rho || hi > c[i] + rho) return false;
  }
  return true;
}

MergeResult merge(std::span<const Site> points, const ScaleLadder& ladder, int r, int R,
                  MergeOptions options) {
  validate(ladder, r, R, false);
  const int K = static_cast<int>(points.size());
  if (options.enforce_ladder_length)
    require(ladder.size() > K, ErrorCode::insufficient_ladder,
            "ladder needs more than K rungs");
  return run_merge(points, ladder, r, R, [](const Site&, int q) { return q; });
}

MergeResult merge_acceptable(std::span<const Site> points, const ScaleLadder& ladder, int r,
                             int R, MergeOptions options) {
  validate(ladder, r, R, true);
  const int K = static_cast<int>(points.size());
  const int d = points.empty() ? 1 : points.front().dim();
  if (options.enforce_ladder_length)
    require(ladder.size() >= (d + 1) * K + 1, ErrorCode::insufficient_ladder,
            "ladder needs at least (d+1)K+1 rungs");
  const int Q = ladder.size();
  return run_merge(points, ladder, r, R, [&](const Site& m, int q) {
    while (q <= Q && forbidden(m, q, ladder, r, R)) ++q;
    return q;
  });
}

bool merge_disjoint(const MergeResult& res, const ScaleLadder& ladder, int R) {
  for (std::size_t a = 0; a < res.count(); ++a)
    for (std::size_t b = a + 1; b < res.count(); ++b)
      if (collide({res.centers[a], res.levels[a]}, {res.centers[b], res.levels[b]}, ladder, R))
        return false;
  return true;
}

bool merge_covers(const MergeResult& res, std::span<const Site> points,
                  const ScaleLadder& ladder, int r, int R) {
  for (const auto& p : points) {
    bool ok = false;
    for (std::size_t j = 0; j < res.count() && !ok; ++j)
      ok = clipped_cube_inside(p, r, res.centers[j], ladder.inner[res.levels[j] - 1], R);
    if (!ok) return false;
  }
  return true;
}

std::optional<bool> merge_complement_acceptable(const MergeResult& res,
                                                const ScaleLadder& ladder, int r, int R,
                                                long long max_choices) {
  const std::size_t J = res.count();
  std::vector<int> lo(J), hi(J);
  long long choices = 1;
  for (std::size_t j = 0; j < J; ++j) {
    lo[j] = ladder.inner[res.levels[j] - 1];
    hi[j] = ladder.outer[res.levels[j] - 1] - 2 * r - 2;
    if (hi[j] < lo[j]) return true;  // no admissible radii: vacuous
    choices *= hi[j] - lo[j] + 1;
    if (choices > max_choices) return std::nullopt;
  }
  const int d = J > 0 ? res.centers.front().dim() : 1;
  const Region full = Region::from_box(centered_box(d, R));
  std::vector<int> pick = lo;
  while (true) {
    std::vector<Site> keep;
    for (const auto& x : full.sites()) {
      bool removed = false;
      for (std::size_t j = 0; j < J && !removed; ++j)
        removed = shifted_cube(res.centers[j], pick[j], R).contains(x);
      if (!removed) keep.push_back(x);
    }
    if (!is_r_acceptable(Region(std::move(keep)), r).acceptable) return false;
    std::size_t j = 0;
    while (j < J && pick[j] == hi[j]) pick[j++] = 0;
    if (j == J) break;
    for (std::size_t k = 0; k < j; ++k) pick[k] = lo[k];
    ++pick[j];
  }
  return true;
}

}  // namespace loclab
