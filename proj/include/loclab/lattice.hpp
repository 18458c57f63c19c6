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

#ifndef LOCLAB_LATTICE_HPP
#define LOCLAB_LATTICE_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace loclab {

inline constexpr int kMaxDim = 4;

/// A point of Z^d, 1 <= d <= kMaxDim.
class Site {
 public:
  Site() = default;
  explicit Site(int dim);
  Site(std::initializer_list<int> coords);
  static Site origin(int dim) { return Site(dim); }

  int dim() const { return dim_; }
  int operator[](int i) const { return c_[i]; }
  int& operator[](int i) { return c_[i]; }

  int norm_inf() const;
  int norm1() const;
  long long norm2_sq() const;

  friend Site operator+(const Site& a, const Site& b);
  friend Site operator-(const Site& a, const Site& b);
  friend auto operator<=>(const Site&, const Site&) = default;

 private:
  int dim_ = 0;
  std::array<int, kMaxDim> c_{};
};

int dist_inf(const Site& a, const Site& b);

struct SiteHash {
  std::size_t operator()(const Site& s) const;
};

/// Lambda_radius(center) = { x : |x - center|_inf <= radius }.
struct Box {
  Site center;
  int radius = 0;

  int dim() const { return center.dim(); }
  bool contains(const Site& x) const { return dist_inf(x, center) <= radius; }
  bool contains(const Box& other) const;
  bool intersects(const Box& other) const;
  std::size_t size() const;
  /// Sites in lexicographic order.
  std::vector<Site> sites() const;
};

Box centered_box(int dim, int radius);

/// Calls f on every site of box in lexicographic order.
template <class F>
void for_each_site(const Box& box, F&& f) {
  const int d = box.dim();
  Site x = box.center;
  for (int i = 0; i < d; ++i) x[i] -= box.radius;
  while (true) {
    f(static_cast<const Site&>(x));
    int i = d - 1;
    while (i >= 0 && x[i] == box.center[i] + box.radius) {
      x[i] = box.center[i] - box.radius;
      --i;
    }
    if (i < 0) return;
    ++x[i];
  }
}

/// A finite set of sites, kept in lexicographic order with an index map.
class Region {
 public:
  Region() = default;
  /// Sorts and removes duplicates.
  explicit Region(std::vector<Site> sites);
  static Region from_box(const Box& box);

  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  int dim() const { return sites_.empty() ? 0 : sites_.front().dim(); }
  const std::vector<Site>& sites() const { return sites_; }
  const Site& operator[](std::size_t i) const { return sites_[i]; }

  bool contains(const Site& x) const { return index_.count(x) != 0; }
  bool contains(const Box& box) const;
  bool contains(const Region& other) const;
  std::optional<std::size_t> find(const Site& x) const;
  /// Throws ErrorCode::containment when x is absent.
  std::size_t index(const Site& x) const;

  Region minus(const Region& other) const;
  Region minus(const Box& box) const;
  Region intersect(const Box& box) const;

  friend bool operator==(const Region& a, const Region& b) {
    return a.sites_ == b.sites_;
  }

 private:
  std::vector<Site> sites_;
  std::unordered_map<Site, std::size_t, SiteHash> index_;
};

/// An edge (x, y) with x inside and y outside, |x - y|_1 = 1.
struct BoundaryPair {
  Site inner;
  Site outer;
  friend bool operator==(const BoundaryPair&, const BoundaryPair&) = default;
};

/// Number of sites of Lambda_r.
long long box_cardinality(int r, int d);
/// Number of sites on the inner boundary of Lambda_r, r >= 1.
long long inner_boundary_count(int r, int d);

/// Sites of box adjacent to its complement in Z^d.
Region inner_boundary(const Box& box);

/// Boundary pairs of inner relative to outer; inner must lie in outer.
std::vector<BoundaryPair> boundary_in(const Region& inner, const Region& outer);
std::vector<BoundaryPair> boundary_in(const Box& inner, const Region& outer);

/// Coordinatewise clamp of n into [-R + t, R - t].
Site shifted_point(const Site& n, int t, int R);
/// Lambda_s(shifted_point(n, t, R)).
Box shifted_cube(const Site& n, int s, int t, int R);
inline Box shifted_cube(const Site& n, int t, int R) { return shifted_cube(n, t, t, R); }

struct AcceptabilityResult {
  bool acceptable = true;
  /// For each site of the region (by index): a center n with x in
  /// Lambda_r(n) certifying the property, or empty where none exists.
  std::vector<std::optional<Site>> witness;
  std::optional<Site> first_failure;
};

AcceptabilityResult is_r_acceptable(const Region& region, int r);

/// { x in Lambda_R(0) : s + 1 <= |x - n|_inf <= t }.
Region annulus(const Site& n, int s, int t, int R);

}  // namespace loclab

#endif
