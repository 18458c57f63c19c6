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

#include "loclab/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "loclab/error.hpp"

namespace loclab {

namespace {

template <class F>
void for_each_neighbor(const Site& x, F&& f) {
  for (int i = 0; i < x.dim(); ++i) {
    for (int step : {-1, 1}) {
      Site y = x;
      y[i] += step;
      f(y);
    }
  }
}

}  // namespace

Site::Site(int dim) : dim_(dim) {
  require(dim >= 1 && dim <= kMaxDim, ErrorCode::domain,
          "dimension must be in [1, " + std::to_string(kMaxDim) + "]");
}

Site::Site(std::initializer_list<int> coords) : Site(static_cast<int>(coords.size())) {
  int i = 0;
  for (int v : coords) c_[i++] = v;
}

int Site::norm_inf() const {
  int m = 0;
  for (int i = 0; i < dim_; ++i) m = std::max(m, std::abs(c_[i]));
  return m;
}

int Site::norm1() const {
  int s = 0;
  for (int i = 0; i < dim_; ++i) s += std::abs(c_[i]);
  return s;
}

long long Site::norm2_sq() const {
  long long s = 0;
  for (int i = 0; i < dim_; ++i) s += static_cast<long long>(c_[i]) * c_[i];
  return s;
}

Site operator+(const Site& a, const Site& b) {
  Site out = a;
  for (int i = 0; i < a.dim_; ++i) out.c_[i] += b.c_[i];
  return out;
}

Site operator-(const Site& a, const Site& b) {
  Site out = a;
  for (int i = 0; i < a.dim_; ++i) out.c_[i] -= b.c_[i];
  return out;
}

int dist_inf(const Site& a, const Site& b) { return (a - b).norm_inf(); }

std::size_t SiteHash::operator()(const Site& s) const {
  std::uint64_t h = 0x84222325cbf29ce4ULL ^ static_cast<std::uint64_t>(s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(s[i])) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

bool Box::contains(const Box& other) const {
  return dist_inf(other.center, center) + other.radius <= radius;
}

bool Box::intersects(const Box& other) const {
  return dist_inf(other.center, center) <= radius + other.radius;
}

std::size_t Box::size() const {
  return static_cast<std::size_t>(box_cardinality(radius, dim()));
}

std::vector<Site> Box::sites() const {
  std::vector<Site> out;
  out.reserve(size());
  for_each_site(*this, [&](const Site& x) { out.push_back(x); });
  return out;
}

Box centered_box(int dim, int radius) { return Box{Site::origin(dim), radius}; }

Region::Region(std::vector<Site> sites) : sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
  if (!sites_.empty()) {
    const int d = sites_.front().dim();
    for (const auto& s : sites_)
      require(s.dim() == d, ErrorCode::domain, "region mixes dimensions");
  }
  index_.reserve(sites_.size());
  for (std::size_t i = 0; i < sites_.size(); ++i) index_.emplace(sites_[i], i);
}

Region Region::from_box(const Box& box) {
  require(box.radius >= 0, ErrorCode::domain, "negative box radius");
  return Region(box.sites());
}

bool Region::contains(const Box& box) const {
  bool all = true;
  for_each_site(box, [&](const Site& x) { all = all && contains(x); });
  return all;
}

bool Region::contains(const Region& other) const {
  for (const auto& s : other.sites_)
    if (!contains(s)) return false;
  return true;
}

std::optional<std::size_t> Region::find(const Site& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Region::index(const Site& x) const {
  auto it = index_.find(x);
  require(it != index_.end(), ErrorCode::containment, "site not in region");
  return it->second;
}

Region Region::minus(const Region& other) const {
  std::vector<Site> out;
  for (const auto& s : sites_)
    if (!other.contains(s)) out.push_back(s);
  return Region(std::move(out));
}

Region Region::minus(const Box& box) const {
  std::vector<Site> out;
  for (const auto& s : sites_)
    if (!box.contains(s)) out.push_back(s);
  return Region(std::move(out));
}

Region Region::intersect(const Box& box) const {
  std::vector<Site> out;
  for (const auto& s : sites_)
    if (box.contains(s)) out.push_back(s);
  return Region(std::move(out));
}

long long box_cardinality(int r, int d) {
  long long n = 1;
  for (int i = 0; i < d; ++i) n *= 2LL * r + 1;
  return n;
}

long long inner_boundary_count(int r, int d) {
  require(r >= 1, ErrorCode::empty_interior, "inner boundary needs radius >= 1");
  return box_cardinality(r, d) - box_cardinality(r - 1, d);
}

Region inner_boundary(const Box& box) {
  require(box.radius >= 1, ErrorCode::empty_interior, "inner boundary needs radius >= 1");
  std::vector<Site> out;
  for_each_site(box, [&](const Site& x) {
    if (dist_inf(x, box.center) == box.radius) out.push_back(x);
  });
  return Region(std::move(out));
}

std::vector<BoundaryPair> boundary_in(const Region& inner, const Region& outer) {
  require(outer.contains(inner), ErrorCode::containment,
          "inner region is not contained in outer region");
  std::vector<BoundaryPair> out;
  for (const auto& x : inner.sites()) {
    for_each_neighbor(x, [&](const Site& y) {
      if (outer.contains(y) && !inner.contains(y)) out.push_back({x, y});
    });
  }
  return out;
}

std::vector<BoundaryPair> boundary_in(const Box& inner, const Region& outer) {
  return boundary_in(Region::from_box(inner), outer);
}

Site shifted_point(const Site& n, int t, int R) {
  require(t >= 0 && t <= R, ErrorCode::scale, "shifted point needs 0 <= t <= R");
  Site out = n;
  for (int i = 0; i < n.dim(); ++i) out[i] = std::clamp(n[i], -R + t, R - t);
  return out;
}

Box shifted_cube(const Site& n, int s, int t, int R) {
  require(s >= 0, ErrorCode::scale, "negative cube radius");
  return Box{shifted_point(n, t, R), s};
}

AcceptabilityResult is_r_acceptable(const Region& region, int r) {
  require(r >= 0, ErrorCode::scale, "negative scale");
  AcceptabilityResult res;
  res.witness.assign(region.size(), std::nullopt);
  if (region.empty()) return res;

  // For every center whose cube fits, the cube sites facing the rest of
  // the region.
  struct Fit {
    bool fits = false;
    std::vector<Site> facing;
  };
  std::vector<Fit> fits(region.size());
  for (std::size_t i = 0; i < region.size(); ++i) {
    const Box cube{region[i], r};
    if (!region.contains(cube)) continue;
    fits[i].fits = true;
    for_each_site(cube, [&](const Site& y) {
      bool facing = false;
      for_each_neighbor(y, [&](const Site& z) {
        if (!cube.contains(z) && region.contains(z)) facing = true;
      });
      if (facing) fits[i].facing.push_back(y);
    });
  }

  for (std::size_t i = 0; i < region.size(); ++i) {
    const Site& x = region[i];
    for_each_site(Box{x, r}, [&](const Site& n) {
      if (res.witness[i]) return;
      auto j = region.find(n);
      if (!j || !fits[*j].fits) return;
      int best = -1;
      for (const auto& y : fits[*j].facing) {
        const int dd = dist_inf(x, y);
        if (best < 0 || dd < best) best = dd;
      }
      if (best < 0 || 10LL * best >= r) res.witness[i] = n;
    });
    if (!res.witness[i]) {
      res.acceptable = false;
      if (!res.first_failure) res.first_failure = x;
    }
  }
  return res;
}

Region annulus(const Site& n, int s, int t, int R) {
  require(t >= s, ErrorCode::order, "annulus needs t >= s");
  std::vector<Site> out;
  for_each_site(Box{Site::origin(n.dim()), R}, [&](const Site& x) {
    const int dd = dist_inf(x, n);
    if (dd >= s + 1 && dd <= t) out.push_back(x);
  });
  return Region(std::move(out));
}

}  // namespace loclab
