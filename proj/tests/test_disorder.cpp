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


#include "loclab/disorder.hpp"

#include "doctest.h"
#include "loclab/potential.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>

using namespace loclab;
using testing::error_of;

TEST_SUITE("disorder") {

TEST_CASE("uniform draws: range, mean and empirical CDF") {
  const Region support = Region::from_box(centered_box(1, 50000));
  const DisorderField f = sample(support, 42);
  const auto v = f.values();
  REQUIRE(v.size() == 100001);
  double mean = 0.0;
  for (double x : v) {
    CHECK_UNARY(x >= -0.5);
    CHECK_UNARY(x <= 0.5);
    mean += x;
  }
  mean /= static_cast<double>(v.size());
  CHECK(std::abs(mean) <= 3.0 * (1.0 / std::sqrt(12.0)) / std::sqrt(1e5));

  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end());
  double worst = 0.0;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double F = sorted[i] + 0.5;
    worst = std::max({worst, std::abs(F - i / n), std::abs(F - (i + 1) / n)});
  }
  CHECK(worst <= 0.02);
}

TEST_CASE("sampling is reproducible and consistent across supports") {
  const Region small = Region::from_box(centered_box(2, 3));
  const Region large = Region::from_box(centered_box(2, 6));
  const DisorderField a = sample(small, 7);
  const DisorderField b = sample(small, 7);
  const DisorderField c = sample(large, 7);
  for (const auto& x : small.sites()) {
    CHECK(a(x) == b(x));
    CHECK(a(x) == c(x));
  }
  CHECK(sample(small, 8)(Site{0, 0}) != a(Site{0, 0}));
  CHECK(error_of([&] { sample(small, 1, "cauchy"); }) == ErrorCode::config);
  CHECK(error_of([&] { a(Site{9, 9}); }) == ErrorCode::truncation);
}

TEST_CASE("triangular density") {
  const Density& tri = DensityRegistry::instance().get("triangular");
  CHECK(tri.sup_norm == doctest::Approx(2.0));
  const DisorderField f = sample(Region::from_box(centered_box(1, 20000)), 3, "triangular");
  long central = 0;
  for (double x : f.values()) {
    CHECK_UNARY(std::abs(x) <= 0.5);
    central += std::abs(x) <= 0.25 ? 1 : 0;
  }
  // P(|x| <= 1/4) = 3/4 for the triangular law on [-1/2, 1/2].
  const double p = static_cast<double>(central) / 40001.0;
  CHECK(std::abs(p - 0.75) <= 3.0 * std::sqrt(0.75 * 0.25 / 40001.0));
}

TEST_CASE("resampling on a region") {
  const Region support = Region::from_box(centered_box(2, 4));
  const DisorderField f = sample(support, 11);

  const DisorderField same = resample_mod(f, Region{}, 99);
  CHECK(std::equal(same.values().begin(), same.values().end(), f.values().begin()));

  const DisorderField fresh = resample_mod(f, support, 99);
  for (std::size_t i = 0; i < support.size(); ++i) CHECK(fresh.values()[i] != f.values()[i]);

  const Region patch = Region::from_box(Box{Site{1, 1}, 1});
  const DisorderField g = resample_mod(f, patch, 5);
  CHECK(agree_outside(f, g, patch));
  for (const auto& x : support.sites()) {
    if (patch.contains(x))
      CHECK(g(x) != f(x));
    else
      CHECK(g(x) == f(x));
  }
  CHECK(error_of([&] { resample_mod(f, Region::from_box(centered_box(2, 5)), 1); }) ==
        ErrorCode::containment);
}

TEST_CASE("Hoelder distance weights by 2^{-|n|}") {
  const Region support = Region::from_box(centered_box(1, 5));
  const DisorderField f = sample(support, 2);
  const std::pair<Site, double> change[] = {{Site{3}, f(Site{3}) + 0.25}};
  const DisorderField g = f.with_values(change);
  CHECK(holder_distance(f, g) == doctest::Approx(0.25 / 8.0));
  CHECK(holder_distance(f, f) == 0.0);
}

TEST_CASE("concentration estimates") {
  const Region support = Region::from_box(centered_box(1, 0));
  auto omega0 = [](const DisorderField& w) { return w(Site{0}); };
  const auto e = concentration_estimate(omega0, support, 0.0, 0.1, 20000, 1);
  CHECK(std::abs(e.p_hat - 0.2) <= 3.0 * std::sqrt(0.2 * 0.8 / 20000.0));
  CHECK(e.std_error == doctest::Approx(std::sqrt(e.p_hat * (1 - e.p_hat) / 20000.0)));
  CHECK(concentration_estimate(omega0, support, 0.0, 1.0, 1000, 1).p_hat == 1.0);

  // Alloy functional with phi(0) = 1 and c = 1.
  const SingleSite phi = SingleSite::alt_exp(1, 1.0);
  const int Rt = 8;
  const Region wide = Region::from_box(centered_box(1, Rt));
  auto V0 = [&](const DisorderField& w) { return eval_alloy(phi, w, Site{0}, 1.0, Rt).value; };
  const std::vector<double> eps{0.4, 0.2, 0.1, 0.05, 0.025};
  std::vector<double> p;
  for (double e2 : eps) p.push_back(concentration_estimate(V0, wide, 0.1, e2, 20000, 3).p_hat);
  const PowerEnvelope env = fit_power_envelope(eps, p);
  CHECK(env.alpha > 0.0);
  for (std::size_t i = 0; i < eps.size(); ++i)
    CHECK(p[i] <= env.F * std::pow(eps[i], env.alpha) * (1 + 1e-12));
}

}  // TEST_SUITE
