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

#ifndef LOCLAB_DISORDER_HPP
#define LOCLAB_DISORDER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loclab/lattice.hpp"

namespace loclab {

/// A probability density on [-1/2, 1/2]. An empty pdf means uniform.
struct Density {
  std::string name;
  double sup_norm = 1.0;
  std::function<double(double)> pdf;
};

/// Name -> density. "uniform" and "triangular" are always present.
class DensityRegistry {
 public:
  static DensityRegistry& instance();
  void add(Density density);
  /// Throws ErrorCode::config for unknown names.
  const Density& get(const std::string& name) const;

 private:
  DensityRegistry();
  std::vector<Density> densities_;
};

/// Values of a disorder configuration on a finite support.
class DisorderField {
 public:
  DisorderField(std::shared_ptr<const Region> support, std::vector<double> values,
                std::uint64_t seed, std::string density);

  const Region& support() const { return *support_; }
  std::shared_ptr<const Region> support_ptr() const { return support_; }
  std::span<const double> values() const { return values_; }
  std::uint64_t seed() const { return seed_; }
  const std::string& density() const { return density_; }

  /// Throws ErrorCode::truncation when x is outside the support.
  double operator()(const Site& x) const;
  bool covers(const Site& x) const { return support_->contains(x); }

  /// Copy with individual values replaced; values must lie in [-1/2, 1/2].
  DisorderField with_values(std::span<const std::pair<Site, double>> overrides) const;

 private:
  std::shared_ptr<const Region> support_;
  std::vector<double> values_;
  std::uint64_t seed_;
  std::string density_;
};

/// The value at each site depends only on (seed, site).
DisorderField sample(const Region& support, std::uint64_t seed,
                     const std::string& density = "uniform");
DisorderField sample(std::shared_ptr<const Region> support, std::uint64_t seed,
                     const std::string& density = "uniform");

/// Resamples the values on region with seed2; everything else is kept.
DisorderField resample_mod(const DisorderField& field, const Region& region,
                           std::uint64_t seed2);

/// True when the fields agree outside region (same support assumed).
bool agree_outside(const DisorderField& a, const DisorderField& b, const Region& region);

/// Sum over the common support of |a_n - b_n| / 2^{|n|_inf}.
double holder_distance(const DisorderField& a, const DisorderField& b);

struct ConcentrationEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;
  long trials = 0;
  long hits = 0;
};

/// Empirical P(|f(omega) - E| <= eps).
ConcentrationEstimate concentration_estimate(
    const std::function<double(const DisorderField&)>& f, const Region& support, double E,
    double eps, long trials, std::uint64_t seed, const std::string& density = "uniform",
    int jobs = 1);

struct PowerEnvelope {
  double F = 0.0;
  double alpha = 0.0;
};

/// Log-log slope alpha over the grid, then the smallest F with
/// p_hat <= F eps^alpha at every grid point. Zero estimates are skipped
/// in the slope fit.
PowerEnvelope fit_power_envelope(std::span<const double> eps,
                                 std::span<const double> p_hat);

}  // namespace loclab

#endif
