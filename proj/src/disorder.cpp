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

#include <cmath>

#include "loclab/error.hpp"
#include "loclab/parallel.hpp"
#include "loclab/rng.hpp"

namespace loclab {

namespace {

double draw(const Density& density, Stream& stream) {
  if (!density.pdf) return stream.uniform(-0.5, 0.5);
  for (int attempt = 0; attempt < 1 << 20; ++attempt) {
    const double x = stream.uniform(-0.5, 0.5);
    if (stream.unit() * density.sup_norm <= density.pdf(x)) return x;
  }
  throw Error(ErrorCode::domain, "rejection sampling failed for density " + density.name);
}

double site_value(const Density& density, std::uint64_t seed, const Site& x) {
  Stream stream(derive_seed(seed, {SiteHash{}(x)}));
  return draw(density, stream);
}

}  // namespace

DensityRegistry::DensityRegistry() {
  densities_.push_back({"uniform", 1.0, {}});
  densities_.push_back({"triangular", 2.0, [](double x) { return 2.0 - 4.0 * std::abs(x); }});
}

DensityRegistry& DensityRegistry::instance() {
  static DensityRegistry registry;
  return registry;
}

void DensityRegistry::add(Density density) {
  require(density.sup_norm >= 1.0, ErrorCode::config,
          "density sup-norm bound must be at least 1");
  for (auto& d : densities_) {
    if (d.name == density.name) {
      d = std::move(density);
      return;
    }
  }
  densities_.push_back(std::move(density));
}

const Density& DensityRegistry::get(const std::string& name) const {
  for (const auto& d : densities_)
    if (d.name == name) return d;
  throw Error(ErrorCode::config, "density: unknown density '" + name + "'");
}

DisorderField::DisorderField(std::shared_ptr<const Region> support, std::vector<double> values,
                             std::uint64_t seed, std::string density)
    : support_(std::move(support)), values_(std::move(values)), seed_(seed),
      density_(std::move(density)) {
  require(values_.size() == support_->size(), ErrorCode::domain,
          "field values do not match support");
}

double DisorderField::operator()(const Site& x) const {
  auto i = support_->find(x);
  require(i.has_value(), ErrorCode::truncation, "disorder support too small");
  return values_[*i];
}

DisorderField DisorderField::with_values(
    std::span<const std::pair<Site, double>> overrides) const {
  DisorderField out = *this;
  for (const auto& [x, v] : overrides) {
    require(v >= -0.5 && v <= 0.5, ErrorCode::domain, "disorder value outside [-1/2, 1/2]");
    out.values_[support_->index(x)] = v;
  }
  return out;
}

DisorderField sample(std::shared_ptr<const Region> support, std::uint64_t seed,
                     const std::string& density) {
  const Density& rho = DensityRegistry::instance().get(density);
  std::vector<double> values(support->size());
  for (std::size_t i = 0; i < support->size(); ++i)
    values[i] = site_value(rho, seed, (*support)[i]);
  return DisorderField(std::move(support), std::move(values), seed, density);
}

DisorderField sample(const Region& support, std::uint64_t seed, const std::string& density) {
  return sample(std::make_shared<const Region>(support), seed, density);
}

DisorderField resample_mod(const DisorderField& field, const Region& region,
                           std::uint64_t seed2) {
  require(field.support().contains(region), ErrorCode::containment,
          "resample region not inside support");
  const Density& rho = DensityRegistry::instance().get(field.density());
  std::vector<std::pair<Site, double>> fresh;
  fresh.reserve(region.size());
  for (const auto& x : region.sites()) fresh.emplace_back(x, site_value(rho, seed2, x));
  return field.with_values(fresh);
}

bool agree_outside(const DisorderField& a, const DisorderField& b, const Region& region) {
  if (!(a.support() == b.support())) return false;
  for (std::size_t i = 0; i < a.support().size(); ++i) {
    if (region.contains(a.support()[i])) continue;
    if (a.values()[i] != b.values()[i]) return false;
  }
  return true;
}

double holder_distance(const DisorderField& a, const DisorderField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.support().size(); ++i) {
    const Site& x = a.support()[i];
    auto j = b.support().find(x);
    if (!j) continue;
    s += std::abs(a.values()[i] - b.values()[*j]) * std::ldexp(1.0, -x.norm_inf());
  }
  return s;
}

ConcentrationEstimate concentration_estimate(
    const std::function<double(const DisorderField&)>& f, const Region& support, double E,
    double eps, long trials, std::uint64_t seed, const std::string& density, int jobs) {
  require(trials >= 1, ErrorCode::domain, "need at least one trial");
  require(eps > 0.0, ErrorCode::domain, "eps must be positive");
  auto shared = std::make_shared<const Region>(support);
  std::vector<char> hit(static_cast<std::size_t>(trials));
  parallel_for(hit.size(), jobs, [&](std::size_t t) {
    const DisorderField field = sample(shared, derive_seed(seed, {t}), density);
    hit[t] = std::abs(f(field) - E) <= eps;
  });
  ConcentrationEstimate est;
  est.trials = trials;
  for (char h : hit) est.hits += h;
  est.p_hat = static_cast<double>(est.hits) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
  return est;
}

PowerEnvelope fit_power_envelope(std::span<const double> eps, std::span<const double> p_hat) {
  require(eps.size() == p_hat.size(), ErrorCode::domain, "grid size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (p_hat[i] <= 0.0) continue;
    const double x = std::log(eps[i]);
    const double y = std::log(p_hat[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  require(n >= 2, ErrorCode::domain, "need two positive estimates to fit");
  PowerEnvelope env;
  env.alpha = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (std::size_t i = 0; i < eps.size(); ++i)
    env.F = std::max(env.F, p_hat[i] / std::pow(eps[i], env.alpha));
  return env;
}

}  // namespace loclab
