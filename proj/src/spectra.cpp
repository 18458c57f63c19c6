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


#include "loclab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "loclab/error.hpp"
#include "loclab/numeric.hpp"
#include "loclab/parallel.hpp"
#include "loclab/rng.hpp"

namespace loclab {

namespace {

std::shared_ptr<const Region> centered_region(int d, int R) {
  require(R >= 0, ErrorCode::domain, "need R >= 0");
  require(box_cardinality(R, d) <= static_cast<long>(kSiteCapacity), ErrorCode::capacity,
          "box exceeds site capacity");
  return std::make_shared<const Region>(Region::from_box(centered_box(d, R)));
}

Eigen::VectorXd realization_spectrum(const Model& model, int R, std::uint64_t seed) {
  const Box box = centered_box(model.dim(), R);
  auto region = centered_region(model.dim(), R);
  return eigenvalues(model.hamiltonian(region, model.sample_field(box, seed)));
}

double count_in(const Eigen::VectorXd& ev, double lo, double hi) {
  const double* b = ev.data();
  const double* e = b + ev.size();
  return static_cast<double>(std::upper_bound(b, e, hi) - std::lower_bound(b, e, lo));
}

}  // namespace

Eigen::VectorXd eigenvalues(const BoxOperator& op) {
  require(op.is_real(), ErrorCode::not_normal, "eigenvalues: real operators only");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

IDSTable ids(const Model& model, int R, std::span<const double> E_grid, long realizations,
             std::uint64_t seed, int jobs) {
  require(realizations >= 1, ErrorCode::domain, "need at least one realization");
  centered_region(model.dim(), R);
  const auto n = static_cast<std::size_t>(realizations);
  const double sites = static_cast<double>(box_cardinality(R, model.dim()));
  std::vector<std::vector<double>> frac(n);
  parallel_for(n, jobs, [&](std::size_t k) {
    const Eigen::VectorXd ev = realization_spectrum(model, R, derive_seed(seed, {k}));
    const double* b = ev.data();
    frac[k].resize(E_grid.size());
    for (std::size_t i = 0; i < E_grid.size(); ++i)
      frac[k][i] = static_cast<double>(std::upper_bound(b, b + ev.size(), E_grid[i]) - b) / sites;
  });
  IDSTable t;
  t.R = R;
  t.realizations = realizations;
  t.seed = seed;
  t.E.assign(E_grid.begin(), E_grid.end());
  for (std::size_t i = 0; i < E_grid.size(); ++i) {
    double s = 0.0, s2 = 0.0;
    for (const auto& f : frac) {
      s += f[i];
      s2 += f[i] * f[i];
    }
    const double mean = s / n;
    const double var = n > 1 ? std::max(0.0, (s2 - n * mean * mean) / (n - 1.0)) : 0.0;
    t.N_hat.push_back(mean);
    t.std_error.push_back(std::sqrt(var / n));
  }
  return t;
}

double free_ids_1d(double E) {
  if (E <= -2.0) return 0.0;
  if (E >= 2.0) return 1.0;
  return std::acos(-E / 2.0) / std::numbers::pi;
}

std::vector<WegnerEstimate> wegner_sweep(const Model& model, int R, double E,
                                         std::span<const double> eps, long realizations,
                                         std::uint64_t seed, int jobs) {
  require(realizations >= 1, ErrorCode::domain, "need at least one realization");
  for (double e : eps) require(e > 0.0, ErrorCode::domain, "eps must be positive");
  centered_region(model.dim(), R);
  const auto n = static_cast<std::size_t>(realizations);
  const double sites = static_cast<double>(box_cardinality(R, model.dim()));
  std::vector<std::vector<double>> ratio(n);
  parallel_for(n, jobs, [&](std::size_t k) {
    const Eigen::VectorXd ev = realization_spectrum(model, R, derive_seed(seed, {k}));
    for (double e : eps) ratio[k].push_back(count_in(ev, E - e, E + e) / sites);
  });
  std::vector<WegnerEstimate> out;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    double s = 0.0, s2 = 0.0;
    for (const auto& r : ratio) {
      s += r[i];
      s2 += r[i] * r[i];
    }
    const double mean = s / n;
    const double var = n > 1 ? std::max(0.0, (s2 - n * mean * mean) / (n - 1.0)) : 0.0;
    out.push_back({eps[i], mean, std::sqrt(var / n), realizations});
  }
  return out;
}

WegnerEstimate wegner_ratio(const Model& model, int R, double E, double eps, long realizations,
                            std::uint64_t seed, int jobs) {
  const double e[1] = {eps};
  return wegner_sweep(model, R, E, e, realizations, seed, jobs).front();
}

WegnerEnvelope fit_wegner_envelope(std::span<const WegnerEstimate> rows) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (r.eps >= std::exp(-1.0) || r.ratio <= 0.0) continue;
    x.push_back(std::log(std::log(1.0 / r.eps)));
    y.push_back(std::log(r.ratio));
  }
  WegnerEnvelope env;
  env.points = static_cast<int>(x.size());
  if (x.size() < 2) return env;
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx <= 0.0) return env;
  env.beta_hat = -sxy / sxx;
  env.intercept = my + env.beta_hat * mx;
  return env;
}

MsaToWegner msa_to_wegner(const std::function<double(double)>& psi, int d, double tau,
                          double eps) {
  require(tau > 0.0 && tau < 1.0, ErrorCode::domain, "tau must lie in (0, 1)");
  require(eps > 0.0 && eps < 1.0, ErrorCode::domain, "eps must lie in (0, 1)");
  require(d >= 1, ErrorCode::domain, "need d >= 1");
  MsaToWegner m;
  m.r = robust_floor(std::pow(std::log(1.0 / eps), 1.0 / tau) / 3.0);
  const double root = std::pow(psi(m.r), 1.0 / (d + 1.0));
  m.s = robust_floor(1.0 / (3.0 * root));
  m.bound = 7.0 * root;
  return m;
}

SpectrumPathResult spectrum_path_union(const Model& model, int R, int steps, std::uint64_t seed) {
  require(steps >= 2, ErrorCode::domain, "need steps >= 2");
  const int d = model.dim();
  const Box box = centered_box(d, R);
  auto region = centered_region(d, R);
  const DisorderField field = model.sample_field(box, seed);
  const std::vector<double> v1 = model.potential().on_region(*region, field);

  SpectrumPathResult res;
  res.steps = steps;
  const double dt = 1.0 / steps;
  double vmax = 0.0;
  for (double v : v1) vmax = std::max(vmax, std::abs(v));
  res.lipschitz_step = vmax * dt;

  std::vector<Eigen::VectorXd> spectra;
  for (int i = 0; i <= steps; ++i) {
    const double t = i * dt;
    std::vector<double> vt(v1.size());
    for (std::size_t k = 0; k < v1.size(); ++k) vt[k] = t * v1[k];
    spectra.push_back(eigenvalues(BoxOperator(region, std::move(vt))));
  }

  const Eigen::VectorXd& ev0 = spectra.front();
  for (Eigen::Index k = 1; k < ev0.size(); ++k)
    res.level_spacing = std::max(res.level_spacing, ev0(k) - ev0(k - 1));
  res.tolerance = res.lipschitz_step + res.level_spacing;
  res.endpoint_ok = ev0(0) >= -2.0 * d - 1e-9 && ev0(ev0.size() - 1) <= 2.0 * d + 1e-9 &&
                    ev0(0) + 2.0 * d <= res.level_spacing &&
                    2.0 * d - ev0(ev0.size() - 1) <= res.level_spacing;

  res.max_weyl_excess = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < steps; ++i) {
    const double jump = (spectra[i] - spectra[i + 1]).cwiseAbs().maxCoeff();
    res.max_weyl_excess = std::max(res.max_weyl_excess, jump - res.lipschitz_step);
  }
  res.weyl_ok = res.max_weyl_excess <= 1e-9;

  std::vector<double> all;
  for (const auto& s : spectra) all.insert(all.end(), s.data(), s.data() + s.size());
  std::sort(all.begin(), all.end());
  for (std::size_t k = 1; k < all.size(); ++k)
    res.max_union_gap = std::max(res.max_union_gap, all[k] - all[k - 1]);
  res.union_ok = res.max_union_gap <= res.tolerance;
  return res;
}

}  // namespace loclab
