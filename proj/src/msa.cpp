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

#include "loclab/msa.hpp"

#include <cmath>

#include "loclab/error.hpp"
#include "loclab/numeric.hpp"
#include "loclab/parallel.hpp"
#include "loclab/rng.hpp"

namespace loclab {

namespace {

struct TrialOutcome {
  bool failed = false;
  bool prefiltered = false;
};

AcceptabilityEstimate estimate_impl(const Model& model, int r, double E,
                                    const SuitabilityParams& params, double alpha, long trials,
                                    std::uint64_t seed, int jobs, bool prefilter,
                                    long* prefiltered) {
  require(trials >= 100, ErrorCode::domain, "acceptability estimates need >= 100 trials");
  require(r >= 1, ErrorCode::domain, "need r >= 1");
  validate(params);
  const Box box = centered_box(model.dim(), r);
  auto region = std::make_shared<const Region>(Region::from_box(box));
  std::vector<TrialOutcome> out(static_cast<std::size_t>(trials));
  parallel_for(out.size(), jobs, [&](std::size_t t) {
    const DisorderField field = model.sample_field(box, derive_seed(seed, {t}));
    std::vector<double> v = model.potential().on_region(*region, field);
    if (prefilter && gap_certifies(v, model.dim(), r, E, params)) {
      out[t].prefiltered = true;
      return;
    }
    const BoxOperator H(region, std::move(v));
    out[t].failed = !check_suitable(H, box, E, params).pass;
  });
  AcceptabilityEstimate est;
  est.r = r;
  est.E = E;
  est.trials = trials;
  long pre = 0;
  for (const auto& o : out) {
    est.failures += o.failed ? 1 : 0;
    pre += o.prefiltered ? 1 : 0;
  }
  if (prefiltered) *prefiltered = pre;
  est.p_hat = static_cast<double>(est.failures) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
  est.target = std::pow(static_cast<double>(r), -alpha);
  return est;
}

}  // namespace

double rbar(double r, double gamma, double c, double lambda) {
  require(r > 0 && gamma > 0 && c > 0 && lambda > 0, ErrorCode::domain,
          "rbar needs positive inputs");
  return robust_ceil((1.0 + 4.0 * gamma / c) * r + std::log(lambda) / c);
}

double rbar_T0(double gamma, double c) { return 2.0 + 4.0 * gamma / c; }

double rhat(double t, double r, double gamma, double c, double lambda) {
  return std::max({rbar(t, gamma, c, lambda), 3.0 * t, t + 3.0 * r});
}

AlphaVariant parse_alpha_variant(const std::string& name) {
  if (name == "thm") return AlphaVariant::thm;
  if (name == "sec8") return AlphaVariant::sec8;
  throw Error(ErrorCode::config, "alpha_variant: expected 'thm' or 'sec8', got '" + name + "'");
}

WegnerSchedule schedule_wegner(double r, int d, AlphaVariant variant) {
  require(r >= 2.0, ErrorCode::domain, "Wegner schedule needs r >= 2");
  require(d >= 1, ErrorCode::domain, "need d >= 1");
  WegnerSchedule w;
  w.R0 = robust_ceil(std::pow(r, 1.0 + 1.0 / (5.0 * d)));
  w.R1 = robust_floor(std::pow(r, 1.0 + 1.0 / (2.0 * d)));
  const double num = variant == AlphaVariant::thm ? 2.0 * d + 1.0 : 2.0 * d + 2.0;
  w.alpha = d * num / (2.0 * d - 1.0);
  w.gamma_factor = 1.0 - 200.0 / std::pow(r, 1.0 / d);
  return w;
}

int cartan_alpha_tilde(double r, int d, double gamma, double c) {
  require(r > 1.0 && d >= 1, ErrorCode::domain, "need r > 1 and d >= 1");
  const double M = std::max(4.0, rbar_T0(gamma, c));
  return static_cast<int>(robust_floor(std::sqrt(std::log(r) / (2.0 * d * std::log(M)))));
}

CartanSchedule schedule_cartan(double r, int d, double alpha, double gamma, double c) {
  require(alpha >= 3.0 * d + 2.0, ErrorCode::domain, "Cartan schedule needs alpha >= 3d+2");
  CartanSchedule cs;
  cs.R0 = std::pow(r, 3.0 * d + 8.0);
  cs.R1 = std::pow(r, (alpha - 1.0) / (d + 1.0));
  cs.alpha_tilde = cartan_alpha_tilde(r, d, gamma, c);
  cs.K = cs.alpha_tilde;
  cs.gamma_factor = 1.0 - 2.0 / r;
  require(cs.K >= 1, ErrorCode::r_too_small, "r too small: K = 0");
  return cs;
}

std::vector<double> gamma_ladder(double r_start, int d, int steps) {
  require(r_start >= 3.0, ErrorCode::domain, "gamma ladder needs r_start >= 3");
  require(steps >= 1, ErrorCode::domain, "need at least one step");
  std::vector<double> g;
  double gamma = 2.0 * (1.0 - 2.0 / r_start);
  const double log_r = std::log(r_start);
  double exponent = 1.0;
  for (int k = 1; k <= steps; ++k) {
    require(gamma >= 1.0, ErrorCode::r_too_small, "r_start too small: gamma ladder below 1");
    g.push_back(gamma);
    exponent *= 3.0 * d + 8.0;
    gamma *= 1.0 - 2.0 * std::exp(-exponent * log_r);
  }
  return g;
}

ScaleLadder13 scale_ladder_13(double r, int K, int d, double gamma, double c, double lambda) {
  require(K >= 1 && d >= 1, ErrorCode::domain, "need K, d >= 1");
  const double M = std::max(4.0, rbar_T0(gamma, c));
  require(std::log(r) >= 2.0 * d * K * K * std::log(M) * (1 - 1e-12), ErrorCode::precondition,
          "condKsetup: r >= max(4, 2 + 4 gamma / c)^{2 d K^2} fails");
  ScaleLadder13 L;
  L.K = K;
  L.Q = (d + 1) * K + 1;
  L.s.assign(L.Q, std::vector<double>(K));
  L.t.assign(L.Q, std::vector<double>(K));
  auto bar = [&](double x) { return rbar(x, gamma, c, lambda); };
  for (int q = 0; q < L.Q; ++q) {
    for (int k = 0; k < K; ++k) {
      if (k > 0)
        L.s[q][k] = bar(L.t[q][k - 1]);
      else if (q > 0)
        L.s[q][k] = rhat(L.t[q - 1][K - 1], r, gamma, c, lambda);
      else
        L.s[q][k] = bar(r);
      L.t[q][k] = bar(L.s[q][k]);
    }
    L.r_hat.push_back(L.s[q][0]);
    L.s_hat.push_back(L.t[q][K - 1]);
  }
  L.t_last = L.t[L.Q - 1][K - 1];
  L.t_last_within_r3 = std::isfinite(L.t_last) && L.t_last <= r * r * r;
  L.count = static_cast<long>(L.Q) * K;
  L.count_within_bound = L.count <= 2L * d * K * K;
  return L;
}

std::vector<ConstantCheck> check_constants_14(double r, int d, int K, double gamma, double c,
                                              double lambda, double rho_sup, double R,
                                              double t_inf) {
  (void)c;
  std::vector<ConstantCheck> out;
  auto add = [&](std::string name, double lhs, double rhs) {
    out.push_back({std::move(name), lhs, rhs, lhs >= rhs});
  };
  add("r >= 20000 K 3^d", r, 20000.0 * K * std::pow(3.0, d));
  add("r >= log rho", r, std::log(rho_sup));
  add("r >= 2^{2dK^2}", r, std::pow(2.0, 2.0 * d * K * K));
  add("r >= log(2d + lambda)^2", r, std::pow(std::log(2.0 * d + lambda), 2.0));
  add("R >= r^{3d+8}", R, std::pow(r, 3.0 * d + 8.0));
  add("r^3 >= t_inf", r * r * r, t_inf);
  const double a = std::pow(r, 3.0 * d + 3.0);
  const double S = gamma * a * r;
  const double T = K * r;
  add("S >= r^{3d+4}", S, std::pow(r, 3.0 * d + 4.0));
  add("S/T >= r^{3d+2}", S / T, std::pow(r, 3.0 * d + 2.0));
  return out;
}

AcceptabilityEstimate estimate_acceptability(const Model& model, int r, double E,
                                             const SuitabilityParams& params, double alpha,
                                             long trials, std::uint64_t seed, int jobs) {
  return estimate_impl(model, r, E, params, alpha, trials, seed, jobs, false, nullptr);
}

bool gap_certifies(const std::vector<double>& potential, int d, int r, double E,
                   const SuitabilityParams& params) {
  double gap = std::numeric_limits<double>::infinity();
  for (double v : potential) gap = std::min(gap, std::abs(v - E));
  const double delta = gap - 2.0 * d;
  if (delta <= 0.0) return false;
  if (r < 1.0 / (delta * delta) + 10.0) return false;
  if (combes_thomas_rate(delta) < params.gamma) return false;
  return 1.0 / delta <= std::exp(std::pow(r, params.tau) - params.p * std::log(2.0));
}

double gap_probability_bound(int R, int d, double F, double alpha, double delta, double lambda) {
  require(lambda > 0.0, ErrorCode::domain, "lambda must be positive");
  return std::pow(3.0 * R, d) * F * std::pow((2.0 * d + delta) / lambda, alpha);
}

InitialScaleResult initial_scale_search(const ModelConfig& base, int r, double alpha,
                                        std::span<const double> E_grid,
                                        const InitialScaleOptions& options) {
  require(!E_grid.empty(), ErrorCode::domain, "empty energy grid");
  InitialScaleResult res;
  double lambda = options.lambda_start;
  for (int k = 0; k <= options.max_doublings; ++k, lambda *= 2.0) {
    ModelConfig cfg = base;
    cfg.lambda = lambda;
    const Model model(cfg);
    bool all = true;
    for (std::size_t e = 0; e < E_grid.size(); ++e) {
      InitialScaleRow row;
      row.lambda = lambda;
      row.estimate = estimate_impl(model, r, E_grid[e], options.params, alpha, options.trials,
                                   derive_seed(options.seed, {static_cast<std::uint64_t>(k), e}),
                                   options.jobs, options.gap_prefilter, &row.prefiltered);
      all = all && row.estimate.meets_target_3sigma();
      res.rows.push_back(row);
    }
    if (all) {
      res.found = true;
      res.lambda0 = lambda;
      return res;
    }
  }
  return res;
}

BadCubeReport find_bad_cubes(const BoxOperator& big, int R, int r, double E,
                             const SuitabilityParams& params, long rbar_value, int K) {
  const int d = big.region().dim();
  require(big.size() == static_cast<std::size_t>(box_cardinality(R, d)), ErrorCode::domain,
          "operator must live on Lambda_R(0)");
  require(r >= 1 && r <= R, ErrorCode::domain, "need 1 <= r <= R");
  BadCubeReport rep;
  for_each_site(centered_box(d, R - r), [&](const Site& n) {
    const Box cube{n, r};
    ++rep.checked;
    if (check_suitable(big.restrict_to(cube), cube, E, params).pass) return;
    ++rep.unsuitable;
    for (const auto& m : rep.centers)
      if (dist_inf(m, n) < 2 * rbar_value + 1) return;
    rep.centers.push_back(n);
  });
  rep.within_K = static_cast<int>(rep.centers.size()) <= K;
  return rep;
}

ResampleOutcome resample_search(const Model& model, const DisorderField& field, const Site& n,
                                int R, std::span<const std::pair<int, int>> scales, double E,
                                const SuitabilityParams& params, int attempts,
                                std::uint64_t seed) {
  require(!scales.empty(), ErrorCode::domain, "empty scale chain");
  int prev_t = 0;
  for (const auto& [s, t] : scales) {
    require(s <= t && t <= R && s > prev_t - (prev_t == 0 ? 1 : 0), ErrorCode::order,
            "scale chain must satisfy t_{k-1} < s_k <= t_k <= R");
    prev_t = t;
  }
  ResampleOutcome out;
  prev_t = 0;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    const auto [s, t] = scales[k];
    const Region patch =
        field.support().intersect(shifted_cube(n, s, prev_t, R));
    const Box target = shifted_cube(n, t, R);
    auto region = std::make_shared<const Region>(Region::from_box(target));
    for (int a = 0; a <= attempts; ++a) {
      DisorderField trial =
          a == 0 ? field : resample_mod(field, patch, derive_seed(seed, {k, static_cast<std::uint64_t>(a)}));
      const BoxOperator H = model.hamiltonian(region, trial);
      if (check_suitable(H, target, E, params).pass) {
        out.success = true;
        out.level = static_cast<int>(k) + 1;
        out.resamples = a;
        out.field = std::move(trial);
        return out;
      }
    }
    prev_t = t;
  }
  return out;
}

ScaleSchedule build_schedule(Regime regime, int d, double r0, double gamma0, double alpha0,
                             double c, int rungs, AlphaVariant variant) {
  require(rungs >= 1, ErrorCode::domain, "need at least one rung");
  ScaleSchedule sch;
  sch.regime = regime;
  sch.d = d;
  ScheduleEntry e{0, r0, gamma0, alpha0};
  for (int k = 0; k < rungs; ++k) {
    e.k = k;
    sch.entries.push_back(e);
    ScheduleEntry next = e;
    if (regime == Regime::wegner) {
      const WegnerSchedule w = schedule_wegner(e.r, d, variant);
      next.r = w.R1;
      next.gamma = e.gamma * std::max(0.0, w.gamma_factor);
      next.alpha = w.alpha;
    } else {
      next.r = std::pow(e.r, 3.0 * d + 8.0);
      next.gamma = e.gamma * (1.0 - 2.0 / e.r);
      next.alpha = cartan_alpha_tilde(e.r, d, e.gamma, c);
    }
    if (!std::isfinite(next.r) || next.r <= e.r) break;
    e = next;
  }
  return sch;
}

std::vector<RungResult> run_ladder(const Model& model, const ScaleSchedule& schedule, double E,
                                   long trials, std::uint64_t seed, int jobs,
                                   std::size_t capacity) {
  std::vector<RungResult> out;
  for (const auto& e : schedule.entries) {
    RungResult rr;
    rr.entry = e;
    const double sites = std::pow(2.0 * e.r + 1.0, model.dim());
    if (!(sites <= static_cast<double>(capacity)) || e.gamma <= 0.0) {
      rr.skipped = true;
      out.push_back(rr);
      continue;
    }
    rr.estimate = estimate_acceptability(model, static_cast<int>(e.r), E,
                                         {e.gamma, 0.5, 3}, e.alpha, trials,
                                         derive_seed(seed, {static_cast<std::uint64_t>(e.k)}),
                                         jobs);
    rr.verdict = rr.estimate.p_hat <= rr.estimate.target + 3.0 * rr.estimate.std_error;
    out.push_back(rr);
  }
  return out;
}

MarkovCheck markov_wegner_check(const Model& model, int s, double E, double eps, long trials,
                                std::uint64_t seed, int jobs) {
  require(trials >= 1 && eps > 0.0, ErrorCode::domain, "need trials >= 1 and eps > 0");
  const Box box = centered_box(model.dim(), s);
  auto region = std::make_shared<const Region>(Region::from_box(box));
  std::vector<double> large(static_cast<std::size_t>(trials)), count(large.size());
  parallel_for(large.size(), jobs, [&](std::size_t t) {
    const DisorderField field = model.sample_field(box, derive_seed(seed, {t}));
    const BoxOperator H = model.hamiltonian(region, field);
    const Eigen::VectorXd& ev = H.spectrum().values;
    double n = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) n += std::abs(ev(i) - E) <= eps ? 1.0 : 0.0;
    count[t] = n;
    large[t] = distance_to_spectrum(H, E) < eps ? 1.0 : 0.0;
  });
  MarkovCheck mc;
  mc.trials = trials;
  double sum = 0.0, sum2 = 0.0, fl = 0.0;
  for (std::size_t t = 0; t < large.size(); ++t) {
    fl += large[t];
    sum += count[t];
    sum2 += count[t] * count[t];
  }
  const double n = static_cast<double>(trials);
  mc.freq_large_resolvent = fl / n;
  mc.mean_count = sum / n;
  const double var = std::max(0.0, sum2 / n - mc.mean_count * mc.mean_count);
  mc.std_error = std::sqrt(var / n);
  mc.holds = mc.freq_large_resolvent <= mc.mean_count + 3.0 * mc.std_error;
  return mc;
}

}  // namespace loclab
