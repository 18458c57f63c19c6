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

#include "loclab/green.hpp"

#include <cmath>

#include "loclab/error.hpp"

namespace loclab {

namespace {

constexpr double kLog2 = 0.6931471805599453;

double safe_resolvent_norm(const BoxOperator& op, double E) {
  try {
    return resolvent_norm(op, E);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::singular_energy) return std::numeric_limits<double>::infinity();
    throw;
  }
}

void check_centered(const BoxOperator& big, int R) {
  const int d = big.region().dim();
  require(big.size() == static_cast<std::size_t>(box_cardinality(R, d)) &&
              big.region().contains(centered_box(d, R)),
          ErrorCode::domain, "operator must live on Lambda_R(0)");
}

Region remove_boxes(const Region& region, std::span<const Defect> defects, int extra) {
  std::vector<Site> keep;
  for (const auto& x : region.sites()) {
    bool removed = false;
    for (const auto& df : defects) removed = removed || dist_inf(x, df.center) <= df.s + extra;
    if (!removed) keep.push_back(x);
  }
  return Region(std::move(keep));
}

void fail(HarnessOutcome& out, const std::string& name) {
  out.hypotheses_hold = false;
  out.violated.push_back(name);
}

}  // namespace

void validate(const SuitabilityParams& params) {
  require(params.gamma > 0.0, ErrorCode::config, "gamma: must be positive");
  require(params.tau > 0.0 && params.tau < 1.0, ErrorCode::config, "tau: must lie in (0, 1)");
  require(params.p >= 0, ErrorCode::config, "p: must be non-negative");
}

SuitabilityReport check_suitable(const BoxOperator& op, const Box& box, double E,
                                 const SuitabilityParams& params) {
  const int r = box.radius;
  require(r >= 1, ErrorCode::domain, "suitability needs box radius >= 1");
  require(op.size() == box.size() && op.region().contains(box), ErrorCode::domain,
          "operator does not live on the box");
  SuitabilityReport rep;
  rep.worst_x = rep.worst_y = box.center;
  rep.norm_bound = std::exp(std::pow(r, params.tau) - params.p * kLog2);
  rep.resolvent_norm = safe_resolvent_norm(op, E);
  if (!std::isfinite(rep.resolvent_norm)) {
    rep.singular = true;
    rep.worst_ratio = std::numeric_limits<double>::infinity();
    return rep;
  }
  const int d = box.dim();
  const double log_prefactor = params.p * kLog2 + std::log(double(inner_boundary_count(r, d)));
  double worst = -std::numeric_limits<double>::infinity();
  const LogGreen lg = log_abs_green(op, E);
  const Region& reg = op.region();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    for (std::size_t j = i + 1; j < reg.size(); ++j) {
      const int dd = dist_inf(reg[i], reg[j]);
      if (10 * dd < r) continue;
      const double g = lg.log_abs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      double lr = g + log_prefactor + params.gamma * dd;
      if (!lg.chain) {
        // The true entry is at most the computed one plus the floor.
        const double upper = std::max(g, lg.log_floor) + kLog2;
        lr = upper + log_prefactor + params.gamma * dd;
        if (lr > 0.0 && g < lg.log_floor + 2.0 * kLog2) {
          rep.unresolved = true;
          continue;
        }
      }
      if (lr > worst) {
        worst = lr;
        rep.worst_x = reg[i];
        rep.worst_y = reg[j];
      }
    }
  }
  rep.worst_ratio = std::exp(worst);
  rep.pass = rep.resolvent_norm <= rep.norm_bound && rep.worst_ratio <= 1.0 && !rep.unresolved;
  return rep;
}

double perturbation_margin(const SuitabilityParams& params, int r, int d, MarginMode mode) {
  validate(params);
  require(params.p >= 1, ErrorCode::precondition, "perturbation margin needs p >= 1");
  require(r >= 1, ErrorCode::precondition, "perturbation margin needs r >= 1");
  const double lhs = d * std::pow(2.0, params.p + 2) * std::pow(3.0 * r, d - 1);
  require(lhs <= std::exp(params.gamma * r), ErrorCode::precondition,
          "asrgamp: d 2^{p+2} (3r)^{d-1} <= e^{gamma r} fails");
  require(params.gamma * std::pow(r, 1.0 - params.tau) >= 1.0, ErrorCode::precondition,
          "asrgamp: gamma r^{1-tau} >= 1 fails");
  if (mode == MarginMode::energy) return std::exp(-4.0 * params.gamma * r);
  return std::exp(-(params.p + 1) * kLog2 - params.gamma * r - 2.0 * std::pow(r, params.tau)) /
         static_cast<double>(inner_boundary_count(r, d));
}

ResolventIdentityCheck geometric_resolvent_check(const BoxOperator& big,
                                                 const BoxOperator& small, double E,
                                                 const Site& x, const Site& y) {
  ResolventIdentityCheck out;
  require(big.region().contains(small.region()), ErrorCode::containment,
          "small region not inside big region");
  if (small.size() == big.size()) {
    out.skipped = true;
    out.note = "regions coincide; boundary sum is empty";
    return out;
  }
  require(small.region().contains(x), ErrorCode::containment, "x must lie in the small region");
  require(big.region().contains(y) && !small.region().contains(y), ErrorCode::containment,
          "y must lie in the big region outside the small one");
  Eigen::MatrixXcd GR, Gr;
  try {
    GR = green_matrix_complex(big, E);
    Gr = green_matrix_complex(small, E);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular_energy) throw;
    out.skipped = true;
    out.pass = false;
    out.note = "singular energy";
    return out;
  }
  const auto bx = static_cast<Eigen::Index>(big.region().index(x));
  const auto by = static_cast<Eigen::Index>(big.region().index(y));
  const auto sx = static_cast<Eigen::Index>(small.region().index(x));
  std::complex<double> acc = GR(bx, by);
  for (const auto& bp : boundary_in(small.region(), big.region())) {
    const auto su = static_cast<Eigen::Index>(small.region().index(bp.inner));
    const auto bv = static_cast<Eigen::Index>(big.region().index(bp.outer));
    acc += Gr(sx, su) * GR(bv, by);
  }
  out.residual = std::abs(acc);
  out.scale = std::max(1.0, std::abs(GR(bx, by)));
  out.pass = out.residual <= 1e-9 * out.scale;
  return out;
}

std::optional<Site> first_unsuitable_subcube(const BoxOperator& op, const Region& allowed,
                                             int r, double E,
                                             const SuitabilityParams& params) {
  for (const auto& n : allowed.sites()) {
    const Box cube{n, r};
    if (!allowed.contains(cube)) continue;
    if (!check_suitable(op.restrict_to(cube), cube, E, params).pass) return n;
  }
  return std::nullopt;
}

double gamma_hat_subcubes(double gamma, int r, int R, double tau, int d) {
  return gamma_hat_defects(gamma, r, R, tau, d, 0.0);
}

double gamma_hat_defects(double gamma, int r, int R, double tau, int d, double sum_t) {
  return gamma * (1.0 - 1.0 / (r + 1.0) -
                  (10.0 / R) * (3.0 * sum_t + gamma * r + std::pow(R, tau) + d * std::log(3.0)));
}

HarnessOutcome decay_from_subcubes(const BoxOperator& big, int R, double E, int r,
                                   const SuitabilityParams& params) {
  return decay_with_defects(big, R, E, r, params, {}, 1.0);
}

HarnessOutcome decay_with_defects(const BoxOperator& big, int R, double E, int r,
                                  const SuitabilityParams& params,
                                  std::span<const Defect> defects, double a) {
  validate(params);
  check_centered(big, R);
  require(r >= 1 && r <= R, ErrorCode::domain, "need 1 <= r <= R");
  const int d = big.region().dim();
  const Box whole = centered_box(d, R);
  HarnessOutcome out;

  double sum_t = 0.0;
  if (!defects.empty() && a < 1.0) fail(out, "a >= 1");
  for (const auto& df : defects) {
    sum_t += df.t;
    if (df.s + a * r > df.t) fail(out, "s_k + a r <= t_k");
    if (!whole.contains(Box{df.center, df.t})) fail(out, "(i) containment");
  }
  for (std::size_t k = 0; k < defects.size(); ++k)
    for (std::size_t l = k + 1; l < defects.size(); ++l) {
      const Box bk{defects[k].center, static_cast<int>(std::floor(defects[k].t + a * r))};
      const Box bl{defects[l].center, static_cast<int>(std::floor(defects[l].t + a * r))};
      if (bk.intersects(bl)) fail(out, "(ii) disjointness");
    }
  const SuitabilityParams p0{params.gamma, params.tau, 0};
  if (first_unsuitable_subcube(big, remove_boxes(big.region(), defects, 0), r, E, p0))
    fail(out, defects.empty() ? "subcube suitability" : "(iii) subcube suitability");
  for (const auto& df : defects) {
    const Box bt{df.center, df.t};
    if (!whole.contains(bt)) continue;
    if (safe_resolvent_norm(big.restrict_to(bt), E) > std::exp(a * params.gamma * r))
      fail(out, "(iv) defect resolvent");
  }
  const double whole_bound = std::exp(std::pow(R, params.tau) - params.p * kLog2);
  if (safe_resolvent_norm(big, E) > whole_bound)
    fail(out, defects.empty() ? "whole-cube resolvent" : "(v) whole-cube resolvent");

  out.gamma_hat = gamma_hat_defects(params.gamma, r, R, params.tau, d, sum_t);
  out.report = check_suitable(big, whole, E, {out.gamma_hat, params.tau, params.p});
  out.measured = out.report.worst_ratio;
  out.bound = 1.0;
  out.conclusion_holds = out.report.pass;
  out.undetermined = out.report.unresolved;
  return out;
}

HarnessOutcome resolvent_bound_from_suitability(const BoxOperator& op, double E, int r,
                                                const SuitabilityParams& params) {
  validate(params);
  require(r >= 1, ErrorCode::domain, "need r >= 1");
  const int d = op.region().dim();
  HarnessOutcome out;
  const double rt = std::pow(r, params.tau);
  if (!is_r_acceptable(op.region(), r).acceptable) fail(out, "r-acceptable");
  if (first_unsuitable_subcube(op, op.region(), r, E, {params.gamma, params.tau, 0}))
    fail(out, "subcube suitability");
  if (4.0 * inner_boundary_count(r, d) > std::exp(rt)) fail(out, "4 #boundary <= e^{r^tau}");
  if (params.gamma * r < 40.0) fail(out, "40 <= gamma r");
  if (rt < kLog2) fail(out, "r^tau >= log 2");
  out.measured = safe_resolvent_norm(op, E);
  out.bound = std::exp(3.0 * rt);
  out.conclusion_holds = out.measured <= out.bound;
  return out;
}

HarnessOutcome resolvent_bound_with_defects(const BoxOperator& big, int R, double E, int r,
                                            const SuitabilityParams& params,
                                            std::span<const Defect> defects) {
  if (defects.empty()) return resolvent_bound_from_suitability(big, E, r, params);
  validate(params);
  check_centered(big, R);
  require(r >= 1 && r <= R, ErrorCode::domain, "need 1 <= r <= R");
  const int d = big.region().dim();
  const Box whole = centered_box(d, R);
  HarnessOutcome out;
  int t_inf = 0;
  for (const auto& df : defects) {
    t_inf = std::max(t_inf, df.t);
    if (df.t < df.s + r) fail(out, "t_q >= s_q + r");
    if (!whole.contains(Box{df.center, df.t})) fail(out, "(i) containment");
  }
  if (!is_r_acceptable(remove_boxes(big.region(), defects, r), r).acceptable)
    fail(out, "(ii) r-acceptable complement");
  for (std::size_t k = 0; k < defects.size(); ++k)
    for (std::size_t l = k + 1; l < defects.size(); ++l)
      if (Box{defects[k].center, defects[k].t + 2 * r + 1}.intersects(
              Box{defects[l].center, defects[l].t + 2 * r + 1}))
        fail(out, "(iii) disjointness");
  if (first_unsuitable_subcube(big, remove_boxes(big.region(), defects, 0), r, E,
                               {params.gamma, params.tau, 0}))
    fail(out, "(iv) subcube suitability");
  for (const auto& df : defects) {
    const Box bt{df.center, df.t};
    if (!whole.contains(bt)) continue;
    if (safe_resolvent_norm(big.restrict_to(bt), E) > std::exp(std::pow(df.t, params.tau)))
      fail(out, "(v) defect resolvent");
  }
  const double tt = std::pow(t_inf, params.tau);
  if (4.0 * static_cast<double>(big.size()) > std::exp(tt)) fail(out, "(vi) 4 #Lambda_R <= e^{t^tau}");
  if (params.gamma * r < 10.0 * tt + 10.0 * std::log(2.0 * inner_boundary_count(r, d)))
    fail(out, "(vi) gamma r lower bound");
  out.measured = safe_resolvent_norm(big, E);
  out.bound = std::exp(5.0 * tt);
  out.conclusion_holds = out.measured <= out.bound;
  return out;
}

}  // namespace loclab
