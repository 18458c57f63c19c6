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

#ifndef LOCLAB_GREEN_HPP
#define LOCLAB_GREEN_HPP

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "loclab/lattice.hpp"
#include "loclab/operator.hpp"

namespace loclab {

struct SuitabilityParams {
  double gamma = 1.0;
  double tau = 0.5;
  int p = 3;
};

void validate(const SuitabilityParams& params);

struct SuitabilityReport {
  bool pass = false;
  bool singular = false;
  double resolvent_norm = std::numeric_limits<double>::infinity();
  double norm_bound = 0.0;
  Site worst_x;
  Site worst_y;
  /// max |G(x,y)| / allowed bound over separated pairs.
  double worst_ratio = 0.0;
  /// Some entry needed by condition (ii) lies below the round-off floor of
  /// the dense Green's matrix, so the condition could not be decided.
  bool unresolved = false;
};

/// (gamma, tau, p)-suitability of the box Lambda_r(n) carried by op.
SuitabilityReport check_suitable(const BoxOperator& op, const Box& box, double E,
                                 const SuitabilityParams& params);

enum class MarginMode { energy, operator_norm };

/// Perturbation size that keeps a suitable box (p-1)-suitable. Throws
/// precondition naming "asrgamp" when its inequalities fail.
double perturbation_margin(const SuitabilityParams& params, int r, int d, MarginMode mode);

struct ResolventIdentityCheck {
  bool skipped = false;
  std::string note;
  double residual = 0.0;
  double scale = 1.0;
  bool pass = true;
};

/// Residual of G^R(x,y) + sum_{(u,v)} G^r(x,u) G^R(v,y) over boundary
/// pairs of the small region inside the big one.
ResolventIdentityCheck geometric_resolvent_check(const BoxOperator& big,
                                                 const BoxOperator& small, double E,
                                                 const Site& x, const Site& y);

/// A bad region Lambda_{s}(m) with its enclosing Lambda_{t}(m).
struct Defect {
  Site center;
  int s = 0;
  int t = 0;
};

/// Outcome of checking one theorem on one instance. Hypothesis failures
/// are listed by name; a counterexample is hypotheses holding with the
/// conclusion failing.
struct HarnessOutcome {
  bool hypotheses_hold = true;
  std::vector<std::string> violated;
  double gamma_hat = 0.0;
  SuitabilityReport report;
  double measured = 0.0;
  double bound = 0.0;
  bool conclusion_holds = false;
  /// The conclusion depends on Green's entries below round-off.
  bool undetermined = false;
  bool counterexample() const { return hypotheses_hold && !conclusion_holds && !undetermined; }
};

double gamma_hat_subcubes(double gamma, int r, int R, double tau, int d);
double gamma_hat_defects(double gamma, int r, int R, double tau, int d, double sum_t);

/// big must be the operator on Lambda_R(0).
HarnessOutcome decay_from_subcubes(const BoxOperator& big, int R, double E, int r,
                                   const SuitabilityParams& params);
HarnessOutcome decay_with_defects(const BoxOperator& big, int R, double E, int r,
                                  const SuitabilityParams& params,
                                  std::span<const Defect> defects, double a);
/// op lives on the region Xi.
HarnessOutcome resolvent_bound_from_suitability(const BoxOperator& op, double E, int r,
                                                const SuitabilityParams& params);
HarnessOutcome resolvent_bound_with_defects(const BoxOperator& big, int R, double E, int r,
                                            const SuitabilityParams& params,
                                            std::span<const Defect> defects);

/// Every Lambda_r(n) inside allowed (a subset of op's region) is
/// (gamma, tau, p)-suitable. Returns the first failing center if any.
std::optional<Site> first_unsuitable_subcube(const BoxOperator& op, const Region& allowed,
                                             int r, double E,
                                             const SuitabilityParams& params);

}  // namespace loclab

#endif
