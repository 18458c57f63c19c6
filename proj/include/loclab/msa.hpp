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

#ifndef LOCLAB_MSA_HPP
#define LOCLAB_MSA_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loclab/green.hpp"
#include "loclab/model.hpp"

namespace loclab {

/// ceil((1 + 4 gamma / c) r + log(lambda) / c). Scales can exceed the
/// range of integers, so they are carried as doubles.
double rbar(double r, double gamma, double c, double lambda);
/// 2 + 4 gamma / c.
double rbar_T0(double gamma, double c);
/// max(rbar(t), 3t, t + 3r).
double rhat(double t, double r, double gamma, double c, double lambda);

enum class AlphaVariant { thm, sec8 };
AlphaVariant parse_alpha_variant(const std::string& name);

struct WegnerSchedule {
  double R0 = 0.0;
  double R1 = 0.0;
  double alpha = 0.0;
  double gamma_factor = 0.0;  // gamma~ >= gamma * gamma_factor
};

WegnerSchedule schedule_wegner(double r, int d, AlphaVariant variant = AlphaVariant::thm);

/// floor(sqrt(log r / (2d log max(4, 2 + 4 gamma / c)))), possibly zero.
int cartan_alpha_tilde(double r, int d, double gamma, double c);

struct CartanSchedule {
  double R0 = 0.0;
  double R1 = 0.0;
  int alpha_tilde = 0;
  double gamma_factor = 0.0;  // 1 - 2/r
  int K = 0;
};

/// Throws r_too_small when K = 0.
CartanSchedule schedule_cartan(double r, int d, double alpha, double gamma, double c);

/// gamma_1 = 2 (1 - 2/r_start), gamma_{k+1} = gamma_k (1 - 2/R_k) with
/// R_k = r_start^{(3d+8)^k}. Throws r_too_small if a value drops below 1.
std::vector<double> gamma_ladder(double r_start, int d, int steps);

struct ScaleLadder13 {
  int Q = 0;
  int K = 0;
  std::vector<std::vector<double>> s;  // s[q][k], zero-based
  std::vector<std::vector<double>> t;
  std::vector<double> r_hat;  // s_1^q
  std::vector<double> s_hat;  // t_K^q
  double t_last = 0.0;        // t_K^Q
  bool t_last_within_r3 = false;
  long count = 0;             // Q K
  bool count_within_bound = false;  // Q K <= 2 d K^2
};

/// Throws precondition when r < max(4, 2 + 4 gamma / c)^{2 d K^2}.
ScaleLadder13 scale_ladder_13(double r, int K, int d, double gamma, double c, double lambda);

struct ConstantCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

std::vector<ConstantCheck> check_constants_14(double r, int d, int K, double gamma, double c,
                                              double lambda, double rho_sup, double R,
                                              double t_inf);

struct AcceptabilityEstimate {
  int r = 0;
  double E = 0.0;
  long trials = 0;
  long failures = 0;
  double p_hat = 0.0;
  double std_error = 0.0;
  double target = 0.0;  // r^{-alpha}
  bool meets_target_3sigma() const { return p_hat + 3.0 * std_error <= target; }
};

/// Monte Carlo of the probability that Lambda_r(0) is not suitable.
AcceptabilityEstimate estimate_acceptability(const Model& model, int r, double E,
                                             const SuitabilityParams& params, double alpha,
                                             long trials, std::uint64_t seed, int jobs = 1);

struct InitialScaleOptions {
  double lambda_start = 1.0;
  int max_doublings = 16;
  long trials = 400;
  std::uint64_t seed = 1;
  SuitabilityParams params{1.0, 0.5, 3};
  /// Skip the eigensolve when the gap criterion plus Combes-Thomas
  /// already certifies suitability.
  bool gap_prefilter = true;
  int jobs = 1;
};

struct InitialScaleRow {
  double lambda = 0.0;
  AcceptabilityEstimate estimate;
  long prefiltered = 0;
};

struct InitialScaleResult {
  bool found = false;
  double lambda0 = 0.0;
  std::vector<InitialScaleRow> rows;
};

InitialScaleResult initial_scale_search(const ModelConfig& base, int r, double alpha,
                                        std::span<const double> E_grid,
                                        const InitialScaleOptions& options = {});

/// (3R)^d F ((2d + delta) / lambda)^alpha.
double gap_probability_bound(int R, int d, double F, double alpha, double delta, double lambda);

/// True when min_x |V(x) - E| > 2d + delta, r >= 1/delta^2 + 10 and the
/// Combes-Thomas rate reaches gamma, so the box is certified suitable.
bool gap_certifies(const std::vector<double>& potential, int d, int r, double E,
                   const SuitabilityParams& params);

struct BadCubeReport {
  std::vector<Site> centers;
  long checked = 0;
  long unsuitable = 0;
  bool within_K = true;
};

/// Greedy maximal set of centers, pairwise |m_i - m_j|_inf >= 2 rbar + 1,
/// of unsuitable Lambda_r(m) inside Lambda_R(0). big lives on Lambda_R(0).
BadCubeReport find_bad_cubes(const BoxOperator& big, int R, int r, double E,
                             const SuitabilityParams& params, long rbar_value, int K);

struct ResampleOutcome {
  bool success = false;
  int level = 0;  // 1-based
  int resamples = 0;
  std::optional<DisorderField> field;
};

/// For k = 1..K, resamples omega on Lambda_{s_k}(n^{t_{k-1}}_R) (t_0 = 0)
/// up to `attempts` times until Lambda^R_{t_k}(n) is suitable.
ResampleOutcome resample_search(const Model& model, const DisorderField& field, const Site& n,
                                int R, std::span<const std::pair<int, int>> scales, double E,
                                const SuitabilityParams& params, int attempts,
                                std::uint64_t seed);

enum class Regime { wegner, cartan };

struct ScheduleEntry {
  int k = 0;
  double r = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
};

struct ScaleSchedule {
  Regime regime = Regime::cartan;
  int d = 1;
  std::vector<ScheduleEntry> entries;
};

/// Wegner regime: r_{k+1} = R1(r_k), gamma by the 1 - 200/r^{1/d} factor
/// (floored at 0), alpha by the variant. Cartan regime: r_{k+1} =
/// r_k^{3d+8}, gamma_{k+1} = gamma_k (1 - 2/r_k), alpha_{k+1} =
/// alpha_tilde(r_k).
ScaleSchedule build_schedule(Regime regime, int d, double r0, double gamma0, double alpha0,
                             double c, int rungs, AlphaVariant variant = AlphaVariant::thm);

struct RungResult {
  ScheduleEntry entry;
  bool skipped = false;
  AcceptabilityEstimate estimate;
  bool verdict = false;  // p_hat <= target + 3 sigma
};

std::vector<RungResult> run_ladder(const Model& model, const ScaleSchedule& schedule, double E,
                                   long trials, std::uint64_t seed, int jobs = 1,
                                   std::size_t capacity = kSiteCapacity);

struct MarkovCheck {
  long trials = 0;
  double freq_large_resolvent = 0.0;  // ||(H - E)^{-1}|| > 1/eps
  double mean_count = 0.0;            // E tr P_[E-eps, E+eps]
  double std_error = 0.0;             // of mean_count
  bool holds = false;
};

MarkovCheck markov_wegner_check(const Model& model, int s, double E, double eps, long trials,
                                std::uint64_t seed, int jobs = 1);

}  // namespace loclab

#endif
