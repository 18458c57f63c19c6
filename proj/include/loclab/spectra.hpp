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


#ifndef LOCLAB_SPECTRA_HPP
#define LOCLAB_SPECTRA_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "loclab/model.hpp"

namespace loclab {

/// Ascending eigenvalues of a real box operator, without eigenvectors.
Eigen::VectorXd eigenvalues(const BoxOperator& op);

struct IDSTable {
  int R = 0;
  long realizations = 0;
  std::uint64_t seed = 0;
  std::vector<double> E;
  std::vector<double> N_hat;
  std::vector<double> std_error;
};

/// Averaged eigenvalue counting function of H on Lambda_R(0) per site.
IDSTable ids(const Model& model, int R, std::span<const double> E_grid, long realizations,
             std::uint64_t seed, int jobs = 1);

/// (1/pi) arccos(-E/2), clamped to [0, 1] outside (-2, 2).
double free_ids_1d(double E);

struct WegnerEstimate {
  double eps = 0.0;
  double ratio = 0.0;
  double std_error = 0.0;
  long realizations = 0;
};

/// E[#{eigenvalues in [E - eps, E + eps]}] / #Lambda_R(0).
WegnerEstimate wegner_ratio(const Model& model, int R, double E, double eps, long realizations,
                            std::uint64_t seed, int jobs = 1);

/// One set of realizations shared across all eps values.
std::vector<WegnerEstimate> wegner_sweep(const Model& model, int R, double E,
                                         std::span<const double> eps, long realizations,
                                         std::uint64_t seed, int jobs = 1);

struct WegnerEnvelope {
  double beta_hat = 0.0;
  double intercept = 0.0;
  int points = 0;
};

/// Regression of log(ratio) on log log(1/eps); beta_hat is minus the
/// slope. Rows with eps >= 1/e or zero ratio are ignored.
WegnerEnvelope fit_wegner_envelope(std::span<const WegnerEstimate> rows);

struct MsaToWegner {
  double r = 0.0;
  double s = 0.0;
  double bound = 0.0;
};

/// r = floor((1/3) log(1/eps)^{1/tau}), s = floor(1 / (3 psi(r)^{1/(d+1)})),
/// bound = 7 psi(r)^{1/(d+1)}.
MsaToWegner msa_to_wegner(const std::function<double(double)>& psi, int d, double tau,
                          double eps);

struct SpectrumPathResult {
  int steps = 0;
  double lipschitz_step = 0.0;
  double level_spacing = 0.0;
  double tolerance = 0.0;
  /// Largest |lambda_k(t_i) - lambda_k(t_{i+1})| - ||V(t_i) - V(t_{i+1})||.
  double max_weyl_excess = 0.0;
  bool weyl_ok = false;
  double max_union_gap = 0.0;
  bool union_ok = false;
  /// Spectrum of H(0) against [-2d, 2d] up to the level spacing.
  bool endpoint_ok = false;
};

/// Spectra of H along the path omega -> t omega, t in [0, 1] on a uniform
/// grid with steps intervals.
SpectrumPathResult spectrum_path_union(const Model& model, int R, int steps, std::uint64_t seed);

}  // namespace loclab

#endif
