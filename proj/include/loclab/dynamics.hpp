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


#ifndef LOCLAB_DYNAMICS_HPP
#define LOCLAB_DYNAMICS_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "loclab/operator.hpp"

namespace loclab {

/// psi(t) = exp(-itH) e_0 on the region of a real operator containing 0.
class Evolution {
 public:
  explicit Evolution(const BoxOperator& op);

  const BoxOperator& op() const { return op_; }
  /// |phi^a(0)|^2 over the eigenbasis.
  const Eigen::VectorXd& weights() const { return weights_; }
  Eigen::VectorXcd state(double t) const;

 private:
  BoxOperator op_;
  Eigen::VectorXd coeff_;
  Eigen::VectorXd weights_;
};

Eigen::VectorXcd evolve(const BoxOperator& op, double t);

/// (1 + |n|_2^2)^p for every site of the region.
Eigen::VectorXd moment_weights(const Region& region, double p);

struct MomentResult {
  double p = 0.0;
  std::vector<double> t;
  std::vector<double> values;
  double X_hat = 0.0;
  /// Some t exceeds R/4, R the inner radius of the region around 0.
  bool horizon_exceeded = false;
  double max_norm_defect = 0.0;
};

MomentResult moment(const BoxOperator& op, double p, std::span<const double> t_grid);
MomentResult moment(const Evolution& ev, double p, std::span<const double> t_grid);

struct MomentDominance {
  double X_hat = 0.0;
  /// sum_n w(n) (sum_a |phi^a(0)| |phi^a(n)|)^2, an upper bound for every t.
  double triangle_bound = 0.0;
  bool holds = false;
  /// sum_a |phi^a(0)|^2 sum_n w(n) |phi^a(n)|^2. Reported only.
  double diagonal_form = 0.0;
  bool diagonal_form_holds = false;
};

MomentDominance moment_dominance(const Evolution& ev, double p, std::span<const double> t_grid);

struct DecayFit {
  std::vector<int> shell;
  std::vector<double> max_amp;
  double rate_exp = 0.0;
  double r2_exp = 0.0;
  double rate_sqrt = 0.0;
  double r2_sqrt = 0.0;
  bool degenerate = false;
};

/// Fits log max_{|n - center| = k} |psi(n)| against -k and -sqrt(k).
/// Shells below floor times the peak amplitude are dropped.
DecayFit decay_profile(const Region& region, const Eigen::VectorXd& psi, const Site& center,
                       double floor = 1e-12);

/// Median exponential rate over the middle half of the spectrum, each
/// eigenvector centred at its maximum.
double median_decay_rate(const BoxOperator& op);

struct MassClass {
  int s = 0;
  std::vector<int> members;
  double mass = 0.0;
  /// (1 + s)^{4d}, the r_s^{2d} shape with r_s ~ s^2.
  double shape_bound = 0.0;
  bool within_shape = false;
};

struct MassClassReport {
  std::vector<MassClass> classes;
  double completeness = 0.0;
  int zero_weight = 0;
  int beyond_max_s = 0;
};

/// Partition of the eigen-indices by 2^{-(s+1)} < |phi^a(0)|^2 <= 2^{-s}.
MassClassReport mass_classes(const BoxOperator& op, int max_s);

struct GeneralizedEigenVerdict {
  int index = -1;
  double eigenvalue = 0.0;
  double mass = 0.0;
  bool holds = false;
};

/// Eigenpair nearest E and its mass on Lambda_{R_inner}(0).
GeneralizedEigenVerdict generalized_eigen_scan(const BoxOperator& op, double E, double eps,
                                               int R_inner);

}  // namespace loclab

#endif
