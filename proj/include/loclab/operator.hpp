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

#ifndef LOCLAB_OPERATOR_HPP
#define LOCLAB_OPERATOR_HPP

#include <complex>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "loclab/lattice.hpp"

namespace loclab {

class Potential;
class DisorderField;

inline constexpr std::size_t kSiteCapacity = 4000;
inline constexpr double kDefaultCombesThomasC0 = 0.25;

/// Eigen-decomposition of a box operator. For the real case the complex
/// members are empty and vice versa.
struct SpectralData {
  bool real = true;
  Eigen::VectorXd values;  // ascending (real case)
  Eigen::MatrixXd vectors;
  Eigen::VectorXcd cvalues;
  Eigen::MatrixXcd cvectors;
  double residual = 0.0;
  double orthogonality_defect = 0.0;
};

/// Dirichlet restriction of Laplacian plus diagonal potential to a finite
/// region: entry 1 for |x - y|_1 = 1, diagonal V(x).
class BoxOperator {
 public:
  BoxOperator(std::shared_ptr<const Region> region, std::vector<double> diagonal);
  BoxOperator(std::shared_ptr<const Region> region,
              std::vector<std::complex<double>> diagonal);

  const Region& region() const { return *region_; }
  std::shared_ptr<const Region> region_ptr() const { return region_; }
  std::size_t size() const { return region_->size(); }
  bool is_real() const { return real_; }
  const Eigen::MatrixXd& matrix() const { return rmat_; }
  const Eigen::MatrixXcd& complex_matrix() const { return cmat_; }
  Eigen::MatrixXcd as_complex() const;
  const std::vector<double>& diagonal() const { return rdiag_; }
  const std::vector<std::complex<double>>& complex_diagonal() const { return cdiag_; }

  /// Operator restricted to a subregion.
  BoxOperator restrict_to(const Region& sub) const;
  BoxOperator restrict_to(const Box& sub) const { return restrict_to(Region::from_box(sub)); }
  /// Same region, diagonal shifted by delta (real case).
  BoxOperator with_diagonal(std::vector<double> diagonal) const;

  /// Operator 2-norm.
  double norm() const;
  /// ||H H* - H* H|| <= tol ||H||^2.
  bool is_normal(double tol = 1e-10) const;

  /// Computed once, shared by copies. Throws not_normal for non-normal
  /// complex operators.
  const SpectralData& spectrum() const;

 private:
  struct Cache;
  std::shared_ptr<const Region> region_;
  bool real_ = true;
  std::vector<double> rdiag_;
  std::vector<std::complex<double>> cdiag_;
  Eigen::MatrixXd rmat_;
  Eigen::MatrixXcd cmat_;
  std::shared_ptr<Cache> cache_;
};

BoxOperator assemble(std::shared_ptr<const Region> region, const Potential& potential,
                     const DisorderField& field);
BoxOperator assemble(const Box& box, const Potential& potential, const DisorderField& field);

/// dist(E, sigma(H)). Real-symmetric and normal operators only.
double distance_to_spectrum(const BoxOperator& op, double E);

/// ||(H - E)^{-1}||. Throws singular_energy when E lies in the spectrum
/// to within 1e-12 max(1, ||H||). Non-normal complex operators use the
/// smallest singular value of H - E.
double resolvent_norm(const BoxOperator& op, double E);

/// Full Green's matrix (H - E)^{-1}, real case.
Eigen::MatrixXd green_matrix(const BoxOperator& op, double E);
Eigen::MatrixXcd green_matrix_complex(const BoxOperator& op, double E);

/// log |G(x, y)| for all pairs. Contiguous one-dimensional chains use
/// continued-fraction pivots, which keep relative accuracy far below
/// machine epsilon times ||G||. Other regions take logs of the dense
/// matrix; entries below exp(log_floor) are then round-off.
struct LogGreen {
  Eigen::MatrixXd log_abs;
  double log_floor = -std::numeric_limits<double>::infinity();
  bool chain = false;
};
LogGreen log_abs_green(const BoxOperator& op, double E);

std::complex<double> green_entry(const BoxOperator& op, double E, const Site& x, const Site& y);

/// Decay rate c0 log(1 + delta) used for boxes at distance delta from E.
double combes_thomas_rate(double delta, double c0 = kDefaultCombesThomasC0);

}  // namespace loclab

#endif
