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

#ifndef LOCLAB_CARTAN_HPP
#define LOCLAB_CARTAN_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "loclab/lattice.hpp"

namespace loclab {

class Model;

/// 30 e^3 exp(-s / log(1/eps)).
double cartan_bound_1d(double eps, double s);
/// 60 e^3 n^{3/2} 2^n exp(-s / log(1/eps)).
double cartan_bound_nd(int n, double eps, double s);

using ScalarFunction = std::function<std::complex<double>(std::span<const std::complex<double>>)>;

/// f analytic on the polydisc of radius 2e with sup |f| <= 1 and
/// |f(0)| >= eps.
struct AnalyticScalar {
  int n = 1;
  ScalarFunction f;
  double eps = 0.0;
};

/// Checks |f(0)| >= eps and samples the distinguished boundary
/// |z_i| = 2e for the sup bound.
AnalyticScalar make_analytic_scalar(int n, ScalarFunction f, double eps);

struct McMeasure {
  long samples = 0;
  long hits = 0;
  double measured = 0.0;
  double std_error = 0.0;
};

/// Lebesgue measure of { x in [-1,1]^n : |f(x)| <= e^{-s} }.
McMeasure sublevel_measure(const AnalyticScalar& f, double s, long samples, std::uint64_t seed,
                           int jobs = 1);

struct DetBounds {
  std::complex<double> det;
  double norm = 0.0;
  double inverse_norm = 0.0;
  bool singular = false;
  bool upper = false;     // |det| <= ||A||^N
  bool lower = false;     // |det| >= ||A^{-1}||^{-N}
  bool inverse = false;   // ||A^{-1}|| <= N ||A||^{N-1} / |det|
};

DetBounds det_bounds(const Eigen::MatrixXcd& A);

struct SchurResult {
  Eigen::MatrixXcd S;
  Eigen::MatrixXcd inverse;
  double residual = 0.0;  // relative to ||M^{-1}||
  double schur_inverse_norm = 0.0;
  double full_inverse_norm = 0.0;
  bool schur_bounded = false;    // ||S^{-1}|| <= ||M^{-1}||
  bool product_bounded = false;  // product bound on ||M^{-1}||
};

/// Inverse of M = [A B; C D] through S = D - C A^{-1} B.
SchurResult schur_complement(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                             const Eigen::MatrixXcd& C, const Eigen::MatrixXcd& D);

using MatrixFunction = std::function<Eigen::MatrixXcd(std::span<const std::complex<double>>)>;

/// z -> A(z) analytic on |z_i| < 6 with sup ||A|| <= B and
/// ||A(x0)^{-1}|| <= D at a real witness x0.
struct AnalyticMatrixFamily {
  int n = 1;
  int N = 1;
  MatrixFunction A;
  double B = 1.0;
  double D = 1.0;
  std::vector<double> x0;
};

AnalyticMatrixFamily make_matrix_family(int n, int N, MatrixFunction A, double B, double D,
                                        std::vector<double> x0);

/// Smallest s with s/N >= 25 n max(1, log rho) log(B D).
double matrix_cartan_threshold(const AnalyticMatrixFamily& fam, double rho_sup);
/// exp(-(1/4) s / (N log(B D))); throws precondition below threshold.
double matrix_cartan_bound(const AnalyticMatrixFamily& fam, double s, double rho_sup);
/// Smallest s with s/N >= 20 n log(B D).
double matrix_cartan_threshold_density_free(const AnalyticMatrixFamily& fam);
/// exp(-(1/2) s / (N log(B D))).
double matrix_cartan_bound_density_free(const AnalyticMatrixFamily& fam, double s);

/// mu^n { x in [-1/2,1/2]^n : ||A(x)^{-1}|| >= e^s }.
McMeasure matrix_event_measure(const AnalyticMatrixFamily& fam, double s, long samples,
                               std::uint64_t seed, const std::string& density = "uniform",
                               int jobs = 1);

struct NamedScalar {
  std::string name;
  AnalyticScalar f;
};

struct NamedMatrixFamily {
  std::string name;
  AnalyticMatrixFamily family;
};

/// Polynomial test functions in n = 1, 2, 3 variables.
std::vector<NamedScalar> shipped_scalar_families();
/// Affine matrix families with N = 2, 3, 4 in n = 1, 2, 3 variables.
std::vector<NamedMatrixFamily> shipped_matrix_families();

struct SchroedingerCartanInput {
  double S = 0.0;
  double T = 0.0;
  int J = 1;
  double r_inf = 1.0;
  int n = 1;
  int d = 1;
  int p = 0;
  double r = 1.0;
  double tau = 0.5;
  double rho_sup = 1.0;
};

struct SchroedingerCartanThresholds {
  double min_ratio = 0.0;         // S/T lower bound
  double min_S_density = 0.0;     // 10000 J 3^d r^{d+2tau} n max(1, log rho)
  double min_S_scale = 0.0;       // 2 (p+4) log 2 + 10 r^tau
  double min_S(double T) const;
};

SchroedingerCartanThresholds schroedinger_cartan_thresholds(const SchroedingerCartanInput& in);
/// Returns e^{-T}; throws precondition naming the violated inequality.
double schroedinger_cartan_bound(const SchroedingerCartanInput& in);

/// Measure of { x : ||(H(x) - E)^{-1}|| >= 2^{-p} e^S } where H(x) is the
/// model on Lambda_R(0) with the disorder on the defect box replaced by x.
McMeasure schroedinger_event_measure(const Model& model, int R, const Box& defect, double E,
                                     double S, int p, long samples, std::uint64_t seed,
                                     int jobs = 1);

}  // namespace loclab

#endif
