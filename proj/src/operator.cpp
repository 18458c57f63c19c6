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

#include "loclab/operator.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "loclab/error.hpp"
#include "loclab/potential.hpp"

namespace loclab {

struct BoxOperator::Cache {
  std::once_flag once;
  SpectralData data;
  double norm = -1.0;
  std::once_flag norm_once;
};

namespace {

template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> build(const Region& region,
                                                            const std::vector<Scalar>& diag) {
  const Eigen::Index n = static_cast<Eigen::Index>(region.size());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Site& x = region[static_cast<std::size_t>(i)];
    m(i, i) = diag[static_cast<std::size_t>(i)];
    for (int k = 0; k < x.dim(); ++k) {
      Site y = x;
      ++y[k];
      if (auto j = region.find(y)) {
        m(i, static_cast<Eigen::Index>(*j)) = Scalar(1);
        m(static_cast<Eigen::Index>(*j), i) = Scalar(1);
      }
    }
  }
  return m;
}

void check_capacity(const Region& region) {
  require(region.size() <= kSiteCapacity, ErrorCode::capacity,
          "box exceeds dense capacity of " + std::to_string(kSiteCapacity) + " sites");
  require(!region.empty(), ErrorCode::domain, "empty region");
}

double singular_tolerance(const BoxOperator& op) { return 1e-12 * std::max(1.0, op.norm()); }

}  // namespace

BoxOperator::BoxOperator(std::shared_ptr<const Region> region, std::vector<double> diagonal)
    : region_(std::move(region)), real_(true), rdiag_(std::move(diagonal)),
      cache_(std::make_shared<Cache>()) {
  check_capacity(*region_);
  require(rdiag_.size() == region_->size(), ErrorCode::domain, "diagonal size mismatch");
  rmat_ = build(*region_, rdiag_);
}

BoxOperator::BoxOperator(std::shared_ptr<const Region> region,
                         std::vector<std::complex<double>> diagonal)
    : region_(std::move(region)), real_(false), cdiag_(std::move(diagonal)),
      cache_(std::make_shared<Cache>()) {
  check_capacity(*region_);
  require(cdiag_.size() == region_->size(), ErrorCode::domain, "diagonal size mismatch");
  cmat_ = build(*region_, cdiag_);
}

Eigen::MatrixXcd BoxOperator::as_complex() const {
  return real_ ? Eigen::MatrixXcd(rmat_.cast<std::complex<double>>()) : cmat_;
}

BoxOperator BoxOperator::restrict_to(const Region& sub) const {
  auto shared = std::make_shared<const Region>(sub);
  if (real_) {
    std::vector<double> d(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) d[i] = rdiag_[region_->index(sub[i])];
    return BoxOperator(shared, std::move(d));
  }
  std::vector<std::complex<double>> d(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) d[i] = cdiag_[region_->index(sub[i])];
  return BoxOperator(shared, std::move(d));
}

BoxOperator BoxOperator::with_diagonal(std::vector<double> diagonal) const {
  return BoxOperator(region_, std::move(diagonal));
}

double BoxOperator::norm() const {
  std::call_once(cache_->norm_once, [&] {
    if (real_) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rmat_, Eigen::EigenvaluesOnly);
      cache_->norm = es.eigenvalues().cwiseAbs().maxCoeff();
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cmat_);
      cache_->norm = svd.singularValues()(0);
    }
  });
  return cache_->norm;
}

bool BoxOperator::is_normal(double tol) const {
  if (real_) return true;
  const Eigen::MatrixXcd c = cmat_ * cmat_.adjoint() - cmat_.adjoint() * cmat_;
  const double n = norm();
  return c.norm() <= tol * std::max(1.0, n * n);
}

const SpectralData& BoxOperator::spectrum() const {
  std::call_once(cache_->once, [&] {
    SpectralData& sd = cache_->data;
    const Eigen::Index n = static_cast<Eigen::Index>(size());
    if (real_) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rmat_);
      sd.real = true;
      sd.values = es.eigenvalues();
      sd.vectors = es.eigenvectors();
      sd.residual = (rmat_ * sd.vectors - sd.vectors * sd.values.asDiagonal()).norm();
      sd.orthogonality_defect =
          (sd.vectors.transpose() * sd.vectors - Eigen::MatrixXd::Identity(n, n)).norm();
    } else {
      require(is_normal(), ErrorCode::not_normal, "complex operator is not normal");
      Eigen::ComplexSchur<Eigen::MatrixXcd> schur(cmat_);
      sd.real = false;
      sd.cvalues = schur.matrixT().diagonal();
      sd.cvectors = schur.matrixU();
      sd.residual = (cmat_ * sd.cvectors - sd.cvectors * sd.cvalues.asDiagonal()).norm();
      sd.orthogonality_defect =
          (sd.cvectors.adjoint() * sd.cvectors - Eigen::MatrixXcd::Identity(n, n)).norm();
    }
  });
  return cache_->data;
}

BoxOperator assemble(std::shared_ptr<const Region> region, const Potential& potential,
                     const DisorderField& field) {
  check_capacity(*region);
  auto diag = potential.on_region(*region, field);
  return BoxOperator(std::move(region), std::move(diag));
}

BoxOperator assemble(const Box& box, const Potential& potential, const DisorderField& field) {
  return assemble(std::make_shared<const Region>(Region::from_box(box)), potential, field);
}

double distance_to_spectrum(const BoxOperator& op, double E) {
  const SpectralData& sd = op.spectrum();
  if (sd.real) return (sd.values.array() - E).abs().minCoeff();
  return (sd.cvalues.array() - std::complex<double>(E, 0.0)).abs().minCoeff();
}

double resolvent_norm(const BoxOperator& op, double E) {
  double dist;
  if (op.is_real() || op.is_normal()) {
    dist = distance_to_spectrum(op, E);
  } else {
    const Eigen::Index n = static_cast<Eigen::Index>(op.size());
    Eigen::MatrixXcd m = op.complex_matrix() - E * Eigen::MatrixXcd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    dist = svd.singularValues()(n - 1);
  }
  require(dist > singular_tolerance(op), ErrorCode::singular_energy, "E is in the spectrum");
  return 1.0 / dist;
}

Eigen::MatrixXd green_matrix(const BoxOperator& op, double E) {
  require(op.is_real(), ErrorCode::domain, "green_matrix needs a real operator");
  const SpectralData& sd = op.spectrum();
  const Eigen::ArrayXd gaps = sd.values.array() - E;
  require(gaps.abs().minCoeff() > singular_tolerance(op), ErrorCode::singular_energy,
          "E is in the spectrum");
  return sd.vectors * gaps.inverse().matrix().asDiagonal() * sd.vectors.transpose();
}

Eigen::MatrixXcd green_matrix_complex(const BoxOperator& op, double E) {
  if (op.is_real()) return green_matrix(op, E).cast<std::complex<double>>();
  const Eigen::Index n = static_cast<Eigen::Index>(op.size());
  resolvent_norm(op, E);  // singular check
  Eigen::MatrixXcd m = op.complex_matrix() - E * Eigen::MatrixXcd::Identity(n, n);
  return m.partialPivLu().inverse();
}

namespace {

bool is_chain(const Region& reg) {
  if (reg.dim() != 1) return false;
  for (std::size_t i = 0; i < reg.size(); ++i)
    if (reg[i][0] != reg[0][0] + static_cast<int>(i)) return false;
  return true;
}

// Pivots of the LDL^T factorisation of a unit tridiagonal matrix, never
// exactly zero.
std::complex<double> nonzero(std::complex<double> x) {
  constexpr double tiny = 1e-280;
  return std::abs(x) < tiny ? std::complex<double>(tiny, 0.0) : x;
}

}  // namespace

LogGreen log_abs_green(const BoxOperator& op, double E) {
  const auto n = static_cast<std::size_t>(op.size());
  const auto N = static_cast<Eigen::Index>(n);
  LogGreen out;
  if (is_chain(op.region())) {
    resolvent_norm(op, E);  // singular check
    std::vector<std::complex<double>> t(n);
    for (std::size_t k = 0; k < n; ++k)
      t[k] = (op.is_real() ? std::complex<double>(op.diagonal()[k]) : op.complex_diagonal()[k]) - E;
    std::vector<std::complex<double>> left(n), right(n);
    for (std::size_t k = 0; k < n; ++k) left[k] = nonzero(k == 0 ? t[k] : t[k] - 1.0 / left[k - 1]);
    for (std::size_t k = n; k-- > 0;)
      right[k] = nonzero(k + 1 == n ? t[k] : t[k] - 1.0 / right[k + 1]);
    // Prefix sums of log |pivot| from both sides.
    std::vector<double> lsum(n + 1, 0.0), rsum(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      lsum[k + 1] = lsum[k] + std::log(std::abs(left[k]));
      rsum[k + 1] = rsum[k] + std::log(std::abs(right[k]));
    }
    out.log_abs.resize(N, N);
    for (std::size_t j = 0; j < n; ++j) {
      const std::complex<double> pivot = j + 1 < n ? left[j] - 1.0 / right[j + 1] : left[j];
      const double diag = -std::log(std::abs(nonzero(pivot)));
      const auto J = static_cast<Eigen::Index>(j);
      out.log_abs(J, J) = diag;
      // Column j: g_i = -g_{i+1} / left_i above, g_i = -g_{i-1} / right_i below.
      for (std::size_t i = 0; i < j; ++i)
        out.log_abs(static_cast<Eigen::Index>(i), J) = diag - (lsum[j] - lsum[i]);
      for (std::size_t i = j + 1; i < n; ++i)
        out.log_abs(static_cast<Eigen::Index>(i), J) = diag - (rsum[i + 1] - rsum[j + 1]);
    }
    out.chain = true;
    return out;
  }
  const Eigen::MatrixXcd G = green_matrix_complex(op, E);
  out.log_abs = G.cwiseAbs().array().log().matrix();
  const double g = resolvent_norm(op, E);
  const double h = op.norm() + std::abs(E);
  out.log_floor = std::log(16.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                           h * g * g);
  return out;
}

std::complex<double> green_entry(const BoxOperator& op, double E, const Site& x, const Site& y) {
  const auto i = static_cast<Eigen::Index>(op.region().index(x));
  const auto j = static_cast<Eigen::Index>(op.region().index(y));
  if (!op.is_real()) return green_matrix_complex(op, E)(i, j);
  const SpectralData& sd = op.spectrum();
  const Eigen::ArrayXd gaps = sd.values.array() - E;
  require(gaps.abs().minCoeff() > singular_tolerance(op), ErrorCode::singular_energy,
          "E is in the spectrum");
  return (sd.vectors.row(i).transpose().array() * sd.vectors.row(j).transpose().array() / gaps)
      .sum();
}

double combes_thomas_rate(double delta, double c0) {
  require(delta > 0.0, ErrorCode::domain, "delta must be positive");
  return c0 * std::log1p(delta);
}

}  // namespace loclab
