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

#include "loclab/cartan.hpp"

#include <algorithm>
#include <cmath>

#include "loclab/disorder.hpp"
#include "loclab/error.hpp"
#include "loclab/green.hpp"
#include "loclab/model.hpp"
#include "loclab/parallel.hpp"
#include "loclab/rng.hpp"

namespace loclab {

namespace {

constexpr double kE3 = 20.085536923187668;
constexpr double kTwoPi = 6.283185307179586;
constexpr double kLog2 = 0.6931471805599453;
constexpr long kChunk = 4096;

void check_eps_s(double eps, double s) {
  require(eps > 0.0 && eps < 1.0, ErrorCode::domain, "eps must lie in (0, 1)");
  require(s > 0.0, ErrorCode::domain, "s must be positive");
}

// Runs hit(stream) for every sample, chunked so each chunk has its own
// derived seed; the count is independent of the worker count.
template <class Hit>
McMeasure count_hits(long samples, std::uint64_t seed, int jobs, double volume, Hit hit) {
  require(samples >= 1, ErrorCode::domain, "need at least one sample");
  const long chunks = (samples + kChunk - 1) / kChunk;
  std::vector<long> hits(static_cast<std::size_t>(chunks), 0);
  parallel_for(hits.size(), jobs, [&](std::size_t c) {
    Stream stream(derive_seed(seed, {c}));
    const long begin = static_cast<long>(c) * kChunk;
    const long end = std::min(samples, begin + kChunk);
    long h = 0;
    for (long i = begin; i < end; ++i) h += hit(stream) ? 1 : 0;
    hits[c] = h;
  });
  McMeasure m;
  m.samples = samples;
  for (long h : hits) m.hits += h;
  const double p = static_cast<double>(m.hits) / static_cast<double>(samples);
  m.measured = volume * p;
  m.std_error = volume * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return m;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& A) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(A).singularValues();
}

double inverse_norm(const Eigen::MatrixXcd& A) {
  const Eigen::VectorXd sv = singular_values(A);
  const double smin = sv(sv.size() - 1);
  return smin > 0.0 ? 1.0 / smin : std::numeric_limits<double>::infinity();
}

}  // namespace

double cartan_bound_1d(double eps, double s) {
  check_eps_s(eps, s);
  return 30.0 * kE3 * std::exp(-s / std::log(1.0 / eps));
}

double cartan_bound_nd(int n, double eps, double s) {
  check_eps_s(eps, s);
  require(n >= 1, ErrorCode::domain, "n must be positive");
  return 60.0 * kE3 * std::pow(n, 1.5) * std::ldexp(1.0, n) * std::exp(-s / std::log(1.0 / eps));
}

AnalyticScalar make_analytic_scalar(int n, ScalarFunction f, double eps) {
  require(n >= 1, ErrorCode::domain, "n must be positive");
  require(eps > 0.0 && eps < 1.0, ErrorCode::domain, "eps must lie in (0, 1)");
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n), 0.0);
  require(std::abs(f(z)) >= eps * (1 - 1e-12), ErrorCode::precondition, "|f(0)| < eps");
  Stream stream(0x5eedULL);
  const double radius = 2.0 * std::exp(1.0);
  for (int k = 0; k < 4096; ++k) {
    for (auto& zi : z) zi = std::polar(radius, kTwoPi * stream.unit());
    require(std::abs(f(z)) <= 1.0 + 1e-9, ErrorCode::precondition,
            "sup |f| exceeds 1 on the polydisc of radius 2e");
  }
  return AnalyticScalar{n, std::move(f), eps};
}

McMeasure sublevel_measure(const AnalyticScalar& f, double s, long samples, std::uint64_t seed,
                           int jobs) {
  require(f.n <= 2 * kMaxDim, ErrorCode::domain, "too many variables");
  const double level = std::exp(-s);
  return count_hits(samples, seed, jobs, std::ldexp(1.0, f.n), [&](Stream& st) {
    std::complex<double> z[kMaxDim * 2];
    for (int i = 0; i < f.n; ++i) z[i] = st.uniform(-1.0, 1.0);
    return std::abs(f.f(std::span<const std::complex<double>>(z, static_cast<std::size_t>(f.n)))) <=
           level;
  });
}

DetBounds det_bounds(const Eigen::MatrixXcd& A) {
  require(A.rows() == A.cols() && A.rows() >= 1, ErrorCode::domain, "need a square matrix");
  const int N = static_cast<int>(A.rows());
  DetBounds out;
  const Eigen::VectorXd sv = singular_values(A);
  out.norm = sv(0);
  out.det = A.partialPivLu().determinant();
  const double adet = std::abs(out.det);
  constexpr double slack = 1e-10;
  out.upper = adet <= std::pow(out.norm, N) * (1 + slack);
  const double smin = sv(N - 1);
  out.singular = smin <= 1e-14 * out.norm || adet == 0.0;
  if (out.singular) {
    out.inverse_norm = std::numeric_limits<double>::infinity();
    return out;
  }
  out.inverse_norm = 1.0 / smin;
  out.lower = adet >= std::pow(out.inverse_norm, -N) * (1 - slack);
  out.inverse = out.inverse_norm <= N * std::pow(out.norm, N - 1) / adet * (1 + slack);
  return out;
}

SchurResult schur_complement(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                             const Eigen::MatrixXcd& C, const Eigen::MatrixXcd& D) {
  const Eigen::Index k = A.rows();
  const Eigen::Index m = D.rows();
  require(A.cols() == k && B.rows() == k && B.cols() == m && C.rows() == m && C.cols() == k &&
              D.cols() == m,
          ErrorCode::domain, "block sizes do not fit");
  Eigen::FullPivLU<Eigen::MatrixXcd> luA(A);
  require(luA.isInvertible(), ErrorCode::precondition, "A is singular");
  const Eigen::MatrixXcd Ainv = luA.inverse();
  SchurResult out;
  out.S = D - C * Ainv * B;
  Eigen::FullPivLU<Eigen::MatrixXcd> luS(out.S);
  require(luS.isInvertible(), ErrorCode::precondition, "Schur complement is singular");
  const Eigen::MatrixXcd Sinv = luS.inverse();
  out.inverse.resize(k + m, k + m);
  out.inverse.topLeftCorner(k, k) = Ainv + Ainv * B * Sinv * C * Ainv;
  out.inverse.topRightCorner(k, m) = -Ainv * B * Sinv;
  out.inverse.bottomLeftCorner(m, k) = -Sinv * C * Ainv;
  out.inverse.bottomRightCorner(m, m) = Sinv;

  Eigen::MatrixXcd M(k + m, k + m);
  M << A, B, C, D;
  const Eigen::MatrixXcd direct = M.fullPivLu().inverse();
  out.full_inverse_norm = singular_values(direct)(0);
  out.residual = singular_values(out.inverse - direct)(0) / out.full_inverse_norm;
  out.schur_inverse_norm = singular_values(Sinv)(0);
  out.schur_bounded = out.schur_inverse_norm <= out.full_inverse_norm * (1 + 1e-10);
  const double nA = singular_values(Ainv)(0);
  const double nB = singular_values(B)(0);
  const double nC = singular_values(C)(0);
  out.product_bounded = out.full_inverse_norm <= (1 + out.schur_inverse_norm) * (1 + nA) *
                                                     (1 + nA) * (1 + nB) * (1 + nC) *
                                                     (1 + 1e-10);
  return out;
}

AnalyticMatrixFamily make_matrix_family(int n, int N, MatrixFunction A, double B, double D,
                                        std::vector<double> x0) {
  require(n >= 1 && N >= 1, ErrorCode::domain, "n and N must be positive");
  require(B >= N, ErrorCode::precondition, "matrix Cartan needs B >= N");
  require(D >= 1.0, ErrorCode::precondition, "matrix Cartan needs D >= 1");
  require(static_cast<int>(x0.size()) == n, ErrorCode::domain, "witness has wrong length");
  std::vector<std::complex<double>> z(x0.begin(), x0.end());
  for (double x : x0) require(std::abs(x) <= 0.5, ErrorCode::domain, "witness outside cube");
  const Eigen::MatrixXcd A0 = A(z);
  require(A0.rows() == N && A0.cols() == N, ErrorCode::domain, "family has wrong size");
  require(inverse_norm(A0) <= D * (1 + 1e-12), ErrorCode::precondition,
          "witness inverse bound ||A(x0)^{-1}|| <= D fails");
  Stream stream(0x5eedULL);
  for (int k = 0; k < 1024; ++k) {
    for (auto& zi : z) zi = std::polar(6.0, kTwoPi * stream.unit());
    require(singular_values(A(z))(0) <= B * (1 + 1e-12), ErrorCode::precondition,
            "sup ||A(z)|| exceeds B on |z_i| = 6");
  }
  return AnalyticMatrixFamily{n, N, std::move(A), B, D, std::move(x0)};
}

double matrix_cartan_threshold(const AnalyticMatrixFamily& fam, double rho_sup) {
  require(rho_sup >= 1.0, ErrorCode::domain, "density sup-norm is at least 1");
  return fam.N * 25.0 * fam.n * std::max(1.0, std::log(rho_sup)) * std::log(fam.B * fam.D);
}

double matrix_cartan_bound(const AnalyticMatrixFamily& fam, double s, double rho_sup) {
  require(s > 0.0, ErrorCode::domain, "s must be positive");
  require(s >= matrix_cartan_threshold(fam, rho_sup), ErrorCode::precondition,
          "s/N >= 25 n max(1, log rho) log(B D) fails");
  return std::exp(-0.25 * s / (fam.N * std::log(fam.B * fam.D)));
}

double matrix_cartan_threshold_density_free(const AnalyticMatrixFamily& fam) {
  return fam.N * 20.0 * fam.n * std::log(fam.B * fam.D);
}

double matrix_cartan_bound_density_free(const AnalyticMatrixFamily& fam, double s) {
  require(s > 0.0, ErrorCode::domain, "s must be positive");
  require(s >= matrix_cartan_threshold_density_free(fam), ErrorCode::precondition,
          "s/N >= 20 n log(B D) fails");
  return std::exp(-0.5 * s / (fam.N * std::log(fam.B * fam.D)));
}

McMeasure matrix_event_measure(const AnalyticMatrixFamily& fam, double s, long samples,
                               std::uint64_t seed, const std::string& density, int jobs) {
  const Density& rho = DensityRegistry::instance().get(density);
  return count_hits(samples, seed, jobs, 1.0, [&](Stream& st) {
    std::vector<std::complex<double>> z(static_cast<std::size_t>(fam.n));
    for (auto& zi : z) {
      double x;
      do {
        x = st.uniform(-0.5, 0.5);
      } while (rho.pdf && st.unit() * rho.sup_norm > rho.pdf(x));
      zi = x;
    }
    return std::log(inverse_norm(fam.A(z))) >= s;
  });
}

std::vector<NamedScalar> shipped_scalar_families() {
  using Z = std::span<const std::complex<double>>;
  const double e2 = 2.0 * std::exp(1.0);
  std::vector<NamedScalar> out;
  out.push_back({"linear1", make_analytic_scalar(
                                1, [=](Z z) { return (z[0] - 0.3) / (e2 + 0.3); },
                                0.3 / (e2 + 0.3))});
  out.push_back({"quadratic1", make_analytic_scalar(
                                   1, [=](Z z) { return (z[0] * z[0] - 0.25) / (e2 * e2 + 0.25); },
                                   0.25 / (e2 * e2 + 0.25))});
  const double den2 = (e2 + 0.2) * (e2 + 0.4);
  out.push_back({"product2", make_analytic_scalar(
                                 2, [=](Z z) { return (z[0] - 0.2) * (z[1] + 0.4) / den2; },
                                 0.08 / den2)});
  out.push_back({"sum3", make_analytic_scalar(
                             3, [=](Z z) { return (z[0] + z[1] + z[2] - 0.5) / (3.0 * e2 + 0.5); },
                             0.5 / (3.0 * e2 + 0.5))});
  return out;
}

std::vector<NamedMatrixFamily> shipped_matrix_families() {
  using Z = std::span<const std::complex<double>>;
  auto with_witness = [](std::string name, int n, int N, MatrixFunction A, double B,
                         std::vector<double> x0) {
    std::vector<std::complex<double>> z(x0.begin(), x0.end());
    const double D = std::max(1.0, inverse_norm(A(z)));
    return NamedMatrixFamily{std::move(name),
                             make_matrix_family(n, N, std::move(A), B, D, std::move(x0))};
  };
  std::vector<NamedMatrixFamily> out;
  out.push_back(with_witness(
      "diag2", 1, 2,
      [](Z z) {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(2, 2);
        A(0, 0) = z[0] - 0.1;
        return A;
      },
      6.1, {0.5}));
  out.push_back(with_witness(
      "tridiag3", 2, 3,
      [](Z z) {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(3, 3);
        A(0, 0) = z[0];
        A(1, 1) = z[1];
        A(2, 2) = z[0] - z[1];
        A(0, 1) = A(1, 0) = A(1, 2) = A(2, 1) = 1.0;
        return A;
      },
      14.0, {0.5, -0.3}));
  out.push_back(with_witness(
      "path4", 3, 4,
      [](Z z) {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(4, 4);
        A(0, 0) = z[0];
        A(1, 1) = z[1];
        A(2, 2) = z[2];
        A(3, 3) = z[0] + z[2];
        for (int i = 0; i < 3; ++i) A(i, i + 1) = A(i + 1, i) = 0.5;
        return A;
      },
      13.0, {0.4, -0.2, 0.1}));
  return out;
}

double SchroedingerCartanThresholds::min_S(double T) const {
  return std::max({T * min_ratio, min_S_density, min_S_scale, T});
}

SchroedingerCartanThresholds schroedinger_cartan_thresholds(const SchroedingerCartanInput& in) {
  require(in.d >= 1 && in.J >= 1 && in.n >= 1 && in.p >= 0, ErrorCode::domain,
          "bad Cartan parameters");
  require(in.rho_sup >= 1.0, ErrorCode::domain, "density sup-norm is at least 1");
  SchroedingerCartanThresholds th;
  const double geo = in.J * std::pow(3.0, in.d) * std::pow(in.r_inf, in.d + 2.0 * in.tau);
  th.min_ratio = 1200.0 * geo;
  th.min_S_density = 10000.0 * geo * in.n * std::max(1.0, std::log(in.rho_sup));
  th.min_S_scale = 2.0 * (in.p + 4) * kLog2 + 10.0 * std::pow(in.r, in.tau);
  return th;
}

double schroedinger_cartan_bound(const SchroedingerCartanInput& in) {
  const auto th = schroedinger_cartan_thresholds(in);
  require(in.T > 0.0 && in.S >= in.T, ErrorCode::precondition, "S >= T > 0 fails");
  require(in.S / in.T >= th.min_ratio, ErrorCode::precondition,
          "S/T >= 1200 3^d J r^{d+2tau} fails");
  require(in.S >= th.min_S_density, ErrorCode::precondition,
          "S >= 10000 J 3^d r^{d+2tau} n log(rho) fails");
  require(in.S >= th.min_S_scale, ErrorCode::precondition,
          "S >= 2(p+4) log 2 + 10 r^tau fails");
  return std::exp(-in.T);
}

McMeasure schroedinger_event_measure(const Model& model, int R, const Box& defect, double E,
                                     double S, int p, long samples, std::uint64_t seed,
                                     int jobs) {
  const Box whole = centered_box(model.dim(), R);
  require(whole.contains(defect), ErrorCode::containment, "defect box outside Lambda_R(0)");
  const DisorderField base = model.sample_field(whole, seed);
  const Region defect_sites = Region::from_box(defect);
  auto region = std::make_shared<const Region>(Region::from_box(whole));
  const double level = S - p * kLog2;
  return count_hits(samples, derive_seed(seed, {1}), jobs, 1.0, [&](Stream& st) {
    const DisorderField field = resample_mod(base, defect_sites, st.bits());
    const BoxOperator H = model.hamiltonian(region, field);
    const double dist = distance_to_spectrum(H, E);
    return dist == 0.0 || -std::log(dist) >= level;
  });
}

}  // namespace loclab
