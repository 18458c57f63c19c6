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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "loclab/boxmerge.hpp"
#include "loclab/cartan.hpp"
#include "loclab/dynamics.hpp"
#include "loclab/green.hpp"
#include "loclab/model.hpp"
#include "loclab/msa.hpp"
#include "loclab/rng.hpp"
#include "loclab/spectra.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace loclab;
using testing::error_of;
using testing::to_pt;

namespace {

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok) { pass = pass && ok; }
  template <class... T>
  void note(const T&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    notes.push_back(os.str());
  }
};

Model make_model(int d, double lambda) {
  ModelConfig c;
  c.dim = d;
  c.lambda = lambda;
  return Model(c);
}

BoxOperator on_box(const Model& m, int R, std::uint64_t seed) {
  const Box box = centered_box(m.dim(), R);
  return m.hamiltonian(box, m.sample_field(box, seed));
}

std::vector<oracle::Pt> pts_of(const Region& r) {
  std::vector<oracle::Pt> out;
  for (const Site& x : r.sites()) out.push_back(to_pt(x));
  return out;
}

// Dense matrix rebuilt from geometry and the diagonal only.
Eigen::MatrixXd oracle_matrix(const BoxOperator& op) {
  Eigen::MatrixXd H = oracle::adjacency(pts_of(op.region()));
  for (std::size_t i = 0; i < op.size(); ++i) H(i, i) = op.diagonal()[i];
  return H;
}

Eigen::MatrixXd oracle_green(const BoxOperator& op, double E) {
  Eigen::MatrixXd H = oracle_matrix(op);
  H.diagonal().array() -= E;
  return H.fullPivLu().inverse();
}

// ---------------------------------------------------------------------------

Verdict geometric_resolvent() {
  Verdict v;
  Stream st(101);
  const double lambdas[] = {0.0, 5.0, 40.0};
  int done = 0, skipped_singular = 0;
  double worst = 0.0, worst_oracle = 0.0;
  while (done < 200) {
    const int d = 1 + st.below(2);
    const int R = (d == 1 ? 6 : 4) + st.below(d == 1 ? 7 : 5);
    const int r = 1 + st.below(std::min(5, R - 1));
    const Model m = make_model(d, lambdas[st.below(3)]);
    const BoxOperator big = on_box(m, R, st.bits());
    Site n(d), x(d), y(d);
    for (int j = 0; j < d; ++j) n[j] = st.below(2 * (R - r) + 1) - (R - r);
    const Box sbox{n, r};
    for (int j = 0; j < d; ++j) x[j] = n[j] + st.below(2 * r + 1) - r;
    do {
      for (int j = 0; j < d; ++j) y[j] = st.below(2 * R + 1) - R;
    } while (sbox.contains(y));
    const BoxOperator small = big.restrict_to(sbox);
    const double E = st.uniform(-3.0, 3.0) + 0.0123;
    const auto chk = geometric_resolvent_check(big, small, E, x, y);
    if (chk.skipped) {
      ++skipped_singular;
      continue;
    }
    ++done;
    worst = std::max(worst, chk.residual / chk.scale);
    v.require(chk.pass && chk.residual <= 1e-9 * chk.scale);

    // Independent evaluation from dense inverses and oracle boundary pairs.
    const Eigen::MatrixXd GR = oracle_green(big, E), Gr = oracle_green(small, E);
    const auto bp = pts_of(big.region()), sp = pts_of(small.region());
    auto at = [](const std::vector<oracle::Pt>& v, const oracle::Pt& p) {
      return static_cast<Eigen::Index>(std::lower_bound(v.begin(), v.end(), p) - v.begin());
    };
    const oracle::Pt px = to_pt(x), py = to_pt(y);
    double sum = GR(at(bp, px), at(bp, py));
    const oracle::PtSet inner(sp.begin(), sp.end());
    for (const auto& u : sp)
      for (const auto& w : oracle::neighbours(u))
        if (!inner.count(w) && std::binary_search(bp.begin(), bp.end(), w))
          sum += Gr(at(sp, px), at(sp, u)) * GR(at(bp, w), at(bp, py));
    const double scale = std::max(1.0, std::abs(GR(at(bp, px), at(bp, py))));
    worst_oracle = std::max(worst_oracle, std::abs(sum) / scale);
    v.require(std::abs(sum) <= 1e-9 * scale);
  }
  v.note("instances=", done, " singular_skips=", skipped_singular, " max_rel_residual=", worst,
         " oracle_max_rel_residual=", worst_oracle);
  return v;
}

Verdict resolvent_norm_identity() {
  Verdict v;
  Stream st(102);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int d = 1 + st.below(2);
    const int R = d == 1 ? 1 + st.below(14) : 1 + st.below(2);
    const BoxOperator H = on_box(make_model(d, st.uniform(0.0, 40.0)), R, st.bits());
    const double E = st.uniform(-25.0, 25.0);
    Eigen::MatrixXd A = oracle_matrix(H);
    A.diagonal().array() -= E;
    const double inv = oracle::inverse_norm(A);
    const double dist = distance_to_spectrum(H, E);
    const double err = std::max(std::abs(inv * dist - 1.0), std::abs(resolvent_norm(H, E) / inv - 1.0));
    worst = std::max(worst, err);
    v.require(err <= 1e-8 && H.size() <= 30);
  }
  v.note("instances=100 max_deviation=", worst);
  return v;
}

Verdict determinant_and_schur() {
  Verdict v;
  Stream st(103);
  long fails = 0;
  double worst_schur = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const int N = 1 + st.below(10);
    Eigen::MatrixXcd M(N, N);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) M(a, b) = {st.normal(), st.normal()};
    const DetBounds db = det_bounds(M);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    const Eigen::VectorXd sv = svd.singularValues();
    const double adet = std::abs(M.fullPivLu().determinant());
    const double s1 = sv(0), sN = sv(N - 1);
    const double slack = 1e-9;
    const bool i1 = adet <= std::pow(s1, N) * (1 + slack);
    const bool i2 = adet >= std::pow(sN, N) * (1 - slack);
    const bool i3 = 1.0 / sN <= N * std::pow(s1, N - 1) / adet * (1 + slack);
    const bool ok = db.upper && db.lower && db.inverse && i1 && i2 && i3;
    fails += ok ? 0 : 1;
    if (N >= 2) {
      const int k = 1 + st.below(N - 1);
      const SchurResult sr = schur_complement(M.topLeftCorner(k, k), M.topRightCorner(k, N - k),
                                              M.bottomLeftCorner(N - k, k),
                                              M.bottomRightCorner(N - k, N - k));
      const double res = (M * sr.inverse - Eigen::MatrixXcd::Identity(N, N)).norm() /
                         std::max(1.0, oracle::spectral_norm(M) * oracle::spectral_norm(sr.inverse));
      worst_schur = std::max({worst_schur, res, sr.residual});
      fails += (res <= 1e-9 && sr.residual <= 1e-9) ? 0 : 1;
    }
  }
  v.require(fails == 0);
  v.note("matrices=10000 failures=", fails, " max_schur_residual=", worst_schur);
  return v;
}

Verdict cartan_families() {
  Verdict v;
  int rows = 0, fails = 0;
  std::uint64_t seed = 104;
  for (const auto& nf : shipped_scalar_families()) {
    const AnalyticScalar& f = nf.f;
    v.require(f.n <= 3);
    for (double s : {2.0, 4.0, 8.0, 16.0}) {
      const McMeasure m = sublevel_measure(f, s, 1000000, ++seed);
      const double bound = f.n == 1 ? cartan_bound_1d(f.eps, s) : cartan_bound_nd(f.n, f.eps, s);
      const bool ok = m.measured - 3 * m.std_error <= bound;
      ++rows;
      fails += ok ? 0 : 1;
    }
  }
  for (const auto& nm : shipped_matrix_families()) {
    const AnalyticMatrixFamily& fam = nm.family;
    v.require(fam.n <= 3 && fam.N <= 4);
    for (const char* density : {"uniform", "triangular"}) {
      const double rho = std::string(density) == "uniform" ? 1.0 : 2.0;
      for (double k : {1.0, 1.5}) {
        const double s = matrix_cartan_threshold(fam, rho) * k;
        const McMeasure m = matrix_event_measure(fam, s, 10000, ++seed, density);
        ++rows;
        fails += m.measured - 3 * m.std_error <= matrix_cartan_bound(fam, s, rho) ? 0 : 1;
      }
    }
    for (double k : {1.0, 1.5}) {
      const double s = matrix_cartan_threshold_density_free(fam) * k;
      const McMeasure m = matrix_event_measure(fam, s, 10000, ++seed);
      ++rows;
      fails += m.measured - 3 * m.std_error <= matrix_cartan_bound_density_free(fam, s) ? 0 : 1;
    }
  }
  v.require(fails == 0);
  v.note("measurements=", rows, " dominated=", rows - fails);
  return v;
}

oracle::MergeData to_data(const MergeResult& res, const ScaleLadder& L) {
  oracle::MergeData m;
  for (const auto& c : res.centers) m.centers.push_back(to_pt(c));
  m.levels = res.levels;
  m.inner = L.inner;
  m.outer = L.outer;
  return m;
}

Verdict boxmerge_instances() {
  Verdict v;
  Stream st(105);
  int done = 0, ladder_short = 0, cover_fail = 0, disjoint_fail = 0;
  int acc_checked[3] = {0, 0, 0}, acc_fail[3] = {0, 0, 0}, acc_too_many = 0;
  std::string witness;
  while (done < 200) {
    const int d = 1 + st.below(2);
    const int R = 10 + st.below(21);
    const int r = 1 + st.below(2);
    const int K = 1 + st.below(4);
    const int gap = std::max(3 * r, 2 * r + 2) + st.below(2);
    const ScaleLadder L = geometric_ladder(r, gap, R);
    std::vector<Site> pts;
    std::vector<oracle::Pt> opts;
    for (int k = 0; k < K; ++k) {
      Site n(d);
      for (int j = 0; j < d; ++j) n[j] = st.below(2 * R + 1) - R;
      pts.push_back(n);
      opts.push_back(to_pt(n));
    }
    MergeResult a, b;
    if (error_of([&] { a = merge(pts, L, r, R, MergeOptions{false}); }) ||
        error_of([&] { b = merge_acceptable(pts, L, r, R, MergeOptions{false}); })) {
      ++ladder_short;
      continue;
    }
    ++done;
    for (const MergeResult* res : {&a, &b}) {
      const auto data = to_data(*res, L);
      disjoint_fail += oracle::disjoint(data, R) ? 0 : 1;
      cover_fail += oracle::covers(data, opts, r, R) ? 0 : 1;
    }
    const auto tally = oracle::complement_acceptable(to_data(b, L), r, R, 64);
    if (tally.choices == 0 || tally.choices >= 64) {
      ++acc_too_many;
      continue;
    }
    ++acc_checked[d];
    if (tally.failures > 0) {
      ++acc_fail[d];
      if (witness.empty() && tally.witness) {
        std::ostringstream os;
        os << "d=" << d << " R=" << R << " r=" << r << " site=(";
        for (std::size_t j = 0; j < tally.witness->size(); ++j)
          os << (j ? "," : "") << (*tally.witness)[j];
        os << ")";
        witness = os.str();
      }
    }
  }
  v.require(disjoint_fail == 0 && cover_fail == 0);
  v.require(acc_fail[1] == 0 && acc_fail[2] == 0);
  v.note("instances=", done, " ladder_exhausted_redraws=", ladder_short,
         " disjointness_violations=", disjoint_fail, " coverage_violations=", cover_fail);
  v.note("complement acceptability: d=1 checked=", acc_checked[1], " violations=", acc_fail[1],
         "; d=2 checked=", acc_checked[2], " violations=", acc_fail[2],
         "; not enumerated=", acc_too_many);
  if (!witness.empty()) v.note("first non-acceptable site: ", witness);
  if (acc_fail[2] > 0)
    v.note("an interior hole in d>=2 leaves a reflex corner whose diagonal site is at distance "
           "< r/10 from the complement of every contained r-cube");
  return v;
}

double log_uniform_energy(Stream& st) {
  const double mag = std::exp(st.uniform(std::log(50.0), std::log(1e4)));
  return st.below(2) ? mag : -mag;
}

double energy(Stream& st, int i) { return i % 2 ? log_uniform_energy(st) : st.uniform(-50.0, 50.0); }

int decay_radius(int r, const SuitabilityParams& p) {
  for (int R = 3 * r; R <= 200; R += r)
    if (gamma_hat_subcubes(p.gamma, r, R, p.tau, 1) > 0.1) return R;
  return 200;
}

Verdict theorem_harnesses() {
  Verdict v;
  const Model m = make_model(1, 40.0);
  Stream st(106);
  const int scales[] = {6, 8, 12};
  struct Tally {
    const char* name;
    int runs = 0, held = 0, counter = 0, undetermined = 0;
  } t[4] = {{"decay_from_subcubes"}, {"decay_with_defects"}, {"resolvent_from_suitability"},
            {"resolvent_with_defects"}};
  for (int i = 0; i < 300; ++i) {
    const int which = i % 4;
    const int r = scales[(i / 4) % 3];
    const double E = energy(st, i / 4);
    HarnessOutcome out;
    if (which == 0 || which == 1) {
      const SuitabilityParams p{1.0, 0.5, 3};
      const int R = decay_radius(r, p);
      const BoxOperator big = on_box(m, R, st.bits());
      if (which == 0) {
        out = decay_from_subcubes(big, R, E, r, p);
      } else {
        const Defect df{Site{st.below(R) - R / 2}, r, 3 * r};
        out = decay_with_defects(big, R, E, r, p, std::span<const Defect>(&df, 1), 1.0);
      }
    } else if (which == 2) {
      const SuitabilityParams p{std::ceil(40.0 / r), st.uniform(0.5, 0.9), 0};
      const int R = r + st.below(3 * r);
      out = resolvent_bound_from_suitability(on_box(m, R, st.bits()), E, r, p);
    } else {
      const int R = 70;
      const Defect df{Site{st.below(21) - 10}, 12, 24};
      const double Ef = st.uniform(2000.0, 1e4) * (st.below(2) ? 1 : -1);
      out = resolvent_bound_with_defects(on_box(m, R, st.bits()), R, Ef, 12, {7.0, 0.6, 0},
                                         std::span<const Defect>(&df, 1));
    }
    Tally& x = t[which];
    ++x.runs;
    x.held += out.hypotheses_hold ? 1 : 0;
    x.counter += out.counterexample() ? 1 : 0;
    x.undetermined += out.hypotheses_hold && out.undetermined ? 1 : 0;
  }
  for (const Tally& x : t) {
    v.require(x.counter == 0);
    v.note(x.name, ": configurations=", x.runs, " hypotheses_held=", x.held,
           " counterexamples=", x.counter, " undetermined=", x.undetermined);
  }
  return v;
}

Verdict perturbation() {
  Verdict v;
  const Model m = make_model(1, 40.0);
  const SuitabilityParams p{0.5, 0.5, 1};
  const SuitabilityParams q{0.5, 0.5, 0};
  const int r = 6;
  const Box box = centered_box(1, r);
  const double me = perturbation_margin(p, r, 1, MarginMode::energy);
  const double mo = perturbation_margin(p, r, 1, MarginMode::operator_norm);
  Stream st(107);
  int found = 0, kept = 0, draws = 0;
  while (found < 100 && draws < 100000) {
    ++draws;
    const BoxOperator H = on_box(m, r, st.bits());
    const double E = st.uniform(-40.0, 40.0);
    if (!check_suitable(H, box, E, p).pass) continue;
    ++found;
    const double dE = 0.9 * me * (st.below(2) ? 1 : -1);
    std::vector<double> diag = H.diagonal();
    for (double& x : diag) x += 0.9 * mo * st.uniform(-1.0, 1.0);
    const bool a = check_suitable(H, box, E + dE, q).pass;
    const bool b = check_suitable(H.with_diagonal(diag), box, E, q).pass;
    kept += a && b ? 1 : 0;
  }
  v.require(found == 100 && kept == 100);
  v.note("suitable_boxes=", found, " still_suitable_at_p-1=", kept, " energy_margin=", me,
         " operator_margin=", mo);
  return v;
}

// Independent restatements of the scale formulas.
double bar(double r, double g, double c, double lam) {
  const double x = (1 + 4 * g / c) * r + std::log(lam) / c;
  const double n = std::round(x);
  return std::abs(x - n) <= 1e-9 ? n : std::ceil(x);
}

Verdict formulas() {
  Verdict v;
  int checks = 0, fails = 0;
  auto eq = [&](double a, double b, double tol = 0.0) {
    ++checks;
    const bool ok = std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
    fails += ok ? 0 : 1;
  };
  // rbar and T_0.
  eq(rbar(10, 1, 1, std::numbers::e), 51);
  eq(rbar(7, 0.5, 2, 1), 14);
  eq(rbar(3, 2, 4, std::exp(8.0)), 11);
  eq(rbar(20, 0.25, 0.5, 100), bar(20, 0.25, 0.5, 100));
  for (auto [r, g, c, lam] : {std::array<double, 4>{10, 1, 1, std::numbers::e},
                              {5, 0.3, 2, 1e3}, {40, 2, 0.5, 2}}) {
    const double M = std::max(r, std::log(lam) / c);
    ++checks;
    fails += (1 + 4 * g / c) * r + std::log(lam) / c <= rbar_T0(g, c) * M ? 0 : 1;
  }
  // Wegner schedule.
  for (auto [r, d] : {std::pair{32.0, 1}, {1024.0, 2}, {1e4, 1}}) {
    const WegnerSchedule w = schedule_wegner(r, d);
    eq(w.R0, std::ceil(std::pow(r, 1 + 1.0 / (5 * d)) - 1e-9));
    eq(w.R1, std::floor(std::pow(r, 1 + 1.0 / (2 * d)) + 1e-9));
    eq(w.alpha, d * (2.0 * d + 1) / (2.0 * d - 1), 1e-15);
    eq(w.gamma_factor, 1 - 200 / std::pow(r, 1.0 / d), 1e-14);
  }
  eq(schedule_wegner(32, 1).R0, 64);
  eq(schedule_wegner(32, 1).R1, 181);
  // Cartan schedule and the K formula.
  for (auto [r, d, g, c] : {std::array<double, 4>{std::pow(4.0, 32), 1, 1, 2},
                            {1e12, 1, 1, 1}, {1e30, 2, 0.5, 1}}) {
    const CartanSchedule cs = schedule_cartan(r, static_cast<int>(d), 20, g, c);
    const double M = std::max(4.0, 2 + 4 * g / c);
    eq(cs.K, std::floor(std::sqrt(std::log(r) / (2 * d * std::log(M))) + 1e-12));
    eq(cs.R1, std::pow(r, 19.0 / (d + 1)), 1e-12);
    eq(cs.gamma_factor, 1 - 2 / r, 1e-15);
  }
  eq(schedule_cartan(std::pow(4.0, 32), 1, 20, 1, 2).K, 4);
  // gamma ladder.
  for (auto [r0, d] : {std::pair{10.0, 1}, {5.0, 2}, {100.0, 1}}) {
    const auto g = gamma_ladder(r0, d, 6);
    double x = 2 * (1 - 2 / r0);
    for (std::size_t k = 0; k < g.size(); ++k) {
      eq(g[k], x, 1e-14);
      ++checks;
      fails += g[k] >= 1 ? 0 : 1;
      x *= 1 - 2 / std::pow(r0, std::pow(3.0 * d + 8, k + 1.0));
    }
  }
  // Ladder with t_K^Q <= r^3.
  for (auto [r, K, d, g, c, lam] : {std::array<double, 6>{64, 1, 1, 1, 4, 1},
                                    {1e6, 1, 1, 0.5, 2, 3}, {std::pow(4.0, 8), 1, 2, 1, 4, 2}}) {
    const ScaleLadder13 L = scale_ladder_13(r, static_cast<int>(K), static_cast<int>(d), g, c, lam);
    eq(L.Q, (d + 1) * K + 1);
    double prev = 0;
    for (int qi = 0; qi < L.Q; ++qi)
      for (int k = 0; k < K; ++k) {
        const double s = k > 0 ? bar(L.t[qi][k - 1], g, c, lam)
                         : qi > 0 ? std::max({bar(prev, g, c, lam), 3 * prev, prev + 3 * r})
                                  : bar(r, g, c, lam);
        eq(L.s[qi][k], s);
        eq(L.t[qi][k], bar(s, g, c, lam));
        prev = L.t[qi][k];
      }
    ++checks;
    fails += L.t_last <= r * r * r && L.t_last_within_r3 ? 0 : 1;
  }
  // Induction-step constants.
  for (auto [r, d, K] : {std::array<double, 3>{10, 1, 1}, {1e5, 1, 2}, {1e5, 2, 1}}) {
    const auto c = check_constants_14(r, static_cast<int>(d), static_cast<int>(K), 1, 1, 10, 10,
                                      1e300, 1e9);
    eq(c[0].rhs, 20000 * K * std::pow(3, d), 1e-15);
    eq(c[2].rhs, std::pow(2, 2 * d * K * K), 1e-15);
    eq(c[3].rhs, std::pow(std::log(2 * d + 10), 2), 1e-15);
    eq(c[6].lhs, std::pow(r, 3 * d + 4), 1e-12);
    eq(c[7].lhs, std::pow(r, 3 * d + 3) / K, 1e-12);
  }
  // MSA-to-Wegner conversion.
  for (auto [alpha, d, eps] : {std::array<double, 3>{4, 1, std::exp(-9.0)},
                               {4, 2, std::exp(-12.0)}, {6, 1, std::exp(-20.0)}}) {
    const auto psi = [alpha](double x) { return std::pow(x, -alpha); };
    const MsaToWegner w = msa_to_wegner(psi, static_cast<int>(d), 0.5, eps);
    const double rr = std::floor(std::pow(std::log(1 / eps), 2) / 3 + 1e-9);
    eq(w.r, rr);
    eq(w.bound, 7 * std::pow(rr, -alpha / (d + 1)), 1e-14);
  }
  eq(msa_to_wegner([](double x) { return std::pow(x, -4.0); }, 1, 0.5, std::exp(-9.0)).bound,
     7.0 / 729, 1e-14);
  v.require(fails == 0);
  v.note("checks=", checks, " mismatches=", fails);
  return v;
}

Verdict initial_scale() {
  Verdict v;
  ModelConfig base;
  base.dim = 1;
  const double grid[] = {0.0};
  InitialScaleOptions opt;
  opt.trials = 400;
  opt.seed = 109;
  const InitialScaleResult res = initial_scale_search(base, 4, 2.0, grid, opt);
  v.require(res.found);
  if (!res.found) {
    v.note("no lambda_0 on the doubling grid");
    return v;
  }
  const AcceptabilityEstimate at0 = res.rows.back().estimate;
  v.require(at0.p_hat + 3 * at0.std_error <= at0.target);
  ModelConfig low = base;
  low.lambda = res.lambda0 / 4;
  const AcceptabilityEstimate quarter =
      estimate_acceptability(Model(low), 4, 0.0, opt.params, 2.0, 400, 110);
  v.require(quarter.p_hat + 3 * quarter.std_error > quarter.target);
  v.note("lambda_0=", res.lambda0, " p_hat=", at0.p_hat, " target=", at0.target,
         "; at lambda_0/4 p_hat=", quarter.p_hat);
  return v;
}

Verdict ids_checks() {
  Verdict v;
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(-2.5 + 5.0 * i / 40);
  const IDSTable free = ids(make_model(1, 0.0), 500, grid, 20, 111);
  double dev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double E = grid[i];
    const double closed = E <= -2 ? 0.0 : E >= 2 ? 1.0 : std::acos(-E / 2) / std::numbers::pi;
    dev = std::max(dev, std::abs(free.N_hat[i] - closed));
  }
  v.require(dev <= 0.02);
  std::vector<double> wide;
  for (int i = 0; i <= 80; ++i) wide.push_back(-60.0 + 1.5 * i);
  const IDSTable dis = ids(make_model(1, 40.0), 200, wide, 20, 112);
  bool mono = true, range = true;
  for (std::size_t i = 0; i < wide.size(); ++i) {
    range = range && dis.N_hat[i] >= 0 && dis.N_hat[i] <= 1;
    if (i) mono = mono && dis.N_hat[i] >= dis.N_hat[i - 1];
  }
  v.require(mono && range);
  v.note("free sup deviation=", dev, "; lambda=40 monotone=", mono, " in_unit_interval=", range);
  return v;
}

Verdict spectrum_path() {
  Verdict v;
  const SpectrumPathResult r = spectrum_path_union(make_model(1, 10.0), 60, 200, 113);
  v.require(r.weyl_ok && r.max_weyl_excess <= 1e-9 && r.union_ok);
  v.note("max_weyl_excess=", r.max_weyl_excess, " max_union_gap=", r.max_union_gap,
         " tolerance=", r.tolerance);
  return v;
}

Verdict dynamics_checks() {
  Verdict v;
  auto reg = std::make_shared<const Region>(Region::from_box(centered_box(1, 400)));
  const BoxOperator free(reg, std::vector<double>(reg->size(), 0.0));
  std::vector<double> t;
  for (int i = 0; i <= 50; ++i) t.push_back(i);
  const MomentResult mf = moment(free, 1.0, t);
  const double r2 = oracle::polyfit_r2(t, mf.values, 2);
  v.require(r2 >= 0.999);

  const BoxOperator loc = on_box(make_model(1, 80.0), 400, 114);
  const std::vector<double> t100{100.0};
  const MomentResult ml = moment(loc, 1.0, t100);
  const MomentResult mf100 = moment(free, 1.0, t100);
  const double contrast = mf100.values[0] / ml.values[0];
  v.require(contrast >= 10);
  const double unit = std::max({mf.max_norm_defect, ml.max_norm_defect, mf100.max_norm_defect});
  v.require(unit <= 1e-10);

  const double rate = median_decay_rate(on_box(make_model(1, 40.0), 300, 115));
  v.require(rate > 0.2);
  v.note("norm_defect=", unit, " ballistic_R2=", r2, " contrast=", contrast,
         " median_decay_rate=", rate);
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"geometric resolvent identity", geometric_resolvent},
      {"resolvent norm identity", resolvent_norm_identity},
      {"determinant bounds and Schur inverse", determinant_and_schur},
      {"Cartan bounds dominate Monte Carlo", cartan_families},
      {"cube merging conditions", boxmerge_instances},
      {"decay and resolvent theorem harnesses", theorem_harnesses},
      {"perturbation margins", perturbation},
      {"formula suite", formulas},
      {"initial scale search", initial_scale},
      {"integrated density of states", ids_checks},
      {"spectrum path union", spectrum_path},
      {"dynamics", dynamics_checks},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.note("exception: ", e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%2d] %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", index, name, secs);
    for (const auto& n : v.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
