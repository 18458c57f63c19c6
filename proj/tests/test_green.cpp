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

#include "doctest.h"
#include "loclab/model.hpp"
#include "loclab/rng.hpp"
#include "support.hpp"

#include <cmath>
#include <memory>

using namespace loclab;
using testing::error_of;

namespace {

Model model(int d, double lambda) {
  ModelConfig c;
  c.dim = d;
  c.lambda = lambda;
  return Model(c);
}

BoxOperator on_box(const Model& m, int R, std::uint64_t seed) {
  const Box box = centered_box(m.dim(), R);
  return m.hamiltonian(box, m.sample_field(box, seed));
}

}  // namespace

TEST_SUITE("green") {

TEST_CASE("suitability examples") {
  const Model free = model(1, 0.0);
  const BoxOperator H = on_box(free, 4, 1);
  const Box box = centered_box(1, 4);
  CHECK(check_suitable(H, box, 4.0, {0.1, 0.5, 0}).pass);

  const double E0 = H.spectrum().values(3);
  const SuitabilityReport sing = check_suitable(H, box, E0, {0.1, 0.5, 0});
  CHECK_FALSE(sing.pass);
  CHECK(sing.singular);

  // Direct evaluation of both conditions.
  const Model m = model(1, 20.0);
  Stream st(9);
  int passes = 0;
  for (int i = 0; i < 200; ++i) {
    const BoxOperator A = on_box(m, 6, st.bits());
    const double E = st.uniform(-10.0, 10.0);
    const SuitabilityParams p{0.8, 0.5, 2};
    const SuitabilityReport rep = check_suitable(A, centered_box(1, 6), E, p);
    const Eigen::MatrixXd G = (A.matrix() - E * Eigen::MatrixXd::Identity(13, 13)).inverse();
    bool ok = oracle::inverse_norm(A.matrix() - E * Eigen::MatrixXd::Identity(13, 13)) <=
              std::exp(std::sqrt(6.0)) / 4.0;
    for (int x = 0; x < 13; ++x)
      for (int y = 0; y < 13; ++y)
        if (10 * std::abs(x - y) >= 6)
          ok = ok && std::abs(G(x, y)) <= std::exp(-0.8 * std::abs(x - y)) / 4.0 / 2.0;
    CHECK(rep.pass == ok);
    passes += ok ? 1 : 0;
    // Loosening p never breaks suitability.
    if (rep.pass) CHECK(check_suitable(A, centered_box(1, 6), E, {0.8, 0.5, 1}).pass);
  }
  CHECK(passes > 10);
  CHECK(passes < 190);
}

TEST_CASE("perturbation margins") {
  CHECK(perturbation_margin({1.0, 0.5, 3}, 10, 1, MarginMode::energy) ==
        doctest::Approx(std::exp(-40.0)));
  const double op = perturbation_margin({1.0, 0.5, 3}, 10, 2, MarginMode::operator_norm);
  CHECK(op == doctest::Approx(std::exp(-10.0 - 2 * std::sqrt(10.0)) / 16.0 / 80.0));
  try {
    perturbation_margin({0.1, 0.5, 1}, 2, 1, MarginMode::energy);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition);
    CHECK(std::string(e.what()).find("asrgamp") != std::string::npos);
  }
}

TEST_CASE("perturbed suitable boxes stay suitable at p - 1") {
  const Model m = model(1, 40.0);
  const SuitabilityParams p{0.5, 0.5, 1};
  const int r = 6;
  const Box box = centered_box(1, r);
  const double de = perturbation_margin(p, r, 1, MarginMode::energy);
  const double dv = perturbation_margin(p, r, 1, MarginMode::operator_norm);
  Stream st(12);
  int found = 0;
  for (int i = 0; i < 2000 && found < 50; ++i) {
    const BoxOperator H = on_box(m, r, st.bits());
    const double E = st.uniform(-10.0, 10.0);
    if (!check_suitable(H, box, E, p).pass) continue;
    ++found;
    const double sign = st.below(2) ? 1.0 : -1.0;
    CHECK(check_suitable(H, box, E + sign * 0.9 * de, {p.gamma, p.tau, 0}).pass);
    std::vector<double> diag = H.diagonal();
    for (double& v : diag) v += 0.9 * dv * st.uniform(-1.0, 1.0);
    CHECK(check_suitable(H.with_diagonal(diag), box, E, {p.gamma, p.tau, 0}).pass);
  }
  CHECK(found == 50);
}

TEST_CASE("free Green function matches the closed form") {
  const Model free = model(1, 0.0);
  const BoxOperator H = on_box(free, 7, 1);  // 15 sites
  const double E = 0.37;
  const Eigen::MatrixXd G = green_matrix(H, E);
  for (int i = 1; i <= 15; ++i)
    for (int j = 1; j <= 15; ++j)
      CHECK(G(i - 1, j - 1) == doctest::Approx(oracle::path_green(15, E, i, j)).epsilon(1e-10));
}

TEST_CASE("geometric resolvent identity") {
  Stream st(77);
  for (int i = 0; i < 60; ++i) {
    const int d = 1 + st.below(2);
    const int R = d == 1 ? 12 : 5;
    const int r = 1 + st.below(R - 1);
    const Model m = model(d, std::vector<double>{0.0, 5.0, 40.0}[st.below(3)]);
    const BoxOperator big = on_box(m, R, st.bits());
    Site n(d), x(d), y(d);
    for (int j = 0; j < d; ++j) n[j] = st.below(2 * (R - r) + 1) - (R - r);
    const Box small{n, r};
    for (int j = 0; j < d; ++j) x[j] = n[j] + st.below(2 * r + 1) - r;
    do {
      for (int j = 0; j < d; ++j) y[j] = st.below(2 * R + 1) - R;
    } while (small.contains(y));
    const auto res = geometric_resolvent_check(big, big.restrict_to(small), st.uniform(-3, 3), x, y);
    CHECK_FALSE(res.skipped);
    CHECK(res.pass);
    CHECK(res.residual <= 1e-9 * std::max(1.0, res.scale));
  }
  const BoxOperator whole = on_box(model(1, 1.0), 4, 3);
  const auto same = geometric_resolvent_check(whole, whole, 0.1, Site{0}, Site{1});
  CHECK(same.skipped);
  CHECK_FALSE(same.note.empty());
}

TEST_CASE("gamma hat formulas") {
  CHECK(gamma_hat_subcubes(2.0, 4, 10000, 0.5, 1) ==
        doctest::Approx(2.0 * (1 - 0.2 - 1e-3 * (8 + 100 + std::log(3.0)))));
  CHECK(gamma_hat_subcubes(2.0, 4, 10000, 0.5, 1) == doctest::Approx(1.3818).epsilon(1e-4));
  CHECK(gamma_hat_defects(1.0, 4, 10000, 0.5, 1, 10.0) ==
        doctest::Approx(1 - 0.2 - 1e-3 * (30 + 4 + 100 + std::log(3.0))));
  Stream st(1);
  for (int i = 0; i < 100; ++i) {
    const double g = st.uniform(0.1, 5);
    CHECK(gamma_hat_subcubes(g, 1 + st.below(20), 10 + st.below(1000), st.uniform(0.1, 0.9),
                             1 + st.below(3)) <= g);
  }
}

TEST_CASE("harness reductions") {
  const Model m = model(1, 40.0);
  const BoxOperator big = on_box(m, 30, 5);
  const SuitabilityParams p{1.0, 0.5, 3};
  const HarnessOutcome a = decay_from_subcubes(big, 30, 200.0, 6, p);
  const HarnessOutcome b = decay_with_defects(big, 30, 200.0, 6, p, {}, 1.0);
  CHECK(a.hypotheses_hold == b.hypotheses_hold);
  CHECK(a.gamma_hat == b.gamma_hat);
  CHECK(a.conclusion_holds == b.conclusion_holds);

  const SuitabilityParams q{4.0, 0.5, 0};
  const HarnessOutcome c = resolvent_bound_from_suitability(big, 200.0, 12, q);
  const HarnessOutcome e = resolvent_bound_with_defects(big, 30, 200.0, 12, q, {});
  CHECK(c.hypotheses_hold == e.hypotheses_hold);
  CHECK(c.measured == e.measured);
}

TEST_CASE("single suitable cube satisfies the resolvent bound") {
  const Model m = model(1, 40.0);
  const BoxOperator H = on_box(m, 12, 8);
  const SuitabilityParams q{4.0, 0.5, 0};
  const double E = 300.0;
  REQUIRE(check_suitable(H, centered_box(1, 12), E, q).pass);
  const HarnessOutcome out = resolvent_bound_from_suitability(H, E, 12, q);
  CHECK(out.hypotheses_hold);
  CHECK(out.conclusion_holds);
  CHECK(out.measured <= std::exp(std::sqrt(12.0)));
}

TEST_CASE("complex normal operators are accepted") {
  auto reg = std::make_shared<const Region>(Region::from_box(centered_box(1, 12)));
  std::vector<std::complex<double>> diag(reg->size(), {300.0, 2.0});
  const BoxOperator H(reg, diag);
  const HarnessOutcome out = resolvent_bound_from_suitability(H, 0.0, 12, {4.0, 0.5, 0});
  CHECK(out.hypotheses_hold);
  CHECK(out.conclusion_holds);
}

TEST_CASE("one defect with all hypotheses verified") {
  const Model m = model(1, 40.0);
  const int R = 70, r = 12;
  const BoxOperator big = on_box(m, R, 21);
  const Defect df{Site{0}, 12, 24};
  const double E = 5000.0;

  const HarnessOutcome res = resolvent_bound_with_defects(big, R, E, r, {7.0, 0.6, 0},
                                                          std::span<const Defect>(&df, 1));
  CHECK(res.violated.empty());
  CHECK(res.hypotheses_hold);
  CHECK(res.conclusion_holds);

  const Defect d2{Site{0}, 6, 18};
  const HarnessOutcome dec = decay_with_defects(big, R, E, 6, {1.0, 0.5, 3},
                                                std::span<const Defect>(&d2, 1), 1.0);
  CHECK(dec.violated.empty());
  CHECK(dec.hypotheses_hold);
  CHECK(dec.conclusion_holds);
}

TEST_CASE("moderate disorder sweep has no counterexamples") {
  const Model m = model(1, 30.0);
  Stream st(30);
  int held = 0;
  for (int i = 0; i < 100; ++i) {
    const BoxOperator big = on_box(m, 40, st.bits());
    const double E = st.uniform(-60.0, 60.0);
    const HarnessOutcome out = decay_from_subcubes(big, 40, E, 6, {1.0, 0.5, 3});
    CHECK_FALSE(out.counterexample());
    held += out.hypotheses_hold ? 1 : 0;
  }
  MESSAGE("hypotheses held in " << held << " of 100 trials");
}

TEST_CASE("entries below round-off are reported as unresolved") {
  const Model m = model(2, 40.0);
  const BoxOperator H = on_box(m, 4, 6);
  const Box box = centered_box(2, 4);
  // Far from the spectrum the corner-to-corner entry is near 1e-50, while
  // the allowed bound at gamma = 2 is near 1e-8.
  const SuitabilityReport loose = check_suitable(H, box, 1e5, {2.0, 0.5, 0});
  CHECK_FALSE(loose.unresolved);
  CHECK(loose.pass);
  const SuitabilityReport tight = check_suitable(H, box, 1e5, {20.0, 0.5, 0});
  CHECK(tight.unresolved);
  CHECK_FALSE(tight.pass);

  // One dimension has no floor.
  const BoxOperator C = on_box(model(1, 40.0), 12, 6);
  const SuitabilityReport chain = check_suitable(C, centered_box(1, 12), 1e5, {10.0, 0.5, 0});
  CHECK_FALSE(chain.unresolved);
  CHECK(chain.pass);
}

TEST_CASE("first unsuitable subcube") {
  const Model m = model(1, 40.0);
  const BoxOperator big = on_box(m, 20, 2);
  CHECK_FALSE(first_unsuitable_subcube(big, big.region(), 4, 500.0, {1.0, 0.5, 0}).has_value());
  std::vector<double> diag = big.diagonal();
  diag[big.region().index(Site{7})] = 1.25;
  const auto bad = first_unsuitable_subcube(big.with_diagonal(diag), big.region(), 4, 1.25,
                                            {1.0, 0.5, 0});
  REQUIRE(bad.has_value());
  CHECK(dist_inf(*bad, Site{7}) <= 4);
}

}  // TEST_SUITE
