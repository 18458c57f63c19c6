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


#include "loclab/spectra.hpp"

#include "doctest.h"
#include "loclab/csv.hpp"
#include "loclab/rng.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace loclab;
using testing::error_of;

namespace {

Model make_model(int d, double lambda) {
  ModelConfig c;
  c.dim = d;
  c.lambda = lambda;
  return Model(c);
}

// Exact counting function of the free path with N sites.
double path_count(int N, double E) {
  int count = 0;
  for (int k = 1; k <= N; ++k) count += 2.0 * std::cos(k * std::numbers::pi / (N + 1)) <= E ? 1 : 0;
  return static_cast<double>(count) / N;
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("free IDS in one dimension") {
  const Model free = make_model(1, 0.0);
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(-2.1 + 4.2 * i / 40.0 + 0.013);
  const IDSTable small = ids(free, 25, grid, 2, 1);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(small.N_hat[i] == doctest::Approx(path_count(51, grid[i])).epsilon(1e-12));
  const IDSTable big = ids(free, 500, grid, 1, 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double closed = grid[i] <= -2 ? 0.0 : grid[i] >= 2 ? 1.0
                                              : std::acos(-grid[i] / 2) / std::numbers::pi;
    CHECK(std::abs(big.N_hat[i] - closed) <= 0.02);
    CHECK(free_ids_1d(grid[i]) == doctest::Approx(closed));
  }
}

TEST_CASE("IDS is a distribution function") {
  const Model m = make_model(1, 40.0);
  std::vector<double> grid;
  for (int i = 0; i <= 60; ++i) grid.push_back(-80.0 + 160.0 * i / 60.0);
  const IDSTable t = ids(m, 40, grid, 20, 3);
  CHECK(t.N_hat.front() == 0.0);
  CHECK(t.N_hat.back() == 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(t.N_hat[i] >= 0.0);
    CHECK(t.N_hat[i] <= 1.0);
    if (i > 0) CHECK(t.N_hat[i] >= t.N_hat[i - 1]);
  }
  CHECK(error_of([&] { ids(make_model(2, 1.0), 40, grid, 1, 1); }) == ErrorCode::capacity);
}

TEST_CASE("Wegner ratio") {
  const Model m = make_model(1, 10.0);
  const WegnerEstimate all = wegner_ratio(m, 20, 0.0, 100.0, 5, 1);
  CHECK(all.ratio == doctest::Approx(1.0));

  // Disjoint windows tiling the spectrum partition the eigenvalues.
  double total = 0.0;
  for (int i = 0; i < 80; ++i) total += wegner_ratio(m, 20, -40.0 + 0.5 + i, 0.5, 1, 7).ratio;
  CHECK(total == doctest::Approx(1.0));

  const std::vector<double> eps{0.3, 0.1, 0.03, 0.01};
  const auto rows = wegner_sweep(make_model(1, 40.0), 100, 0.0, eps, 40, 2);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].ratio <= rows[i - 1].ratio + 3 * rows[i - 1].std_error);
  const WegnerEnvelope env = fit_wegner_envelope(rows);
  CHECK(env.points == 4);
  CHECK(error_of([&] { wegner_ratio(m, 20, 0.0, 0.0, 5, 1); }) == ErrorCode::domain);
}

TEST_CASE("MSA to Wegner conversion") {
  const auto psi = [](double r) { return std::pow(r, -4.0); };
  const MsaToWegner a = msa_to_wegner(psi, 1, 0.5, std::exp(-9.0));
  CHECK(a.r == 27);
  CHECK(a.s == 243);
  CHECK(a.bound == doctest::Approx(7.0 / (27.0 * 27.0)));
  CHECK(msa_to_wegner(psi, 1, 0.5, std::exp(-16.0)).bound < a.bound);
  const MsaToWegner one = msa_to_wegner([](double) { return 1.0; }, 2, 0.5, 0.01);
  CHECK(one.bound == doctest::Approx(7.0));
  const MsaToWegner b = msa_to_wegner(psi, 2, 0.5, std::exp(-12.0));
  CHECK(b.r == 48);
  CHECK(b.bound == doctest::Approx(7.0 * std::pow(48.0, -4.0 / 3.0)));
}

TEST_CASE("spectrum path union") {
  const SpectrumPathResult r = spectrum_path_union(make_model(1, 10.0), 60, 200, 4);
  CHECK(r.weyl_ok);
  CHECK(r.max_weyl_excess <= 1e-9);
  CHECK(r.union_ok);
  CHECK(r.max_union_gap <= r.tolerance);
  CHECK(r.endpoint_ok);
  CHECK(error_of([] { spectrum_path_union(make_model(1, 1.0), 10, 1, 1); }) == ErrorCode::domain);
}

}  // TEST_SUITE

TEST_SUITE("csv") {

TEST_CASE("writer layout") {
  std::ostringstream out;
  CsvWriter w(out, {"a", "b", "c"});
  w << 1 << std::string("x") << 0.5;
  w.end_row();
  w << true << "y" << -2.0;
  w.end_row();
  CHECK(w.rows() == 2);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "a,b,c");
  std::getline(in, line);
  CHECK(line.rfind("1,x,", 0) == 0);
  CHECK(std::stod(line.substr(4)) == 0.5);
  w << 1;
  CHECK(error_of([&] { w.end_row(); }).has_value());
  CHECK(std::stod(format_double(0.1)) == 0.1);
}

}  // TEST_SUITE
