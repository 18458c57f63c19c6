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


#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loclab/boxmerge.hpp"
#include "loclab/cartan.hpp"
#include "loclab/csv.hpp"
#include "loclab/dynamics.hpp"
#include "loclab/error.hpp"
#include "loclab/msa.hpp"
#include "loclab/parallel.hpp"
#include "loclab/rng.hpp"
#include "loclab/spectra.hpp"

namespace loclab::cli {

namespace {

void field(bool ok, const std::string& name, const std::string& msg) {
  require(ok, ErrorCode::config, name + ": " + msg);
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : ";") + p;
  return s.empty() ? "-" : s;
}

bool fits(int R, int d) { return box_cardinality(R, d) <= static_cast<long>(kSiteCapacity); }

}  // namespace

void validate(const Config& cfg) {
  loclab::validate(model_config(cfg));
  try {
    loclab::validate(suitability(cfg));
  } catch (const Error& e) {
    throw Error(ErrorCode::config, std::string("gamma/tau/p: ") + e.what());
  }
  field(!cfg.E.empty(), "E", "needs at least one energy");
  for (double e : cfg.E) field(std::isfinite(e), "E", "must be finite");
  field(cfg.E_min < cfg.E_max, "E_min", "must be below E_max");
  field(cfg.E_points >= 2, "E_points", "must be at least 2");
  field(!cfg.r.empty(), "r", "needs at least one scale");
  for (int r : cfg.r) field(r >= 1, "r", "must be at least 1");
  field(cfg.R >= 1, "R", "must be at least 1");
  field(cfg.trials >= 1, "trials", "must be at least 1");
  field(cfg.realizations >= 1, "realizations", "must be at least 1");
  field(cfg.jobs >= 1, "jobs", "must be at least 1");
  try {
    parse_alpha_variant(cfg.alpha_variant);
  } catch (const Error& e) {
    throw Error(ErrorCode::config, e.what());
  }
  field(cfg.alpha > 0.0, "alpha", "must be positive");
  field(cfg.regime == "wegner" || cfg.regime == "cartan", "regime",
        "expected 'wegner' or 'cartan'");
  field(cfg.rungs >= 1, "rungs", "must be at least 1");
  field(cfg.lambda_start > 0.0, "lambda_start", "must be positive");
  field(cfg.max_doublings >= 0, "max_doublings", "must be non-negative");
  field(!cfg.eps.empty(), "eps", "needs at least one value");
  for (double e : cfg.eps) field(e > 0.0, "eps", "must be positive");
  field(cfg.steps >= 2, "steps", "must be at least 2");
  field(cfg.t_max >= 0.0, "t_max", "must be non-negative");
  field(cfg.dt > 0.0, "dt", "must be positive");
  field(cfg.max_s >= 0, "max_s", "must be non-negative");
  field(cfg.samples >= 1, "samples", "must be at least 1");
  field(cfg.matrix_samples >= 1, "matrix_samples", "must be at least 1");
  field(cfg.instances >= 1, "instances", "must be at least 1");
}

ModelConfig model_config(const Config& cfg) {
  return ModelConfig{cfg.dim, cfg.lambda, cfg.phi, cfg.c, cfg.density, cfg.truncation_radius};
}

SuitabilityParams suitability(const Config& cfg) { return {cfg.gamma, cfg.tau, cfg.p}; }

std::vector<double> energy_grid(const Config& cfg, bool explicit_E) {
  if (explicit_E) return cfg.E;
  std::vector<double> g;
  for (int i = 0; i < cfg.E_points; ++i)
    g.push_back(cfg.E_min + (cfg.E_max - cfg.E_min) * i / (cfg.E_points - 1));
  return g;
}

nlohmann::json to_json(const Config& cfg) {
  return {{"dim", cfg.dim},
          {"lambda", cfg.lambda},
          {"phi", cfg.phi},
          {"c", cfg.c},
          {"density", cfg.density},
          {"truncation_radius", cfg.truncation_radius},
          {"E", cfg.E},
          {"E_min", cfg.E_min},
          {"E_max", cfg.E_max},
          {"E_points", cfg.E_points},
          {"gamma", cfg.gamma},
          {"tau", cfg.tau},
          {"p", cfg.p},
          {"r", cfg.r},
          {"R", cfg.R},
          {"trials", cfg.trials},
          {"realizations", cfg.realizations},
          {"seed", cfg.seed},
          {"alpha_variant", cfg.alpha_variant},
          {"alpha", cfg.alpha},
          {"regime", cfg.regime},
          {"rungs", cfg.rungs},
          {"lambda_start", cfg.lambda_start},
          {"max_doublings", cfg.max_doublings},
          {"gap_prefilter", cfg.gap_prefilter},
          {"eps", cfg.eps},
          {"steps", cfg.steps},
          {"t_max", cfg.t_max},
          {"dt", cfg.dt},
          {"moment_p", cfg.moment_p},
          {"max_s", cfg.max_s},
          {"samples", cfg.samples},
          {"matrix_samples", cfg.matrix_samples},
          {"instances", cfg.instances}};
}

Run::Run(const Config& cfg, std::string command)
    : cfg_(cfg), command_(std::move(command)), dir_(cfg.out) {
  std::filesystem::create_directories(dir_);
}

std::ofstream Run::open_csv(const std::string& name) {
  const std::filesystem::path path = dir_ / (name + ".csv");
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorCode::config, "out: cannot write " + path.string());
  outputs.push_back(path.filename().string());
  return f;
}

void Run::skip(const std::string& task, const std::string& reason) {
  skipped.push_back({{"task", task}, {"reason", reason}});
}

void suitability_scan(Run& run) {
  const Config& cfg = run.cfg();
  const Model model(model_config(cfg));
  const SuitabilityParams params = suitability(cfg);
  std::ofstream f = run.open_csv("suitability_scan");
  CsvWriter csv(f, {"seed", "trial", "d", "lambda", "r", "E", "gamma", "tau", "p", "status",
                    "pass", "singular", "res_norm", "worst_ratio"});
  for (std::size_t ri = 0; ri < cfg.r.size(); ++ri) {
    const int r = cfg.r[ri];
    for (std::size_t ei = 0; ei < cfg.E.size(); ++ei) {
      const double E = cfg.E[ei];
      if (!fits(r, model.dim())) {
        csv << cfg.seed << -1 << cfg.dim << cfg.lambda << r << E << cfg.gamma << cfg.tau << cfg.p
            << "skipped_capacity" << false << false << kNaN << kNaN;
        csv.end_row();
        run.skip("r=" + std::to_string(r), "box exceeds site capacity");
        continue;
      }
      const Box box = centered_box(model.dim(), r);
      auto region = std::make_shared<const Region>(Region::from_box(box));
      std::vector<SuitabilityReport> reps(static_cast<std::size_t>(cfg.trials));
      std::vector<std::uint64_t> seeds(reps.size());
      parallel_for(reps.size(), cfg.jobs, [&](std::size_t t) {
        seeds[t] = derive_seed(cfg.seed, {ri, ei, t});
        reps[t] = check_suitable(model.hamiltonian(region, model.sample_field(box, seeds[t])),
                                 box, E, params);
      });
      long failures = 0;
      for (std::size_t t = 0; t < reps.size(); ++t) {
        failures += reps[t].pass ? 0 : 1;
        csv << seeds[t] << static_cast<long>(t) << cfg.dim << cfg.lambda << r << E << cfg.gamma
            << cfg.tau << cfg.p << "ok" << reps[t].pass << reps[t].singular
            << reps[t].resolvent_norm << reps[t].worst_ratio;
        csv.end_row();
      }
      run.summary["scan"].push_back(
          {{"r", r}, {"E", E}, {"failures", failures},
           {"p_hat", static_cast<double>(failures) / static_cast<double>(cfg.trials)}});
    }
  }
}

void msa_run(Run& run) {
  const Config& cfg = run.cfg();
  const Model model(model_config(cfg));
  const Regime regime = cfg.regime == "wegner" ? Regime::wegner : Regime::cartan;
  const ScaleSchedule sch =
      build_schedule(regime, cfg.dim, cfg.r.front(), cfg.gamma, cfg.alpha, cfg.c, cfg.rungs,
                     parse_alpha_variant(cfg.alpha_variant));
  const auto rungs = run_ladder(model, sch, cfg.E.front(), cfg.trials, cfg.seed, cfg.jobs);
  std::ofstream f = run.open_csv("msa_run");
  CsvWriter csv(f, {"k", "r", "gamma", "alpha", "status", "trials", "failures", "p_hat",
                    "std_error", "target", "verdict", "seed"});
  for (const auto& rr : rungs) {
    const std::uint64_t s = derive_seed(cfg.seed, {static_cast<std::uint64_t>(rr.entry.k)});
    csv << rr.entry.k << rr.entry.r << rr.entry.gamma << rr.entry.alpha
        << (rr.skipped ? "skipped_capacity" : "ok") << rr.estimate.trials << rr.estimate.failures
        << rr.estimate.p_hat << rr.estimate.std_error << rr.estimate.target << rr.verdict << s;
    csv.end_row();
    if (rr.skipped) run.skip("rung " + std::to_string(rr.entry.k), "box exceeds site capacity");
    else run.summary["verdicts"].push_back({{"k", rr.entry.k}, {"verdict", rr.verdict}});
  }
}

void initial_scale(Run& run, bool explicit_E) {
  const Config& cfg = run.cfg();
  const std::vector<double> energies = explicit_E ? cfg.E : std::vector<double>{0.0};
  InitialScaleOptions opt;
  opt.lambda_start = cfg.lambda_start;
  opt.max_doublings = cfg.max_doublings;
  opt.trials = cfg.trials;
  opt.seed = cfg.seed;
  opt.params = suitability(cfg);
  opt.gap_prefilter = cfg.gap_prefilter;
  opt.jobs = cfg.jobs;
  const InitialScaleResult res =
      initial_scale_search(model_config(cfg), cfg.r.front(), cfg.alpha, energies, opt);
  std::ofstream f = run.open_csv("initial_scale");
  CsvWriter csv(f, {"lambda", "E", "trials", "failures", "prefiltered", "p_hat", "std_error",
                    "target", "meets_target", "seed"});
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const auto& row = res.rows[i];
    const std::uint64_t s = derive_seed(cfg.seed, {i / energies.size(), i % energies.size()});
    csv << row.lambda << row.estimate.E << row.estimate.trials << row.estimate.failures
        << row.prefiltered << row.estimate.p_hat << row.estimate.std_error << row.estimate.target
        << row.estimate.meets_target_3sigma() << s;
    csv.end_row();
  }
  run.summary["found"] = res.found;
  run.summary["lambda0"] = res.found ? nlohmann::json(res.lambda0) : nlohmann::json(nullptr);
}

void ids(Run& run, bool explicit_E) {
  const Config& cfg = run.cfg();
  const Model model(model_config(cfg));
  const std::vector<double> grid = energy_grid(cfg, explicit_E);
  const IDSTable t = loclab::ids(model, cfg.R, grid, cfg.realizations, cfg.seed, cfg.jobs);
  std::ofstream f = run.open_csv("ids");
  CsvWriter csv(f, {"E", "N_hat", "std_error", "R", "realizations", "seed"});
  double free_dev = 0.0;
  bool monotone = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << t.E[i] << t.N_hat[i] << t.std_error[i] << t.R << t.realizations << t.seed;
    csv.end_row();
    free_dev = std::max(free_dev, std::abs(t.N_hat[i] - free_ids_1d(t.E[i])));
    if (i > 0 && t.E[i] >= t.E[i - 1] && t.N_hat[i] < t.N_hat[i - 1]) monotone = false;
  }
  run.summary["monotone"] = monotone;
  if (cfg.dim == 1 && cfg.lambda == 0.0) run.summary["free_sup_deviation"] = free_dev;
}

void wegner(Run& run) {
  const Config& cfg = run.cfg();
  const Model model(model_config(cfg));
  const auto rows =
      wegner_sweep(model, cfg.R, cfg.E.front(), cfg.eps, cfg.realizations, cfg.seed, cfg.jobs);
  std::ofstream f = run.open_csv("wegner");
  CsvWriter csv(f, {"eps", "ratio", "std_error", "E", "R", "realizations", "seed"});
  for (const auto& w : rows) {
    csv << w.eps << w.ratio << w.std_error << cfg.E.front() << cfg.R << w.realizations
        << cfg.seed;
    csv.end_row();
  }
  const WegnerEnvelope env = fit_wegner_envelope(rows);
  run.summary["beta_hat"] = env.beta_hat;
  run.summary["envelope_points"] = env.points;
}

void cartan_verify(Run& run) {
  const Config& cfg = run.cfg();
  std::ofstream f = run.open_csv("cartan_verify");
  CsvWriter csv(f, {"family", "kind", "density", "n", "N", "s", "samples", "hits", "measured",
                    "std_error", "bound", "pass", "seed"});
  bool all = true;
  const auto scalars = shipped_scalar_families();
  for (std::size_t fi = 0; fi < scalars.size(); ++fi) {
    const AnalyticScalar& fn = scalars[fi].f;
    const double L = std::log(1.0 / fn.eps);
    const double volume = std::ldexp(1.0, fn.n);
    const double pref = fn.n == 1 ? cartan_bound_1d(fn.eps, 1e-300)
                                  : cartan_bound_nd(fn.n, fn.eps, 1e-300);
    const double fractions[] = {0.5, 0.01};
    for (std::size_t k = 0; k < 2; ++k) {
      const double s = L * std::log(pref / (fractions[k] * volume));
      const std::uint64_t seed = derive_seed(cfg.seed, {0, fi, k});
      const McMeasure m = sublevel_measure(fn, s, cfg.samples, seed, cfg.jobs);
      const double bound =
          fn.n == 1 ? cartan_bound_1d(fn.eps, s) : cartan_bound_nd(fn.n, fn.eps, s);
      const bool pass = m.measured - 3.0 * m.std_error <= bound;
      all = all && pass;
      csv << scalars[fi].name << "scalar" << "lebesgue" << fn.n << 1 << s << m.samples << m.hits
          << m.measured << m.std_error << bound << pass << seed;
      csv.end_row();
    }
  }
  const auto matrices = shipped_matrix_families();
  const char* densities[] = {"uniform", "triangular"};
  for (std::size_t fi = 0; fi < matrices.size(); ++fi) {
    const AnalyticMatrixFamily& fam = matrices[fi].family;
    for (std::size_t di = 0; di < 2; ++di) {
      const double rho = DensityRegistry::instance().get(densities[di]).sup_norm;
      for (std::size_t k = 0; k < 2; ++k) {
        const double s = matrix_cartan_threshold(fam, rho) * (1.0 + 0.5 * k);
        const std::uint64_t seed = derive_seed(cfg.seed, {1, fi, di, k});
        const McMeasure m =
            matrix_event_measure(fam, s, cfg.matrix_samples, seed, densities[di], cfg.jobs);
        const double bound = matrix_cartan_bound(fam, s, rho);
        const bool pass = m.measured - 3.0 * m.std_error <= bound;
        all = all && pass;
        csv << matrices[fi].name << "matrix" << densities[di] << fam.n << fam.N << s << m.samples
            << m.hits << m.measured << m.std_error << bound << pass << seed;
        csv.end_row();
      }
    }
    for (std::size_t k = 0; k < 2; ++k) {
      const double s = matrix_cartan_threshold_density_free(fam) * (1.0 + 0.5 * k);
      const std::uint64_t seed = derive_seed(cfg.seed, {2, fi, k});
      const McMeasure m = matrix_event_measure(fam, s, cfg.matrix_samples, seed, "uniform",
                                               cfg.jobs);
      const double bound = matrix_cartan_bound_density_free(fam, s);
      const bool pass = m.measured - 3.0 * m.std_error <= bound;
      all = all && pass;
      csv << matrices[fi].name << "matrix_density_free" << "uniform" << fam.n << fam.N << s
          << m.samples << m.hits << m.measured << m.std_error << bound << pass << seed;
      csv.end_row();
    }
  }
  run.summary["all_pass"] = all;
}

void boxmerge_test(Run& run) {
  const Config& cfg = run.cfg();
  std::ofstream f = run.open_csv("boxmerge_test");
  CsvWriter csv(f, {"trial", "seed", "variant", "d", "K", "r", "R", "Q", "status", "J",
                    "escalations", "cond_i", "cond_ii", "cond_iii"});
  long violations = 0, completed = 0;
  for (int i = 0; i < cfg.instances; ++i) {
    const std::uint64_t seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(i)});
    Stream st(seed);
    const bool acceptable = i % 2 == 1;
    const int d = 1 + static_cast<int>(st.below(2));
    const int K = 1 + static_cast<int>(st.below(4));
    const int r = 1 + static_cast<int>(st.below(2));
    const int R = 10 + static_cast<int>(st.below(21));
    const int gap = acceptable ? 3 * r + static_cast<int>(st.below(2))
                               : static_cast<int>(st.below(2));
    const ScaleLadder ladder = geometric_ladder(r, gap, R);
    std::vector<Site> pts;
    for (int k = 0; k < K; ++k) {
      Site p(d);
      for (int j = 0; j < d; ++j) p[j] = static_cast<int>(st.below(2 * R + 1)) - R;
      pts.push_back(p);
    }
    csv << i << seed << (acceptable ? "acceptable" : "plain") << d << K << r << R << ladder.size();
    try {
      const MergeOptions opt{false};
      const MergeResult res = acceptable ? merge_acceptable(pts, ladder, r, R, opt)
                                         : merge(pts, ladder, r, R, opt);
      const bool disjoint = merge_disjoint(res, ladder, R);
      const bool covers = merge_covers(res, pts, ladder, r, R);
      std::string comp = "na";
      if (acceptable) {
        const auto c = merge_complement_acceptable(res, ladder, r, R);
        comp = c ? (*c ? "1" : "0") : "undetermined";
        if (c && !*c) ++violations;
      }
      violations += (disjoint ? 0 : 1) + (covers ? 0 : 1);
      ++completed;
      csv << "ok" << static_cast<long>(res.count()) << res.escalations << disjoint << covers
          << comp;
    } catch (const Error& e) {
      csv << to_string(e.code()) << 0 << 0 << false << false << "na";
    }
    csv.end_row();
  }
  run.summary["completed"] = completed;
  run.summary["violations"] = violations;
}

void dynamics(Run& run) {
  const Config& cfg = run.cfg();
  const Model model(model_config(cfg));
  const Box box = centered_box(cfg.dim, cfg.R);
  const BoxOperator H = model.hamiltonian(box, model.sample_field(box, cfg.seed));
  const Evolution ev(H);

  std::vector<double> grid;
  const int n = static_cast<int>(std::floor(cfg.t_max / cfg.dt + 1e-9));
  for (int i = 0; i <= n; ++i) grid.push_back(i * cfg.dt);
  const MomentResult m = moment(ev, cfg.moment_p, grid);
  {
    std::ofstream f = run.open_csv("dynamics_moments");
    CsvWriter csv(f, {"t", "X_p", "p", "seed"});
    for (std::size_t i = 0; i < m.t.size(); ++i) {
      csv << m.t[i] << m.values[i] << cfg.moment_p << cfg.seed;
      csv.end_row();
    }
  }
  const MomentDominance dom = moment_dominance(ev, cfg.moment_p, grid);

  const SpectralData& sd = H.spectrum();
  Eigen::Index a = 0;
  (sd.values.array() - cfg.E.front()).abs().minCoeff(&a);
  const Eigen::VectorXd v = sd.vectors.col(a);
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const DecayFit fit = decay_profile(H.region(), v, H.region()[static_cast<std::size_t>(imax)]);
  {
    std::ofstream f = run.open_csv("dynamics_decay");
    CsvWriter csv(f, {"shell", "max_amp", "eigenvalue", "seed"});
    for (std::size_t i = 0; i < fit.shell.size(); ++i) {
      csv << fit.shell[i] << fit.max_amp[i] << sd.values(a) << cfg.seed;
      csv.end_row();
    }
  }
  const MassClassReport mc = mass_classes(H, cfg.max_s);
  {
    std::ofstream f = run.open_csv("dynamics_classes");
    CsvWriter csv(f, {"s", "count", "mass", "shape_bound", "within_shape", "seed"});
    for (const auto& c : mc.classes) {
      csv << c.s << static_cast<long>(c.members.size()) << c.mass << c.shape_bound
          << c.within_shape << cfg.seed;
      csv.end_row();
    }
  }
  run.summary["X_hat"] = m.X_hat;
  run.summary["horizon_exceeded"] = m.horizon_exceeded;
  run.summary["max_norm_defect"] = m.max_norm_defect;
  run.summary["dominance_bound"] = dom.triangle_bound;
  run.summary["dominance_holds"] = dom.holds;
  run.summary["diagonal_form"] = dom.diagonal_form;
  run.summary["diagonal_form_holds"] = dom.diagonal_form_holds;
  run.summary["decay_rate_exp"] = fit.rate_exp;
  run.summary["decay_r2_exp"] = fit.r2_exp;
  run.summary["decay_rate_sqrt"] = fit.rate_sqrt;
  run.summary["decay_r2_sqrt"] = fit.r2_sqrt;
  run.summary["decay_degenerate"] = fit.degenerate;
  run.summary["median_decay_rate"] = median_decay_rate(H);
  run.summary["completeness"] = mc.completeness;
  run.summary["beyond_max_s"] = mc.beyond_max_s;
}

void spectrum_path(Run& run) {
  const Config& cfg = run.cfg();
  const Model model(model_config(cfg));
  const SpectrumPathResult res = spectrum_path_union(model, cfg.R, cfg.steps, cfg.seed);
  std::ofstream f = run.open_csv("spectrum_path");
  CsvWriter csv(f, {"R", "steps", "seed", "lipschitz_step", "level_spacing", "tolerance",
                    "max_weyl_excess", "weyl_ok", "max_union_gap", "union_ok", "endpoint_ok"});
  csv << cfg.R << res.steps << cfg.seed << res.lipschitz_step << res.level_spacing
      << res.tolerance << res.max_weyl_excess << res.weyl_ok << res.max_union_gap << res.union_ok
      << res.endpoint_ok;
  csv.end_row();
  run.summary["weyl_ok"] = res.weyl_ok;
  run.summary["union_ok"] = res.union_ok;
  run.summary["endpoint_ok"] = res.endpoint_ok;
}

void theorem_check(Run& run) {
  const Config& cfg = run.cfg();
  const Model model(model_config(cfg));
  const SuitabilityParams params = suitability(cfg);
  const char* names[] = {"decay_from_subcubes", "decay_with_defects",
                         "resolvent_bound_from_suitability", "resolvent_bound_with_defects"};
  struct Row {
    std::uint64_t seed = 0;
    int theorem = 0;
    int r = 0;
    double E = 0.0;
    std::string status = "ok";
    HarnessOutcome out;
  };
  const Box box = centered_box(cfg.dim, cfg.R);
  auto region = std::make_shared<const Region>(Region::from_box(box));
  std::vector<Row> rows(static_cast<std::size_t>(cfg.instances));
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    Row& row = rows[i];
    row.seed = derive_seed(cfg.seed, {i});
    row.theorem = static_cast<int>(i % 4);
    Stream st(row.seed);
    row.r = cfg.r[static_cast<std::size_t>(st.below(static_cast<int>(cfg.r.size())))];
    row.E = st.uniform(cfg.E_min, cfg.E_max);
    try {
      const BoxOperator big = model.hamiltonian(region, model.sample_field(box, st.bits()));
      std::vector<Defect> defects;
      if (row.theorem % 2 == 1) {
        const int s = row.r, t = s + 2 * row.r;
        require(t <= cfg.R, ErrorCode::scale, "defect does not fit");
        Site m(cfg.dim);
        for (int j = 0; j < cfg.dim; ++j)
          m[j] = static_cast<int>(st.below(2 * (cfg.R - t) + 1)) - (cfg.R - t);
        defects.push_back({m, s, t});
      }
      switch (row.theorem) {
        case 0: row.out = decay_from_subcubes(big, cfg.R, row.E, row.r, params); break;
        case 1: row.out = decay_with_defects(big, cfg.R, row.E, row.r, params, defects, 1.0); break;
        case 2: row.out = resolvent_bound_from_suitability(big, row.E, row.r, params); break;
        default:
          row.out = resolvent_bound_with_defects(big, cfg.R, row.E, row.r, params, defects);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::capacity) throw;
      row.status = to_string(e.code());
    }
  });
  std::ofstream f = run.open_csv("theorem_check");
  CsvWriter csv(f, {"instance", "seed", "theorem", "r", "R", "E", "status", "hypotheses_hold",
                    "violated", "measured", "bound", "conclusion_holds", "undetermined",
                    "counterexample"});
  long hyp = 0, counter = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    const bool ok = row.status == "ok";
    csv << static_cast<long>(i) << row.seed << names[row.theorem] << row.r << cfg.R << row.E
        << row.status << (ok && row.out.hypotheses_hold) << join(row.out.violated)
        << row.out.measured << row.out.bound << (ok && row.out.conclusion_holds)
        << (ok && row.out.undetermined) << (ok && row.out.counterexample());
    csv.end_row();
    hyp += ok && row.out.hypotheses_hold ? 1 : 0;
    counter += ok && row.out.counterexample() ? 1 : 0;
  }
  run.summary["hypotheses_satisfied"] = hyp;
  run.summary["counterexamples"] = counter;
}

}  // namespace loclab::cli
