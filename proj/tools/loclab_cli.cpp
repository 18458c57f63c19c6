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


#include <chrono>
#include <cstdio>
#include <iostream>
#include <thread>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json.hpp"
#include "loclab/error.hpp"
#include "loclab/version.hpp"

namespace {

using loclab::cli::Config;

const char* const kCommands[][2] = {
    {"suitability-scan", "Monte Carlo suitability of Lambda_r(0) per scale and energy"},
    {"msa-run", "acceptability estimates along a scale schedule"},
    {"initial-scale", "doubling search for the initial coupling lambda_0"},
    {"ids", "integrated density of states"},
    {"wegner", "eigenvalue-count ratio against eps"},
    {"cartan-verify", "Cartan bounds against Monte Carlo measure"},
    {"boxmerge-test", "random cube-merging instances with checks"},
    {"dynamics", "moments, decay profile and mass classes"},
    {"spectrum-path", "spectra along omega -> t omega"},
    {"theorem-check", "decay and resolvent theorems on random boxes"},
};

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

// FNV-1a over the canonical config dump.
std::uint64_t config_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void add_options(CLI::App& app, Config& cfg) {
  app.add_option("--dim", cfg.dim, "lattice dimension");
  app.add_option("--lambda", cfg.lambda, "coupling");
  app.add_option("--phi", cfg.phi, "single-site profile: alt-exp, delta or finite:v0,v1,...");
  app.add_option("--c", cfg.c, "decay constant of the profile");
  app.add_option("--density", cfg.density, "single-site density");
  app.add_option("--truncation-radius", cfg.truncation_radius, "-1 selects the default");
  app.add_option("--E", cfg.E, "energies")->delimiter(',');
  app.add_option("--E-min", cfg.E_min, "energy grid start");
  app.add_option("--E-max", cfg.E_max, "energy grid end");
  app.add_option("--E-points", cfg.E_points, "energy grid size");
  app.add_option("--gamma", cfg.gamma, "suitability decay rate");
  app.add_option("--tau", cfg.tau, "suitability exponent");
  app.add_option("--p", cfg.p, "suitability power");
  app.add_option("--r", cfg.r, "inner scales")->delimiter(',');
  app.add_option("--R", cfg.R, "outer box radius");
  app.add_option("--trials", cfg.trials, "Monte Carlo trials");
  app.add_option("--realizations", cfg.realizations, "disorder realizations");
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--jobs", cfg.jobs, "worker threads");
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--alpha-variant", cfg.alpha_variant, "thm or sec8");
  app.add_option("--alpha", cfg.alpha, "acceptability exponent");
  app.add_option("--regime", cfg.regime, "wegner or cartan");
  app.add_option("--rungs", cfg.rungs, "schedule length");
  app.add_option("--lambda-start", cfg.lambda_start, "first coupling of the doubling search");
  app.add_option("--max-doublings", cfg.max_doublings, "doubling search length");
  app.add_option("--gap-prefilter", cfg.gap_prefilter, "certify large-gap boxes without solving");
  app.add_option("--eps", cfg.eps, "window half-widths")->delimiter(',');
  app.add_option("--steps", cfg.steps, "path grid intervals");
  app.add_option("--t-max", cfg.t_max, "largest evolution time");
  app.add_option("--dt", cfg.dt, "time step");
  app.add_option("--moment-p", cfg.moment_p, "moment power");
  app.add_option("--max-s", cfg.max_s, "largest mass class");
  app.add_option("--samples", cfg.samples, "scalar Cartan samples");
  app.add_option("--matrix-samples", cfg.matrix_samples, "matrix Cartan samples");
  app.add_option("--instances", cfg.instances, "random instances");
}

void dispatch(const std::string& name, loclab::cli::Run& run, bool explicit_E) {
  namespace c = loclab::cli;
  if (name == "suitability-scan") return c::suitability_scan(run);
  if (name == "msa-run") return c::msa_run(run);
  if (name == "initial-scale") return c::initial_scale(run, explicit_E);
  if (name == "ids") return c::ids(run, explicit_E);
  if (name == "wegner") return c::wegner(run);
  if (name == "cartan-verify") return c::cartan_verify(run);
  if (name == "boxmerge-test") return c::boxmerge_test(run);
  if (name == "dynamics") return c::dynamics(run);
  if (name == "spectrum-path") return c::spectrum_path(run);
  return c::theorem_check(run);
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  CLI::App app{"loclab experiment runner"};
  app.set_config("--config", "", "INI configuration file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();
  app.require_subcommand(1);
  add_options(app, cfg);
  for (const auto& cmd : kCommands) app.add_subcommand(cmd[0], cmd[1]);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const bool explicit_E = app.count("--E") > 0;
  try {
    loclab::cli::validate(cfg);
  } catch (const loclab::Error& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  loclab::cli::Run run(cfg, name);
  int status = 0;
  try {
    dispatch(name, run, explicit_E);
  } catch (const loclab::Error& e) {
    if (e.code() == loclab::ErrorCode::config) {
      std::cerr << "invalid config: " << e.what() << '\n';
      return 2;
    }
    if (e.code() != loclab::ErrorCode::capacity) {
      std::cerr << "error (" << loclab::to_string(e.code()) << "): " << e.what() << '\n';
      return 1;
    }
    run.skip(name, e.what());
    std::cerr << "skipped: " << e.what() << '\n';
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const nlohmann::json config = loclab::cli::to_json(cfg);
  nlohmann::json manifest = {
      {"command", name},
      {"config", config},
      {"config_hash", hex64(config_hash(config.dump()))},
      {"seed", cfg.seed},
      {"jobs", cfg.jobs},
      {"versions",
       {{"loclab", loclab::kVersion},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                      "." + std::to_string(EIGEN_MINOR_VERSION)},
        {"cli11", CLI11_VERSION},
        {"compiler", __VERSION__}}},
      {"wall_time_s", wall},
      {"outputs", run.outputs},
      {"skipped", run.skipped},
      {"summary", run.summary}};
  std::ofstream(std::filesystem::path(cfg.out) / (name + ".manifest.json")) << manifest.dump(2)
                                                                              << '\n';
  std::cout << run.summary.dump() << '\n';
  return status;
}
