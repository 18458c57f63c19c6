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


#ifndef LOCLAB_TOOLS_COMMANDS_HPP
#define LOCLAB_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "loclab/green.hpp"
#include "loclab/model.hpp"

namespace loclab::cli {

struct Config {
  // model
  int dim = 1;
  double lambda = 1.0;
  std::string phi = "alt-exp";
  double c = 1.0;
  std::string density = "uniform";
  int truncation_radius = -1;
  // energies
  std::vector<double> E{0.0};
  double E_min = -3.0;
  double E_max = 3.0;
  int E_points = 41;
  // suitability
  double gamma = 1.0;
  double tau = 0.5;
  int p = 3;
  // scales and sampling
  std::vector<int> r{4};
  int R = 20;
  long trials = 200;
  long realizations = 20;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out = ".";
  // msa
  std::string alpha_variant = "thm";
  double alpha = 2.0;
  std::string regime = "wegner";
  int rungs = 3;
  double lambda_start = 1.0;
  int max_doublings = 16;
  bool gap_prefilter = true;
  // spectra
  std::vector<double> eps{0.4, 0.2, 0.1, 0.05, 0.02, 0.01};
  int steps = 200;
  // dynamics
  double t_max = 50.0;
  double dt = 0.5;
  double moment_p = 1.0;
  int max_s = 20;
  // cartan and combinatorics
  long samples = 1000000;
  long matrix_samples = 10000;
  int instances = 200;
};

/// Throws Error(config) naming the first invalid field.
void validate(const Config& cfg);

ModelConfig model_config(const Config& cfg);
SuitabilityParams suitability(const Config& cfg);
/// Explicit --E values, otherwise the E_min..E_max grid.
std::vector<double> energy_grid(const Config& cfg, bool explicit_E);
nlohmann::json to_json(const Config& cfg);

class Run {
 public:
  Run(const Config& cfg, std::string command);

  const Config& cfg() const { return cfg_; }
  const std::string& command() const { return command_; }
  /// Opens <out>/<name>.csv and records it in the manifest.
  std::ofstream open_csv(const std::string& name);
  void skip(const std::string& task, const std::string& reason);

  nlohmann::json summary = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::array();
  nlohmann::json skipped = nlohmann::json::array();

 private:
  const Config& cfg_;
  std::string command_;
  std::filesystem::path dir_;
};

void suitability_scan(Run& run);
void msa_run(Run& run);
void initial_scale(Run& run, bool explicit_E);
void ids(Run& run, bool explicit_E);
void wegner(Run& run);
void cartan_verify(Run& run);
void boxmerge_test(Run& run);
void dynamics(Run& run);
void spectrum_path(Run& run);
void theorem_check(Run& run);

}  // namespace loclab::cli

#endif
