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

#ifndef LOCLAB_MODEL_HPP
#define LOCLAB_MODEL_HPP

#include <cstdint>
#include <memory>
#include <string>

#include "loclab/disorder.hpp"
#include "loclab/operator.hpp"
#include "loclab/potential.hpp"

namespace loclab {

/// Parameters of an alloy-type Anderson model.
struct ModelConfig {
  int dim = 1;
  double lambda = 1.0;
  std::string phi = "alt-exp";
  double c = 1.0;
  std::string density = "uniform";
  /// Negative selects the default radius for (lambda, c).
  int truncation_radius = -1;
};

/// Throws ErrorCode::config naming the offending field.
void validate(const ModelConfig& cfg);

class Model {
 public:
  explicit Model(ModelConfig cfg);

  const ModelConfig& config() const { return cfg_; }
  const Potential& potential() const { return *potential_; }
  int dim() const { return cfg_.dim; }
  double lambda() const { return cfg_.lambda; }
  int reach() const { return potential_->reach(); }

  /// Box enlarged by the truncation radius.
  Box support_box(const Box& box) const { return Box{box.center, box.radius + reach()}; }
  /// Disorder on the support needed for box.
  DisorderField sample_field(const Box& box, std::uint64_t seed) const;
  BoxOperator hamiltonian(const Box& box, const DisorderField& field) const;
  BoxOperator hamiltonian(std::shared_ptr<const Region> region, const DisorderField& field) const;

 private:
  ModelConfig cfg_;
  std::shared_ptr<const Potential> potential_;
};

}  // namespace loclab

#endif
