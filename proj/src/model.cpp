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

#include "loclab/model.hpp"

#include <cmath>

#include "loclab/error.hpp"

namespace loclab {

void validate(const ModelConfig& cfg) {
  require(cfg.dim >= 1 && cfg.dim <= kMaxDim, ErrorCode::config,
          "dimension: must be in [1, " + std::to_string(kMaxDim) + "]");
  require(std::isfinite(cfg.lambda) && cfg.lambda >= 0.0, ErrorCode::config,
          "lambda: must be finite and non-negative");
  require(std::isfinite(cfg.c) && cfg.c > 0.0, ErrorCode::config, "c: must be positive");
  require(cfg.truncation_radius >= -1, ErrorCode::config,
          "truncation_radius: must be non-negative (or -1 for the default)");
  DensityRegistry::instance().get(cfg.density);
  SingleSite::parse(cfg.phi, cfg.dim, cfg.c);
}

Model::Model(ModelConfig cfg) : cfg_(std::move(cfg)) {
  validate(cfg_);
  potential_ = std::make_shared<AlloyPotential>(SingleSite::parse(cfg_.phi, cfg_.dim, cfg_.c),
                                                cfg_.lambda, cfg_.truncation_radius);
}

DisorderField Model::sample_field(const Box& box, std::uint64_t seed) const {
  return sample(Region::from_box(support_box(box)), seed, cfg_.density);
}

BoxOperator Model::hamiltonian(const Box& box, const DisorderField& field) const {
  return assemble(box, *potential_, field);
}

BoxOperator Model::hamiltonian(std::shared_ptr<const Region> region,
                               const DisorderField& field) const {
  return assemble(std::move(region), *potential_, field);
}

}  // namespace loclab
