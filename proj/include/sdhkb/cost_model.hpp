/*******************************************************************************
 * Copyright 2026 the sdhkb authors
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
 *******************************************************************************/

#ifndef SDHKB_COST_MODEL_HPP
#define SDHKB_COST_MODEL_HPP

#include <span>

#include "sdhkb/types.hpp"

namespace sdhkb {

/// Floor for predicted time and energy; keeps costs strictly positive so that
/// recommendation ordering stays well-defined while a model is still raw.
inline constexpr double kPredictionFloor = 1e-6;

struct Prediction {
    double time_ms = 0.0;
    double energy_mj = 0.0;
};

/// Linear prediction: max(floor, intercept + coefficients . metadata), for
/// time and energy independently. Pure; throws on dimension mismatch.
Prediction predict(const CostModel& model, std::span<const double> metadata);

/// One normalized-least-mean-squares step against an observation:
///   params += rate * error * [1, metadata] / (1 + |metadata|^2)
/// applied to the time and energy parameter vectors with their respective
/// errors. Returns the refined model with update_count incremented.
CostModel updated(const CostModel& model, const Observation& obs, double rate);

} // namespace sdhkb

#endif
