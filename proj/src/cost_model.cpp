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

#include "sdhkb/cost_model.hpp"

#include <algorithm>

#include "sdhkb/error.hpp"

namespace sdhkb {

namespace {

double affine(std::span<const double> params, std::span<const double> metadata) {
    double acc = params[0];
    for (std::size_t i = 0; i < metadata.size(); ++i) {
        acc += params[i + 1] * metadata[i];
    }
    return acc;
}

void check_dims(const CostModel& model, std::span<const double> metadata) {
    if (model.time_params.size() != metadata.size() + 1 ||
        model.energy_params.size() != metadata.size() + 1) {
        throw Error(ErrorCode::dimension_mismatch,
                    "metadata of length " + std::to_string(metadata.size()) +
                        " does not fit a model with " +
                        std::to_string(model.time_params.size()) +
                        " parameters");
    }
}

} // namespace

Prediction predict(const CostModel& model, std::span<const double> metadata) {
    check_dims(model, metadata);
    return Prediction{
        std::max(kPredictionFloor, affine(model.time_params, metadata)),
        std::max(kPredictionFloor, affine(model.energy_params, metadata)),
    };
}

CostModel updated(const CostModel& model, const Observation& obs, double rate) {
    if (!(rate > 0.0) || rate > 1.0) {
        throw Error(ErrorCode::invalid_rate,
                    "learning rate must lie in (0, 1], got " +
                        std::to_string(rate));
    }
    check_dims(model, obs.metadata);

    Prediction before = predict(model, obs.metadata);
    double norm_sq = 1.0;
    for (double m : obs.metadata) norm_sq += m * m;

    CostModel next = model;
    const double time_step = rate * (obs.observed_time_ms - before.time_ms) / norm_sq;
    const double energy_step =
        rate * (obs.observed_energy_mj - before.energy_mj) / norm_sq;
    next.time_params[0] += time_step;
    next.energy_params[0] += energy_step;
    for (std::size_t i = 0; i < obs.metadata.size(); ++i) {
        next.time_params[i + 1] += time_step * obs.metadata[i];
        next.energy_params[i + 1] += energy_step * obs.metadata[i];
    }
    next.update_count = model.update_count + 1;
    return next;
}

} // namespace sdhkb
