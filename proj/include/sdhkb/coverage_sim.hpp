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

#ifndef SDHKB_COVERAGE_SIM_HPP
#define SDHKB_COVERAGE_SIM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sdhkb/rng.hpp"
#include "sdhkb/types.hpp"

namespace sdhkb::coverage_sim {

/// Parameters of the synthetic workload: geometric fan-out with success
/// probability p (mean kernels per step 1/p) and preferential-attachment
/// kernel selection smoothed by lambda.
struct WorkloadParams {
    double lambda = 2.5;
    double p = 2.0 / 3.0;
    std::uint64_t n_workflows = 200;
    std::uint64_t steps_per_workflow = 4;
    std::uint64_t universe_kernels = 100;
};

struct UncoveragePoint {
    std::uint64_t kb_kernel_count = 0;
    double mean_uncoverage = 0.0;
    double stddev_uncoverage = 0.0;
};

/// Fraction of a workflow's linked kernels that the KB identifies:
/// |links ∩ kb| / |links|. Inputs are treated as sets.
double coverage(std::span<const NodeId> workflow_kernel_links,
                std::span<const NodeId> kb_identified_kernels);

/// Geometric sample with support {1, 2, ...}: P(k) = (1-p)^(k-1) * p, so the
/// mean is exactly 1/p.
std::uint64_t sample_kernel_count(double p, Rng& rng);

/// Draws index i with probability (f_i + lambda) / sum_j (f_j + lambda).
/// The caller increments the chosen frequency to get rich-get-richer
/// dynamics.
std::size_t select_kernel_preferential(std::span<const std::uint64_t> frequencies,
                                       double lambda, Rng& rng);

/// Synthesizes `replicates` independent workloads and reports, for each KB
/// size s, the mean over workflows of (1 - coverage) when the KB holds the
/// s most frequently used kernels of the replicate. kb_sizes must ascend and
/// stay within [0, universe_kernels]. Deterministic under (params, seed).
std::vector<UncoveragePoint> simulate_uncoverage(
    const WorkloadParams& params, std::span<const std::uint64_t> kb_sizes,
    std::uint64_t seed, std::uint64_t replicates);

} // namespace sdhkb::coverage_sim

#endif
