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

#include "sdhkb/coverage_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "sdhkb/error.hpp"

namespace sdhkb::coverage_sim {

double coverage(std::span<const NodeId> workflow_kernel_links,
                std::span<const NodeId> kb_identified_kernels) {
    if (workflow_kernel_links.empty()) {
        throw Error(ErrorCode::empty_links,
                    "a workflow must link at least one kernel");
    }
    std::unordered_set<NodeId> links(workflow_kernel_links.begin(),
                                     workflow_kernel_links.end());
    std::unordered_set<NodeId> kb(kb_identified_kernels.begin(),
                                  kb_identified_kernels.end());
    std::size_t hit = 0;
    for (NodeId id : links) {
        if (kb.contains(id)) ++hit;
    }
    return static_cast<double>(hit) / static_cast<double>(links.size());
}

std::uint64_t sample_kernel_count(double p, Rng& rng) {
    if (!(p > 0.0) || p > 1.0) {
        throw Error(ErrorCode::invalid_parameter,
                    "geometric probability must lie in (0, 1], got " +
                        std::to_string(p));
    }
    if (p == 1.0) return 1;
    // inversion on the survival function: k-1 failures before the success
    double u = rng.uniform01();
    double failures = std::floor(std::log1p(-u) / std::log1p(-p));
    return 1 + static_cast<std::uint64_t>(failures);
}

std::size_t select_kernel_preferential(std::span<const std::uint64_t> frequencies,
                                       double lambda, Rng& rng) {
    if (frequencies.empty()) {
        throw Error(ErrorCode::invalid_parameter,
                    "frequency vector must be non-empty");
    }
    if (!(lambda > 0.0)) {
        throw Error(ErrorCode::invalid_parameter,
                    "lambda must be positive, got " + std::to_string(lambda));
    }
    double total = lambda * static_cast<double>(frequencies.size());
    for (std::uint64_t f : frequencies) total += static_cast<double>(f);
    double x = rng.uniform01() * total;
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < frequencies.size(); ++i) {
        cum += static_cast<double>(frequencies[i]) + lambda;
        if (x < cum) return i;
    }
    return frequencies.size() - 1;
}

namespace {

void validate(const WorkloadParams& params,
              std::span<const std::uint64_t> kb_sizes,
              std::uint64_t replicates) {
    if (!(params.lambda > 0.0)) {
        throw Error(ErrorCode::invalid_parameter, "lambda must be positive");
    }
    if (!(params.p > 0.0) || params.p > 1.0) {
        throw Error(ErrorCode::invalid_parameter, "p must lie in (0, 1]");
    }
    if (params.n_workflows == 0 || params.steps_per_workflow == 0 ||
        params.universe_kernels == 0) {
        throw Error(ErrorCode::invalid_parameter,
                    "workload dimensions must be positive");
    }
    if (replicates == 0) {
        throw Error(ErrorCode::invalid_parameter, "replicates must be positive");
    }
    for (std::size_t i = 0; i < kb_sizes.size(); ++i) {
        if (kb_sizes[i] > params.universe_kernels) {
            throw Error(ErrorCode::invalid_parameter,
                        "kb_size exceeds the kernel universe");
        }
        if (i > 0 && kb_sizes[i] < kb_sizes[i - 1]) {
            throw Error(ErrorCode::invalid_parameter, "kb_sizes must ascend");
        }
    }
}

} // namespace

std::vector<UncoveragePoint> simulate_uncoverage(
    const WorkloadParams& params, std::span<const std::uint64_t> kb_sizes,
    std::uint64_t seed, std::uint64_t replicates) {
    validate(params, kb_sizes, replicates);

    const std::size_t universe = static_cast<std::size_t>(params.universe_kernels);
    std::vector<std::vector<double>> per_size(kb_sizes.size());

    for (std::uint64_t rep = 0; rep < replicates; ++rep) {
        Rng rng = Rng::for_stream(seed, rep);
        std::vector<std::uint64_t> freqs(universe, 0);
        std::vector<std::vector<NodeId>> workflows;
        workflows.reserve(params.n_workflows);
        for (std::uint64_t w = 0; w < params.n_workflows; ++w) {
            std::vector<NodeId> links;
            for (std::uint64_t s = 0; s < params.steps_per_workflow; ++s) {
                std::uint64_t k = sample_kernel_count(params.p, rng);
                for (std::uint64_t draw = 0; draw < k; ++draw) {
                    std::size_t pick =
                        select_kernel_preferential(freqs, params.lambda, rng);
                    freqs[pick] += 1;
                    links.push_back(static_cast<NodeId>(pick));
                }
            }
            std::sort(links.begin(), links.end());
            links.erase(std::unique(links.begin(), links.end()), links.end());
            workflows.push_back(std::move(links));
        }

        // knowledge-acquisition order: most frequent first, ties by index
        std::vector<std::size_t> order(universe);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return freqs[a] > freqs[b];
                         });
        std::vector<std::size_t> rank(universe);
        for (std::size_t i = 0; i < universe; ++i) rank[order[i]] = i;

        for (std::size_t si = 0; si < kb_sizes.size(); ++si) {
            const std::uint64_t s = kb_sizes[si];
            double total = 0.0;
            for (const auto& links : workflows) {
                std::size_t covered = 0;
                for (NodeId id : links) {
                    if (rank[static_cast<std::size_t>(id)] < s) ++covered;
                }
                total += 1.0 - static_cast<double>(covered) /
                                   static_cast<double>(links.size());
            }
            per_size[si].push_back(total /
                                   static_cast<double>(params.n_workflows));
        }
    }

    std::vector<UncoveragePoint> out;
    out.reserve(kb_sizes.size());
    for (std::size_t si = 0; si < kb_sizes.size(); ++si) {
        const auto& samples = per_size[si];
        double mean = std::accumulate(samples.begin(), samples.end(), 0.0) /
                      static_cast<double>(samples.size());
        double var = 0.0;
        if (samples.size() > 1) {
            for (double v : samples) var += (v - mean) * (v - mean);
            var /= static_cast<double>(samples.size() - 1);
        }
        out.push_back(UncoveragePoint{kb_sizes[si], mean, std::sqrt(var)});
    }
    return out;
}

} // namespace sdhkb::coverage_sim
