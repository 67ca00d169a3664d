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

#include "sdhkb/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numeric>

#include "sdhkb/coverage_sim.hpp"
#include "sdhkb/error.hpp"
#include "sdhkb/query.hpp"
#include "sdhkb/rng.hpp"

namespace sdhkb::bench {

namespace {

// keeps the optimizer from discarding a query result
template <typename T>
inline void do_not_optimize(const T& value) {
    asm volatile("" : : "g"(&value) : "memory");
}

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

} // namespace

KnowledgeBase generate_random_kb(const RandomKbParams& params,
                                 std::uint64_t seed) {
    if (params.n_steps == 0 || params.h == 0) {
        throw Error(ErrorCode::invalid_parameter,
                    "n_steps and h must be positive");
    }
    if (!(params.p > 0.0) || params.p > 1.0) {
        throw Error(ErrorCode::invalid_parameter, "p must lie in (0, 1]");
    }
    if (!(params.lambda > 0.0)) {
        throw Error(ErrorCode::invalid_parameter, "lambda must be positive");
    }

    Rng rng(seed);
    KnowledgeBase kb(std::vector<std::string>{
        "access_irregularity", "precision_bits", "compute_comm_ratio"});

    std::vector<NodeId> hardware;
    hardware.reserve(params.h);
    for (std::uint64_t i = 0; i < params.h; ++i) {
        hardware.push_back(kb.add_hardware(
            "hw-" + std::to_string(i),
            {{"mem_bw_gbps", rng.uniform(10.0, 200.0)}},
            i == 0 ? 0.0 : rng.uniform(1.0, 100.0)));
    }

    std::vector<NodeId> kernels;      // pool, in mint order
    std::vector<std::uint64_t> usage; // per-pool-entry draw counts
    std::uint64_t total_usage = 0;
    std::vector<NodeId> trace;

    auto draw_kernel = [&]() -> NodeId {
        bool mint = params.disjoint_stars || kernels.empty();
        if (!mint) {
            double mass = static_cast<double>(total_usage) + params.lambda;
            mint = rng.uniform01() * mass >= static_cast<double>(total_usage);
        }
        std::size_t idx;
        if (mint) {
            kernels.push_back(
                kb.add_kernel("kernel-" + std::to_string(kernels.size()), true));
            usage.push_back(0);
            idx = kernels.size() - 1;
        } else {
            double x = rng.uniform01() * static_cast<double>(total_usage);
            double cum = 0.0;
            idx = usage.size() - 1;
            for (std::size_t i = 0; i + 1 < usage.size(); ++i) {
                cum += static_cast<double>(usage[i]);
                if (x < cum) {
                    idx = i;
                    break;
                }
            }
        }
        usage[idx] += 1;
        total_usage += 1;
        return kernels[idx];
    };

    static const double precisions[] = {8.0, 16.0, 32.0, 64.0};
    for (std::uint64_t s = 0; s < params.n_steps; ++s) {
        NodeId step = kb.add_step(
            "step-" + std::to_string(s),
            {rng.uniform01(), precisions[rng.uniform_below(4)],
             rng.uniform(0.1, 10.0)});
        std::uint64_t k = coverage_sim::sample_kernel_count(params.p, rng);
        for (std::uint64_t i = 0; i < k; ++i) {
            NodeId kernel = draw_kernel();
            kb.link_step_kernel(step, kernel, 0,
                                static_cast<std::uint32_t>(i),
                                {{"payload_mb", rng.uniform(0.1, 64.0)}});
            trace.push_back(kernel);
        }
    }
    kb.record_execution(Workflow{}, trace);

    for (NodeId kernel : kb.kernel_ids()) {
        std::vector<NodeId> targets;
        for (NodeId hw : hardware) {
            if (rng.coin()) targets.push_back(hw);
        }
        if (targets.empty()) {
            targets.push_back(hardware[rng.uniform_below(hardware.size())]);
        }
        for (NodeId hw : targets) {
            CostModel model;
            model.time_params = {rng.uniform(0.5, 5.0), rng.uniform(0.0, 0.2),
                                 rng.uniform(0.0, 0.05), rng.uniform(0.0, 0.2)};
            model.energy_params = {rng.uniform(0.1, 2.0), rng.uniform(0.0, 0.1),
                                   rng.uniform(0.0, 0.02), rng.uniform(0.0, 0.1)};
            kb.link_kernel_hardware(kernel, hw, {std::move(model)});
        }
    }
    return kb;
}

BenchResult time_queries(const KnowledgeBase& kb, QueryType type,
                         std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) {
        throw Error(ErrorCode::invalid_parameter, "trials must be positive");
    }
    if (kb.step_count() == 0 || kb.kernel_count() == 0 ||
        kb.hardware_count() == 0) {
        throw Error(ErrorCode::empty_kb,
                    "benchmarking needs steps, kernels and hardware");
    }

    const std::vector<NodeId> steps = kb.step_ids();
    const std::vector<NodeId> kernels = kb.kernel_ids();
    const std::vector<NodeId> hardware = kb.hardware_ids();

    const std::uint64_t warmup = trials / 10;
    const std::uint64_t total = warmup + trials;

    // pre-drawn targets keep rng work out of the timed section
    Rng rng(seed);
    std::vector<std::pair<NodeId, NodeId>> targets(total);
    for (auto& t : targets) {
        switch (type) {
            case QueryType::type1:
                t.first = steps[rng.uniform_below(steps.size())];
                break;
            case QueryType::type2:
                t.first = kernels[rng.uniform_below(kernels.size())];
                t.second = hardware[rng.uniform_below(hardware.size())];
                break;
            case QueryType::type3:
                t.first = kernels[rng.uniform_below(kernels.size())];
                break;
        }
    }

    using clock = std::chrono::steady_clock;
    std::vector<double> samples;
    samples.reserve(trials);
    for (std::uint64_t i = 0; i < total; ++i) {
        const auto& [a, b] = targets[i];
        clock::time_point t0, t1;
        switch (type) {
            case QueryType::type1: {
                t0 = clock::now();
                auto result = query::type1(kb, a);
                do_not_optimize(result);
                t1 = clock::now();
                break;
            }
            case QueryType::type2: {
                t0 = clock::now();
                const auto* result = query::type2(kb, a, b);
                do_not_optimize(result);
                t1 = clock::now();
                break;
            }
            case QueryType::type3: {
                t0 = clock::now();
                auto result = query::type3(kb, a);
                do_not_optimize(result);
                t1 = clock::now();
                break;
            }
        }
        if (i >= warmup) {
            samples.push_back(static_cast<double>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0)
                    .count()));
        }
    }

    double mean = std::accumulate(samples.begin(), samples.end(), 0.0) /
                  static_cast<double>(samples.size());
    std::sort(samples.begin(), samples.end());
    auto percentile = [&](double q) {
        std::size_t idx = static_cast<std::size_t>(
            q * static_cast<double>(samples.size() - 1));
        return samples[idx];
    };
    return BenchResult{kb.step_count(), static_cast<int>(type), trials,
                       mean, percentile(0.5), percentile(0.95)};
}

std::string csv_header() {
    return "n_steps,query_type,trials,mean_ns,p50_ns,p95_ns";
}

std::string csv_row(const BenchResult& r) {
    return std::to_string(r.n_steps) + "," + std::to_string(r.query_type) + "," +
           std::to_string(r.trials) + "," + format_double(r.mean_ns) + "," +
           format_double(r.p50_ns) + "," + format_double(r.p95_ns);
}

} // namespace sdhkb::bench
