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

#ifndef SDHKB_BENCH_HPP
#define SDHKB_BENCH_HPP

#include <cstdint>

#include "sdhkb/knowledge_base.hpp"

namespace sdhkb::bench {

enum class QueryType : int { type1 = 1, type2 = 2, type3 = 3 };

struct BenchResult {
    std::uint64_t n_steps = 0;
    int query_type = 0;
    std::uint64_t trials = 0;
    double mean_ns = 0.0;
    double p50_ns = 0.0;
    double p95_ns = 0.0;
};

/// Parameters of the random benchmark topology. Each step links to
/// k ~ geometric(p) kernels. By default kernels come from a growing shared
/// pool: a draw mints a new kernel with probability lambda / (mass + lambda)
/// and otherwise reuses an existing one proportionally to its frequency,
/// which reproduces the heavy kernel reuse seen in real workloads.
/// disjoint_stars instead mints fresh kernels for every draw (worst-case
/// sizing). Exactly h hardware nodes; every kernel is mapped onto a
/// non-empty random subset of them with one default cost-model variant.
struct RandomKbParams {
    std::uint64_t n_steps = 1;
    double p = 2.0 / 3.0;
    std::uint64_t h = 10;
    double lambda = 2.5;
    bool disjoint_stars = false;
};

KnowledgeBase generate_random_kb(const RandomKbParams& params,
                                 std::uint64_t seed);

/// Times `trials` queries of one type against uniformly random valid targets
/// with a monotonic nanosecond clock; trials/10 warm-up queries are excluded
/// from the statistics. Queries are pure reads: the KB is untouched.
BenchResult time_queries(const KnowledgeBase& kb, QueryType type,
                         std::uint64_t trials, std::uint64_t seed);

/// CSV header and row format shared by the CLI and tests:
/// n_steps,query_type,trials,mean_ns,p50_ns,p95_ns
std::string csv_header();
std::string csv_row(const BenchResult& result);

} // namespace sdhkb::bench

#endif
