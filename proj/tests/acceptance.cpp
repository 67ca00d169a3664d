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

// Acceptance suite: every release-gating requirement as one numbered check
// with its tolerance pinned in code. Prints one PASS/FAIL line per
// criterion; the exit code is the number of failures.
//
//   acceptance            runs everything
//   acceptance 5          runs a single criterion

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "sdhkb/bench.hpp"
#include "sdhkb/cost_model.hpp"
#include "sdhkb/coverage_sim.hpp"
#include "sdhkb/fixtures.hpp"
#include "sdhkb/knowledge_base.hpp"
#include "sdhkb/persistence.hpp"
#include "sdhkb/query.hpp"
#include "sdhkb/rng.hpp"
#include "support/deep_compare.hpp"
#include "support/oracles.hpp"
#include "support/random_kb.hpp"

using namespace sdhkb;

namespace {

struct Criterion {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            notes.push_back(what);
        }
    }
    void note(const std::string& what) { notes.push_back(what); }
};

bench::BenchResult measure(std::uint64_t n_steps, bench::QueryType type,
                           std::uint64_t trials, std::uint64_t seed) {
    bench::RandomKbParams params{n_steps, 2.0 / 3.0, 10, 2.5, false};
    KnowledgeBase kb = bench::generate_random_kb(params, seed);
    return bench::time_queries(kb, type, trials, seed);
}

// 1. every query type answers in under a millisecond on a 10,000-step KB
void criterion_1(Criterion& c) {
    bench::RandomKbParams params{10000, 2.0 / 3.0, 10, 2.5, false};
    KnowledgeBase kb = bench::generate_random_kb(params, 1);
    for (auto type : {bench::QueryType::type1, bench::QueryType::type2,
                      bench::QueryType::type3}) {
        auto r = bench::time_queries(kb, type, 10000, 2);
        c.note("type " + std::to_string(r.query_type) + " mean " +
               std::to_string(r.mean_ns) + " ns");
        c.expect(r.mean_ns < 1e6, "type " + std::to_string(r.query_type) +
                                      " mean latency above 1 ms");
    }
}

// 2. type 2 is cheapest and type 3 costliest across the size sweep
void criterion_2(Criterion& c) {
    for (std::uint64_t n_steps : {100ULL, 1000ULL, 10000ULL}) {
        bench::RandomKbParams params{n_steps, 2.0 / 3.0, 10, 2.5, false};
        KnowledgeBase kb = bench::generate_random_kb(params, 3);
        double mean1 = bench::time_queries(kb, bench::QueryType::type1, 10000, 5).mean_ns;
        double mean2 = bench::time_queries(kb, bench::QueryType::type2, 10000, 5).mean_ns;
        double mean3 = bench::time_queries(kb, bench::QueryType::type3, 10000, 5).mean_ns;
        c.note(std::to_string(n_steps) + " steps: type1 " +
               std::to_string(mean1) + " ns, type2 " + std::to_string(mean2) +
               " ns, type3 " + std::to_string(mean3) + " ns");
        c.expect(mean2 <= mean1 * 1.01,
                 "type 2 not cheapest at " + std::to_string(n_steps) +
                     " steps (1% tolerance)");
        c.expect(mean1 <= mean3 * 1.05,
                 "type 1 above type 3 at " + std::to_string(n_steps) +
                     " steps (5% slack)");
    }
}

// 3. a 10x larger KB costs at most 15x on type 1 (loose linearity envelope)
void criterion_3(Criterion& c) {
    double mean_100 = measure(100, bench::QueryType::type1, 10000, 7).mean_ns;
    double mean_1k = measure(1000, bench::QueryType::type1, 10000, 7).mean_ns;
    double mean_10k = measure(10000, bench::QueryType::type1, 10000, 7).mean_ns;
    c.note("type1 means: " + std::to_string(mean_100) + " / " +
           std::to_string(mean_1k) + " / " + std::to_string(mean_10k) + " ns");
    c.expect(mean_1k <= 15.0 * mean_100, "1,000 steps above 15x of 100 steps");
    c.expect(mean_10k <= 15.0 * mean_1k,
             "10,000 steps above 15x of 1,000 steps");
}

// 4. the worked coverage example is exact
void criterion_4(Criterion& c) {
    std::vector<NodeId> links{1, 2, 3};
    std::vector<NodeId> kb{1, 2};
    double cov = coverage_sim::coverage(links, kb);
    c.expect(std::abs(cov - 2.0 / 3.0) <= 1e-12, "coverage differs from 2/3");
    c.expect(std::abs((1.0 - cov) - 1.0 / 3.0) <= 1e-12,
             "uncoverage differs from 1/3");
}

// 5. uncoverage curve: monotone, pinned endpoints, fast decay
void criterion_5(Criterion& c) {
    coverage_sim::WorkloadParams params;
    params.lambda = 2.5;
    params.p = 2.0 / 3.0;
    params.n_workflows = 200;
    params.steps_per_workflow = 4;
    params.universe_kernels = 100;
    std::vector<std::uint64_t> sizes(101);
    for (std::uint64_t s = 0; s <= 100; ++s) sizes[s] = s;

    auto points = coverage_sim::simulate_uncoverage(params, sizes, 2026, 50);
    c.expect(points.front().mean_uncoverage == 1.0, "uncoverage(0) != 1");
    c.expect(points.back().mean_uncoverage == 0.0, "uncoverage(100) != 0");
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        monotone &= points[i].mean_uncoverage >= points[i + 1].mean_uncoverage;
    }
    c.expect(monotone, "curve is not non-increasing");

    std::uint64_t crossing = 101;
    for (const auto& pt : points) {
        if (pt.mean_uncoverage < 0.2) {
            crossing = pt.kb_kernel_count;
            break;
        }
    }
    c.note("uncoverage(29) = " + std::to_string(points[29].mean_uncoverage) +
           ", first size below 0.2 = " + std::to_string(crossing));
    c.expect(crossing < 30,
             "uncoverage does not drop below 0.2 before 30% of the universe");
}

// 6. preferential-attachment selection rates
void criterion_6(Criterion& c) {
    Rng rng(6);
    std::vector<std::uint64_t> freqs{1, 0};
    std::size_t first = 0;
    const std::size_t draws = 100000;
    for (std::size_t i = 0; i < draws; ++i) {
        if (coverage_sim::select_kernel_preferential(freqs, 2.5, rng) == 0) {
            ++first;
        }
    }
    double rate0 = static_cast<double>(first) / draws;
    double rate1 = 1.0 - rate0;
    c.note("rates " + std::to_string(rate0) + " / " + std::to_string(rate1));
    c.expect(std::abs(rate0 - 7.0 / 12.0) <= 0.02, "rate of index 0 off 7/12");
    c.expect(std::abs(rate1 - 5.0 / 12.0) <= 0.02, "rate of index 1 off 5/12");
}

// 7. geometric sampler mean at three parameters
void criterion_7(Criterion& c) {
    for (double p : {0.25, 2.0 / 3.0, 0.9}) {
        Rng rng(7);
        const std::size_t draws = 1000000;
        double sum = 0.0;
        for (std::size_t i = 0; i < draws; ++i) {
            sum += static_cast<double>(coverage_sim::sample_kernel_count(p, rng));
        }
        double mean = sum / static_cast<double>(draws);
        c.note("p=" + std::to_string(p) + " mean " + std::to_string(mean));
        c.expect(std::abs(mean - 1.0 / p) <= 0.05 / p,
                 "mean off 1/p at p=" + std::to_string(p));
    }
}

// 8. queries equal brute-force scans on 100 random KBs
void criterion_8(Criterion& c) {
    Rng rng(8);
    for (int i = 0; i < 100 && c.ok; ++i) {
        KnowledgeBase kb = tests::make_random_kb(rng, 50);
        for (NodeId step : kb.step_ids()) {
            c.expect(query::type1(kb, step) == tests::oracle_type1(kb, step),
                     "type 1 mismatch");
        }
        for (NodeId kernel : kb.kernel_ids()) {
            auto direct = query::type3(kb, kernel);
            auto slow = tests::oracle_type3(kb, kernel);
            c.expect(direct.size() == slow.size(), "type 3 size mismatch");
            std::vector<std::pair<NodeId, const PerformanceModelEdge*>> unioned;
            for (NodeId hw : kb.hardware_ids()) {
                const auto* fast = query::type2(kb, kernel, hw);
                c.expect(fast == tests::oracle_type2(kb, kernel, hw),
                         "type 2 mismatch");
                if (fast != nullptr) unioned.emplace_back(hw, fast);
            }
            c.expect(direct == unioned, "type 3 is not the union of type 2");
            for (std::size_t j = 0; j < direct.size() && j < slow.size(); ++j) {
                c.expect(direct[j] == slow[j], "type 3 entry mismatch");
            }
        }
    }
}

// 9. load(save(kb)) deep-equals kb, bit-exact reals included
void criterion_9(Criterion& c) {
    Rng rng(9);
    for (int i = 0; i < 100 && c.ok; ++i) {
        KnowledgeBase kb = tests::make_random_kb(rng, 10 + (i % 5) * 15);
        KnowledgeBase back =
            persistence::load_string(persistence::save_string(kb));
        std::string why;
        c.expect(tests::deep_equal(kb, back, why), "round trip differs: " + why);
    }
    for (const char* name : {"node-classification", "convolution"}) {
        KnowledgeBase kb = fixtures::build_fixture(name);
        KnowledgeBase back =
            persistence::load_string(persistence::save_string(kb));
        std::string why;
        c.expect(tests::deep_equal(kb, back, why),
                 std::string(name) + " round trip differs: " + why);
    }
}

// 10. 10,000 random mutations with interleaved invariant checks
void criterion_10(Criterion& c) {
    Rng rng(10);
    KnowledgeBase kb(std::vector<std::string>{"x", "y", "z"});
    std::vector<NodeId> steps, kernels, hardware;
    std::uint64_t recorded = 0, merged_away = 0;

    auto any_of = [&](const std::vector<NodeId>& ids) {
        return ids[rng.uniform_below(ids.size())];
    };

    int mutations = 0;
    try {
        while (mutations < 10000) {
            switch (rng.uniform_below(7)) {
                case 0:
                    steps.push_back(kb.add_step(
                        "s", {rng.uniform01(), rng.uniform01(), rng.uniform01()}));
                    break;
                case 1:
                    kernels.push_back(kb.add_kernel("k", rng.coin()));
                    break;
                case 2:
                    hardware.push_back(
                        kb.add_hardware("h", {}, rng.uniform(0.0, 50.0)));
                    break;
                case 3: {
                    if (steps.empty() || kernels.empty()) continue;
                    NodeId step = any_of(steps);
                    std::uint32_t d_id =
                        static_cast<std::uint32_t>(rng.uniform_below(3));
                    std::uint32_t seq = 0;
                    for (const KernelMapRef& ref : kb.step_kernel_maps(step)) {
                        if (ref.d_id == d_id) ++seq;
                    }
                    kb.link_step_kernel(step, any_of(kernels), d_id, seq,
                                        {{"w", rng.uniform01()}});
                    break;
                }
                case 4: {
                    if (kernels.empty() || hardware.empty()) continue;
                    NodeId kernel = any_of(kernels);
                    NodeId hw = any_of(hardware);
                    if (kb.find_performance_model(kernel, hw)) continue;
                    kb.link_kernel_hardware(
                        kernel, hw,
                        {CostModel{{rng.uniform01(), 0.0, 0.0, 0.0},
                                   {rng.uniform01(), 0.0, 0.0, 0.0},
                                   0}});
                    break;
                }
                case 5: {
                    if (kernels.size() < 3) continue;
                    NodeId a = any_of(kernels);
                    NodeId b = any_of(kernels);
                    if (a == b) continue;
                    std::uint64_t frequency_before = 0;
                    for (NodeId id : kb.kernel_ids()) {
                        frequency_before += kb.kernel(id).frequency;
                    }
                    NodeId m = kb.merge_kernels({a, b}, "m");
                    std::uint64_t frequency_after = 0;
                    for (NodeId id : kb.kernel_ids()) {
                        frequency_after += kb.kernel(id).frequency;
                    }
                    c.expect(frequency_before == frequency_after,
                             "merge changed the total frequency");
                    std::erase(kernels, a);
                    std::erase(kernels, b);
                    kernels.push_back(m);
                    ++merged_away;
                    break;
                }
                default: {
                    if (kernels.empty()) continue;
                    std::vector<NodeId> trace;
                    for (std::size_t t = 1 + rng.uniform_below(3); t > 0; --t) {
                        trace.push_back(any_of(kernels));
                    }
                    recorded += trace.size();
                    kb.record_execution(Workflow{}, trace);
                    break;
                }
            }
            ++mutations;
            if (mutations % 500 == 0) kb.check_invariants();
        }
        kb.check_invariants();
    } catch (const Error& e) {
        c.expect(false, std::string("mutation ") + std::to_string(mutations) +
                            " raised: " + e.what());
    }
    c.note(std::to_string(mutations) + " mutations, " +
           std::to_string(merged_away) + " merges, " +
           std::to_string(recorded) + " recorded uses");
}

// 11. normalized-LMS convergence within 1% in at most 200 iterations
void criterion_11(Criterion& c) {
    CostModel model{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 0};
    Observation obs{{3.0, 7.0}, 25.0, 5.0};
    int needed = -1;
    for (int i = 1; i <= 200; ++i) {
        model = updated(model, obs, 0.5);
        double predicted = predict(model, obs.metadata).time_ms;
        if (std::abs(predicted - obs.observed_time_ms) <=
            0.01 * obs.observed_time_ms) {
            needed = i;
            break;
        }
    }
    c.note("converged after " + std::to_string(needed) + " iterations");
    c.expect(needed > 0 && needed <= 200,
             "no convergence within 200 iterations at rate 0.5");
}

// 12. node-classification fixture: 4 steps and the inference->FPGA path
void criterion_12(Criterion& c) {
    KnowledgeBase kb = fixtures::build_fixture("node-classification");
    c.expect(kb.step_count() == 4, "fixture does not have exactly 4 steps");

    NodeId inference = 0, forward = 0, fpga = 0;
    bool found_inference = false, found_forward = false, found_fpga = false;
    for (NodeId id : kb.step_ids()) {
        if (kb.step(id).name == "inference") {
            inference = id;
            found_inference = true;
        }
    }
    for (NodeId id : kb.kernel_ids()) {
        if (kb.kernel(id).name == "forward-propagation") {
            forward = id;
            found_forward = true;
        }
    }
    for (NodeId id : kb.hardware_ids()) {
        if (kb.hardware(id).name.find("fpga") != std::string::npos) {
            fpga = id;
            found_fpga = true;
        }
    }
    c.expect(found_inference && found_forward && found_fpga,
             "fixture is missing inference, forward-propagation or the FPGA");
    if (!c.ok) return;

    auto kernels = query::type1(kb, inference);
    c.expect(std::find(kernels.begin(), kernels.end(), forward) != kernels.end(),
             "type 1 on inference does not reach forward-propagation");
    c.expect(query::type2(kb, forward, fpga) != nullptr,
             "forward-propagation has no model on the FPGA");
    bool in_type3 = false;
    for (const auto& [hw, edge] : query::type3(kb, forward)) {
        in_type3 |= hw == fpga;
    }
    c.expect(in_type3, "type 3 on forward-propagation does not list the FPGA");
}

struct Entry {
    int number;
    const char* title;
    void (*run)(Criterion&);
};

const Entry kCriteria[] = {
    {1, "query latency under 1 ms on a 10,000-step KB", criterion_1},
    {2, "latency ordering: type 2 cheapest, type 3 costliest", criterion_2},
    {3, "latency scaling within a 15x-per-decade envelope", criterion_3},
    {4, "coverage worked example is exactly 2/3", criterion_4},
    {5, "uncoverage curve: monotone, pinned endpoints, fast decay", criterion_5},
    {6, "preferential-attachment selection rates within 2%", criterion_6},
    {7, "geometric sampler mean within 5% of 1/p", criterion_7},
    {8, "query results equal brute-force scans on 100 random KBs", criterion_8},
    {9, "persistence round trip is bit-exact on 100 random KBs", criterion_9},
    {10, "10,000 random mutations preserve every invariant", criterion_10},
    {11, "cost-model convergence within 1% in 200 iterations", criterion_11},
    {12, "node-classification fixture shape and FPGA path", criterion_12},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > 12) {
            std::fprintf(stderr, "usage: %s [criterion 1..12]\n", argv[0]);
            return 64;
        }
    }

    int failures = 0;
    for (const Entry& entry : kCriteria) {
        if (only != 0 && entry.number != only) continue;
        Criterion c;
        entry.run(c);
        std::printf("%s criterion %2d: %s\n", c.ok ? "PASS" : "FAIL",
                    entry.number, entry.title);
        for (const std::string& note : c.notes) {
            std::printf("      - %s\n", note.c_str());
        }
        failures += c.ok ? 0 : 1;
    }
    return failures;
}
