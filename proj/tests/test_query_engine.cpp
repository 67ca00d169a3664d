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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <optional>
#include <set>

#include "sdhkb/cost_model.hpp"
#include "sdhkb/fixtures.hpp"
#include "sdhkb/knowledge_base.hpp"
#include "sdhkb/query.hpp"
#include "support/oracles.hpp"
#include "support/random_kb.hpp"

using namespace sdhkb;

namespace {

template <typename F>
std::optional<ErrorCode> error_code_of(F&& body) {
    try {
        body();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

} // namespace

TEST_CASE("type 1 on the convolution example") {
    KnowledgeBase kb = fixtures::build_fixture("convolution");
    NodeId conv = kb.step_ids().front();
    auto kernels = query::type1(kb, conv);
    CHECK(kernels.size() == 4); // both decompositions, deduplicated
    CHECK(std::is_sorted(kernels.begin(), kernels.end()));

    KnowledgeBase empty_links(std::vector<std::string>{"x"});
    NodeId lonely = empty_links.add_step("lonely", {1.0});
    CHECK(query::type1(empty_links, lonely).empty());
    CHECK(error_code_of([&] { query::type1(empty_links, 42); }) ==
          ErrorCode::unknown_vertex);
}

TEST_CASE("type 2 lookup and absence") {
    KnowledgeBase kb(std::vector<std::string>{"x"});
    NodeId fft = kb.add_kernel("fft", true);
    NodeId other = kb.add_kernel("other", true);
    NodeId fpga = kb.add_hardware("fpga-a", {}, 50.0);
    EdgeId edge = kb.link_kernel_hardware(
        fft, fpga, {CostModel{{1.0, 0.0}, {0.0, 0.0}, 0}});

    const auto* found = query::type2(kb, fft, fpga);
    REQUIRE(found != nullptr);
    CHECK(found->id == edge);
    CHECK(query::type2(kb, other, fpga) == nullptr);
    CHECK(error_code_of([&] { query::type2(kb, fft, 12345); }) ==
          ErrorCode::unknown_vertex);
}

TEST_CASE("type 3 lists exactly the linked hardware") {
    KnowledgeBase kb(std::vector<std::string>{"x"});
    NodeId k = kb.add_kernel("k", true);
    std::vector<NodeId> hw;
    for (int i = 0; i < 10; ++i) {
        hw.push_back(kb.add_hardware("h" + std::to_string(i), {}, 0.0));
    }
    for (int i : {2, 5, 7}) {
        kb.link_kernel_hardware(static_cast<NodeId>(k), hw[i],
                                {CostModel{{1.0, 0.0}, {0.0, 0.0}, 0}});
    }
    auto models = query::type3(kb, k);
    REQUIRE(models.size() == 3);
    CHECK(models[0].first == hw[2]);
    CHECK(models[1].first == hw[5]);
    CHECK(models[2].first == hw[7]);

    NodeId unlinked = kb.add_kernel("unlinked", false);
    CHECK(query::type3(kb, unlinked).empty());
}

TEST_CASE("random KBs: queries agree with brute-force edge scans") {
    Rng rng(42);
    for (int i = 0; i < 60; ++i) {
        KnowledgeBase kb = tests::make_random_kb(rng, 50);

        for (NodeId step : kb.step_ids()) {
            CHECK(query::type1(kb, step) == tests::oracle_type1(kb, step));
            CHECK(query::list_decompositions(kb, step) ==
                  tests::oracle_decompositions(kb, step));
        }
        for (NodeId kernel : kb.kernel_ids()) {
            auto fast = query::type3(kb, kernel);
            auto slow = tests::oracle_type3(kb, kernel);
            REQUIRE(fast.size() == slow.size());
            for (std::size_t j = 0; j < fast.size(); ++j) {
                CHECK(fast[j].first == slow[j].first);
                CHECK(fast[j].second == slow[j].second);
            }
            for (NodeId hw : kb.hardware_ids()) {
                CHECK(query::type2(kb, kernel, hw) ==
                      tests::oracle_type2(kb, kernel, hw));
            }
        }
    }
}

TEST_CASE("type 3 equals the union of present type-2 results") {
    Rng rng(43);
    for (int i = 0; i < 25; ++i) {
        KnowledgeBase kb = tests::make_random_kb(rng, 50);
        for (NodeId kernel : kb.kernel_ids()) {
            std::vector<std::pair<NodeId, const PerformanceModelEdge*>> via_type2;
            for (NodeId hw : kb.hardware_ids()) {
                if (const auto* e = query::type2(kb, kernel, hw)) {
                    via_type2.emplace_back(hw, e);
                }
            }
            auto direct = query::type3(kb, kernel);
            REQUIRE(direct.size() == via_type2.size());
            for (std::size_t j = 0; j < direct.size(); ++j) {
                CHECK(direct[j] == via_type2[j]);
            }
        }
    }
}

TEST_CASE("type 1 equals the union of resolved decompositions") {
    Rng rng(44);
    for (int i = 0; i < 25; ++i) {
        KnowledgeBase kb = tests::make_random_kb(rng, 50);
        for (NodeId step : kb.step_ids()) {
            std::set<NodeId> via_decompositions;
            for (std::uint32_t d : query::list_decompositions(kb, step)) {
                for (const auto& [kernel, weight] :
                     query::resolve_decomposition(kb, step, d)) {
                    via_decompositions.insert(kernel);
                }
            }
            auto direct = query::type1(kb, step);
            CHECK(direct == std::vector<NodeId>(via_decompositions.begin(),
                                                via_decompositions.end()));
        }
    }
}

TEST_CASE("queries are pure reads") {
    Rng rng(45);
    KnowledgeBase kb = tests::make_random_kb(rng, 40);
    for (NodeId step : kb.step_ids()) {
        auto first = query::type1(kb, step);
        auto second = query::type1(kb, step);
        CHECK(first == second);
    }
    kb.check_invariants();
}

TEST_CASE("resolve_decomposition orders kernels by sequence") {
    KnowledgeBase kb = fixtures::build_fixture("convolution");
    NodeId conv = kb.step_ids().front();

    auto d0 = query::resolve_decomposition(kb, conv, 0);
    REQUIRE(d0.size() == 3);
    CHECK(kb.kernel(d0[0].first).name == "fft");
    CHECK(kb.kernel(d0[1].first).name == "pointwise-multiply");
    CHECK(kb.kernel(d0[2].first).name == "inverse-fft");

    auto d1 = query::resolve_decomposition(kb, conv, 1);
    REQUIRE(d1.size() == 1);
    CHECK(kb.kernel(d1[0].first).name == "sliding-window-dot-product");

    CHECK(error_code_of([&] { query::resolve_decomposition(kb, conv, 7); }) ==
          ErrorCode::unknown_decomposition);
}

TEST_CASE("recommend_hardware applies the reconfiguration penalty") {
    KnowledgeBase kb(std::vector<std::string>{"x"});
    NodeId k = kb.add_kernel("k", true);
    NodeId h1 = kb.add_hardware("h1", {}, 0.0);
    NodeId h2 = kb.add_hardware("h2", {}, 20.0);
    kb.link_kernel_hardware(k, h1, {CostModel{{10.0, 0.0}, {1.0, 0.0}, 0}});
    kb.link_kernel_hardware(k, h2, {CostModel{{5.0, 0.0}, {1.0, 0.0}, 0}});
    std::vector<double> metadata{1.0};
    std::vector<NodeId> all{h1, h2};

    SUBCASE("currently on h1: staying wins") {
        auto ranked = query::recommend_hardware(kb, k, metadata, h1, all);
        REQUIRE(ranked.size() == 2);
        CHECK(ranked[0].hardware_id == h1);
        CHECK(ranked[0].total_cost_ms == doctest::Approx(10.0));
        CHECK(ranked[0].reconfig_penalty_ms == 0.0);
        CHECK(ranked[1].hardware_id == h2);
        CHECK(ranked[1].total_cost_ms == doctest::Approx(25.0));
    }
    SUBCASE("h1 busy: only h2 is considered") {
        std::vector<NodeId> only_h2{h2};
        auto ranked = query::recommend_hardware(kb, k, metadata, h1, only_h2);
        REQUIRE(ranked.size() == 1);
        CHECK(ranked[0].hardware_id == h2);
    }
    SUBCASE("no current configuration: everyone pays reconfiguration") {
        auto ranked =
            query::recommend_hardware(kb, k, metadata, std::nullopt, all);
        REQUIRE(ranked.size() == 2);
        CHECK(ranked[0].hardware_id == h1); // 10 + 0 beats 5 + 20
        CHECK(ranked[0].total_cost_ms == doctest::Approx(10.0));
        CHECK(ranked[1].total_cost_ms == doctest::Approx(25.0));
    }
    SUBCASE("total cost always ascends and the invariant holds") {
        auto ranked = query::recommend_hardware(kb, k, metadata, h2, all);
        for (std::size_t i = 0; i + 1 < ranked.size(); ++i) {
            CHECK(ranked[i].total_cost_ms <= ranked[i + 1].total_cost_ms);
        }
        for (const auto& r : ranked) {
            CHECK(r.total_cost_ms ==
                  doctest::Approx(r.predicted_time_ms + r.reconfig_penalty_ms));
            if (r.hardware_id == h2) CHECK(r.reconfig_penalty_ms == 0.0);
        }
    }
    SUBCASE("errors") {
        NodeId lonely = kb.add_kernel("lonely", false);
        CHECK(error_code_of([&] {
                  query::recommend_hardware(kb, lonely, metadata, std::nullopt,
                                            all);
              }) == ErrorCode::no_mapping);
        CHECK(error_code_of([&] {
                  query::recommend_hardware(kb, k, metadata, std::nullopt, {});
              }) == ErrorCode::invalid_parameter);
        CHECK(error_code_of([&] {
                  query::recommend_hardware(kb, 999, metadata, std::nullopt,
                                            all);
              }) == ErrorCode::unknown_vertex);
    }
}

TEST_CASE("recommendation tie-break is by hardware id then variant id") {
    KnowledgeBase kb(std::vector<std::string>{"x"});
    NodeId k = kb.add_kernel("k", true);
    NodeId h1 = kb.add_hardware("h1", {}, 0.0);
    NodeId h2 = kb.add_hardware("h2", {}, 0.0);
    // identical costs everywhere
    kb.link_kernel_hardware(k, h2, {CostModel{{3.0, 0.0}, {0.0, 0.0}, 0},
                                    CostModel{{3.0, 0.0}, {0.0, 0.0}, 0}});
    kb.link_kernel_hardware(k, h1, {CostModel{{3.0, 0.0}, {0.0, 0.0}, 0}});
    auto ranked = query::recommend_hardware(kb, k, std::vector<double>{0.0},
                                            std::nullopt,
                                            std::vector<NodeId>{h2, h1});
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0].hardware_id == h1);
    CHECK(ranked[1].hardware_id == h2);
    CHECK(ranked[1].variant_id == 0); // lowest variant id wins the tie
}

TEST_CASE("estimate_step_cost: exact feature match reproduces the neighbor") {
    KnowledgeBase kb = fixtures::build_fixture("convolution");
    NodeId conv = kb.step_ids().front();
    const auto& features = kb.step(conv).features;

    auto estimates = query::estimate_step_cost(kb, features, 1);
    REQUIRE_FALSE(estimates.empty());
    for (const auto& est : estimates) {
        CHECK(est.support == 1);
        CHECK(est.confidence_weight == doctest::Approx(1.0).epsilon(1e-9));
        // reproduce by hand: lowest-d_id decomposition, minimum variant each
        double expected = 0.0;
        for (const auto& [kernel, weight] :
             query::resolve_decomposition(kb, conv, 0)) {
            const auto* edge = kb.find_performance_model(kernel, est.hardware_id);
            REQUIRE(edge != nullptr);
            double best = 1e300;
            for (const auto& mv : edge->mappings) {
                best = std::min(best, predict(mv.model, features).time_ms);
            }
            expected += best;
        }
        CHECK(est.estimated_time_ms ==
              doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("estimate_step_cost: similarity-weighted mean of two neighbors") {
    KnowledgeBase kb(std::vector<std::string>{"a", "b", "c"});
    // orthogonal unit features give exact cosine similarities 0.8 and 0.2
    NodeId s1 = kb.add_step("s1", {1.0, 0.0, 0.0});
    NodeId s2 = kb.add_step("s2", {0.0, 1.0, 0.0});
    NodeId k1 = kb.add_kernel("k1", true);
    NodeId k2 = kb.add_kernel("k2", true);
    NodeId h1 = kb.add_hardware("h1", {}, 0.0);
    kb.link_step_kernel(s1, k1, 0, 0, {});
    kb.link_step_kernel(s2, k2, 0, 0, {});
    kb.link_kernel_hardware(k1, h1,
                            {CostModel{{10.0, 0.0, 0.0, 0.0},
                                       {0.0, 0.0, 0.0, 0.0},
                                       0}});
    kb.link_kernel_hardware(k2, h1,
                            {CostModel{{20.0, 0.0, 0.0, 0.0},
                                       {0.0, 0.0, 0.0, 0.0},
                                       0}});

    std::vector<double> probe{0.8, 0.2, std::sqrt(1.0 - 0.64 - 0.04)};
    auto estimates = query::estimate_step_cost(kb, probe, 2);
    REQUIRE(estimates.size() == 1);
    CHECK(estimates[0].hardware_id == h1);
    // (0.8 * 10 + 0.2 * 20) / (0.8 + 0.2)
    CHECK(estimates[0].estimated_time_ms == doctest::Approx(12.0).epsilon(1e-9));
    CHECK(estimates[0].support == 2);
    CHECK(estimates[0].confidence_weight == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("estimate_step_cost error paths") {
    KnowledgeBase kb(std::vector<std::string>{"a", "b"});
    CHECK(error_code_of([&] {
              query::estimate_step_cost(kb, std::vector<double>{1.0, 0.0}, 1);
          }) == ErrorCode::empty_kb);

    kb.add_step("s", {1.0, 0.0});
    CHECK(error_code_of([&] {
              query::estimate_step_cost(kb, std::vector<double>{0.0, 1.0}, 1);
          }) == ErrorCode::zero_similarity);
    CHECK(error_code_of([&] {
              query::estimate_step_cost(kb, std::vector<double>{1.0, 0.0}, 0);
          }) == ErrorCode::invalid_parameter);
    CHECK(error_code_of([&] {
              query::estimate_step_cost(kb, std::vector<double>{1.0}, 1);
          }) == ErrorCode::dimension_mismatch);
}

TEST_CASE("neighbors without a complete mapping contribute nothing") {
    KnowledgeBase kb(std::vector<std::string>{"a", "b"});
    NodeId mapped = kb.add_step("mapped", {1.0, 0.1});
    NodeId unmapped = kb.add_step("unmapped", {1.0, 0.0});
    NodeId k1 = kb.add_kernel("k1", true);
    NodeId k2 = kb.add_kernel("k2", true);
    NodeId h = kb.add_hardware("h", {}, 0.0);
    kb.link_step_kernel(mapped, k1, 0, 0, {});
    // the closer neighbor's decomposition has an unmapped kernel
    kb.link_step_kernel(unmapped, k2, 0, 0, {});
    kb.link_kernel_hardware(k1, h,
                            {CostModel{{7.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 0}});

    auto estimates =
        query::estimate_step_cost(kb, std::vector<double>{1.0, 0.0}, 2);
    REQUIRE(estimates.size() == 1);
    CHECK(estimates[0].support == 1); // only the fully mapped neighbor counts
    CHECK(estimates[0].estimated_time_ms == doctest::Approx(7.0));
}

TEST_CASE("clamped cosine") {
    std::vector<double> a{1.0, 0.0};
    std::vector<double> opposite{-1.0, 0.0};
    std::vector<double> zero{0.0, 0.0};
    CHECK(query::clamped_cosine(a, a) == doctest::Approx(1.0));
    CHECK(query::clamped_cosine(a, opposite) == 0.0); // clamped, not -1
    CHECK(query::clamped_cosine(a, zero) == 0.0);
}
