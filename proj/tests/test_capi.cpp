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

// Exercises the shared-library surface exactly as an external consumer
// would: through sdhkb.h only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "sdhkb.h"

using nlohmann::json;

namespace {

struct Kb {
    sdhkb_kb* handle = nullptr;
    ~Kb() { sdhkb_destroy(handle); }
};

std::string take(char* text) {
    std::string out(text);
    sdhkb_free(text);
    return out;
}

// the convolution example built through the C surface
void build_convolution(sdhkb_kb* kb, uint64_t ids[7]) {
    const double features[] = {0.2, 32.0, 1.4};
    REQUIRE(sdhkb_add_step(kb, "convolution", features, 3, &ids[0]) == SDHKB_OK);
    REQUIRE(sdhkb_add_kernel(kb, "fft", 1, &ids[1]) == SDHKB_OK);
    REQUIRE(sdhkb_add_kernel(kb, "pointwise-multiply", 1, &ids[2]) == SDHKB_OK);
    REQUIRE(sdhkb_add_kernel(kb, "inverse-fft", 1, &ids[3]) == SDHKB_OK);
    REQUIRE(sdhkb_add_kernel(kb, "sliding-window-dot-product", 1, &ids[4]) ==
            SDHKB_OK);
    const char* luts_key[] = {"luts"};
    const double luts_val[] = {100000.0};
    REQUIRE(sdhkb_add_hardware(kb, "fpga-a", luts_key, luts_val, 1, 50.0,
                               &ids[5]) == SDHKB_OK);
    REQUIRE(sdhkb_add_hardware(kb, "cpu", nullptr, nullptr, 0, 0.0, &ids[6]) ==
            SDHKB_OK);

    uint64_t edge = 0;
    REQUIRE(sdhkb_link_step_kernel(kb, ids[0], ids[1], 0, 0, nullptr, nullptr,
                                   0, &edge) == SDHKB_OK);
    REQUIRE(sdhkb_link_step_kernel(kb, ids[0], ids[2], 0, 1, nullptr, nullptr,
                                   0, &edge) == SDHKB_OK);
    REQUIRE(sdhkb_link_step_kernel(kb, ids[0], ids[3], 0, 2, nullptr, nullptr,
                                   0, &edge) == SDHKB_OK);
    REQUIRE(sdhkb_link_step_kernel(kb, ids[0], ids[4], 1, 0, nullptr, nullptr,
                                   0, &edge) == SDHKB_OK);

    const double time1[] = {2.0, 0.5, 0.0, 0.0};
    const double energy1[] = {1.0, 0.0, 0.0, 0.0};
    const double time2[] = {3.0, 0.1, 0.0, 0.0};
    const double energy2[] = {0.5, 0.0, 0.0, 0.0};
    sdhkb_cost_model_init variants[2] = {{time1, energy1, 4},
                                         {time2, energy2, 4}};
    REQUIRE(sdhkb_link_kernel_hardware(kb, ids[1], ids[5], variants, 2,
                                       &edge) == SDHKB_OK);
}

} // namespace

TEST_CASE("build, query and inspect through the C interface") {
    const char* schema[] = {"access_irregularity", "precision_bits",
                            "compute_comm_ratio"};
    Kb kb{sdhkb_create_with_schema(schema, 3)};
    REQUIRE(kb.handle != nullptr);
    uint64_t ids[7];
    build_convolution(kb.handle, ids);

    uint64_t* kernels = nullptr;
    size_t n = 0;
    REQUIRE(sdhkb_query_type1(kb.handle, ids[0], &kernels, &n) == SDHKB_OK);
    CHECK(n == 4);
    CHECK(kernels[0] == ids[1]);
    sdhkb_free(kernels);

    char* text = nullptr;
    REQUIRE(sdhkb_query_type2_json(kb.handle, ids[1], ids[5], &text) ==
            SDHKB_OK);
    json model = json::parse(take(text));
    REQUIRE(model.is_object());
    CHECK(model["mappings"].size() == 2);
    CHECK(model["mappings"][0]["time_params"][0] == 2.0);

    // unlinked pair: explicit JSON null, success status
    REQUIRE(sdhkb_query_type2_json(kb.handle, ids[2], ids[5], &text) ==
            SDHKB_OK);
    CHECK(json::parse(take(text)).is_null());

    REQUIRE(sdhkb_query_type3_json(kb.handle, ids[1], &text) == SDHKB_OK);
    json models = json::parse(take(text));
    CHECK(models.is_array());
    CHECK(models.size() == 1);

    uint32_t* d_ids = nullptr;
    REQUIRE(sdhkb_list_decompositions(kb.handle, ids[0], &d_ids, &n) ==
            SDHKB_OK);
    REQUIRE(n == 2);
    CHECK(d_ids[0] == 0);
    CHECK(d_ids[1] == 1);
    sdhkb_free(d_ids);

    REQUIRE(sdhkb_resolve_decomposition_json(kb.handle, ids[0], 1, &text) ==
            SDHKB_OK);
    json decomposition = json::parse(take(text));
    REQUIRE(decomposition.size() == 1);
    CHECK(decomposition[0]["kernel"] == ids[4]);

    REQUIRE(sdhkb_stats_json(kb.handle, &text) == SDHKB_OK);
    json stats = json::parse(take(text));
    CHECK(stats["steps"] == 1);
    CHECK(stats["kernels"] == 4);
    CHECK(stats["hardware"] == 2);
    CHECK(stats["feature_schema"]["dimensions"].size() == 3);

    uint64_t* hw_ids = nullptr;
    REQUIRE(sdhkb_list_hardware(kb.handle, &hw_ids, &n) == SDHKB_OK);
    CHECK(n == 2);
    sdhkb_free(hw_ids);
}

TEST_CASE("status codes and error messages cross the boundary") {
    Kb kb{sdhkb_create()};
    uint64_t id = 0;
    const double features[] = {1.0, 2.0};
    REQUIRE(sdhkb_add_step(kb.handle, "s", features, 2, &id) == SDHKB_OK);

    const double wrong_dim[] = {1.0, 2.0, 3.0};
    CHECK(sdhkb_add_step(kb.handle, "bad", wrong_dim, 3, &id) ==
          SDHKB_ERR_DIMENSION_MISMATCH);
    CHECK(std::strlen(sdhkb_last_error_message()) > 0);

    CHECK(sdhkb_add_hardware(kb.handle, "h", nullptr, nullptr, 0, -2.0, &id) ==
          SDHKB_ERR_NEGATIVE_COST);

    uint64_t edge = 0;
    CHECK(sdhkb_link_step_kernel(kb.handle, 999, 1000, 0, 0, nullptr, nullptr,
                                 0, &edge) == SDHKB_ERR_UNKNOWN_VERTEX);

    uint64_t* buf = nullptr;
    size_t n = 0;
    CHECK(sdhkb_query_type1(kb.handle, 777, &buf, &n) ==
          SDHKB_ERR_UNKNOWN_VERTEX);

    CHECK(sdhkb_add_step(nullptr, "s", features, 2, &id) ==
          SDHKB_ERR_INVALID_PARAMETER);

    sdhkb_kb* out = nullptr;
    CHECK(sdhkb_build_fixture("bogus-name", &out) == SDHKB_ERR_UNKNOWN_FIXTURE);
    CHECK(sdhkb_load("/nonexistent/kb.xml", &out) == SDHKB_ERR_IO);
}

TEST_CASE("save and load round-trip through the C interface") {
    auto path = std::filesystem::temp_directory_path() / "sdhkb_capi_rt.xml";
    Kb fixture{};
    REQUIRE(sdhkb_build_fixture("node-classification", &fixture.handle) ==
            SDHKB_OK);
    REQUIRE(sdhkb_save(fixture.handle, path.string().c_str()) == SDHKB_OK);

    Kb loaded{};
    REQUIRE(sdhkb_load(path.string().c_str(), &loaded.handle) == SDHKB_OK);
    char* a = nullptr;
    char* b = nullptr;
    REQUIRE(sdhkb_stats_json(fixture.handle, &a) == SDHKB_OK);
    REQUIRE(sdhkb_stats_json(loaded.handle, &b) == SDHKB_OK);
    CHECK(take(a) == take(b));
    std::filesystem::remove(path);
}

TEST_CASE("merge, record and model updates through the C interface") {
    Kb kb{sdhkb_create()};
    uint64_t ids[7];
    build_convolution(kb.handle, ids);

    uint64_t trace[] = {ids[1], ids[1], ids[3]};
    const char* workflow =
        R"({"id":1,"states":[0],"transitions":[],"initial":0,"terminal":[0]})";
    REQUIRE(sdhkb_record_execution(kb.handle, workflow, trace, 3) == SDHKB_OK);

    uint64_t bad_trace[] = {9999};
    CHECK(sdhkb_record_execution(kb.handle, nullptr, bad_trace, 1) ==
          SDHKB_ERR_UNKNOWN_VERTEX);
    CHECK(sdhkb_record_execution(kb.handle, "{not json", trace, 3) ==
          SDHKB_ERR_PARSE);

    const double metadata[] = {0.2, 32.0, 1.4};
    REQUIRE(sdhkb_update_model(kb.handle, ids[1], ids[5], 0, metadata, 3, 25.0,
                               4.0, 1.0) == SDHKB_OK);
    double time_ms = 0.0, energy_mj = 0.0;
    REQUIRE(sdhkb_predict(kb.handle, ids[1], ids[5], 0, metadata, 3, &time_ms,
                          &energy_mj) == SDHKB_OK);
    CHECK(time_ms == doctest::Approx(25.0));

    CHECK(sdhkb_update_model(kb.handle, ids[1], ids[5], 9, metadata, 3, 1.0,
                             1.0, 0.5) == SDHKB_ERR_UNKNOWN_VARIANT);
    CHECK(sdhkb_update_model(kb.handle, ids[1], ids[5], 0, metadata, 3, 1.0,
                             1.0, 0.0) == SDHKB_ERR_INVALID_RATE);

    // merge fft and inverse-fft; frequencies add up
    uint64_t merge_list[] = {ids[1], ids[3]};
    uint64_t merged = 0;
    REQUIRE(sdhkb_merge_kernels(kb.handle, merge_list, 2, "fft-pair",
                                &merged) == SDHKB_OK);
    char* text = nullptr;
    REQUIRE(sdhkb_stats_json(kb.handle, &text) == SDHKB_OK);
    CHECK(json::parse(take(text))["kernels"] == 3);

    uint64_t dup[] = {merged, merged};
    CHECK(sdhkb_merge_kernels(kb.handle, dup, 2, "x", &merged) ==
          SDHKB_ERR_DUPLICATE_ID);
}

TEST_CASE("recommendation and estimation through the C interface") {
    Kb kb{};
    REQUIRE(sdhkb_build_fixture("convolution", &kb.handle) == SDHKB_OK);

    uint64_t* kernel_ids = nullptr;
    size_t n_kernels = 0;
    REQUIRE(sdhkb_list_kernels(kb.handle, &kernel_ids, &n_kernels) == SDHKB_OK);
    REQUIRE(n_kernels == 4);
    uint64_t fft = kernel_ids[0];
    sdhkb_free(kernel_ids);

    uint64_t* hw = nullptr;
    size_t n_hw = 0;
    REQUIRE(sdhkb_list_hardware(kb.handle, &hw, &n_hw) == SDHKB_OK);
    REQUIRE(n_hw == 2);

    const double metadata[] = {0.2, 32.0, 1.4};
    char* text = nullptr;
    REQUIRE(sdhkb_recommend_hardware_json(kb.handle, fft, metadata, 3, 1,
                                          hw[0], hw, n_hw, &text) == SDHKB_OK);
    json ranked = json::parse(take(text));
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0]["total_cost_ms"].get<double>() <=
          ranked[1]["total_cost_ms"].get<double>());
    sdhkb_free(hw);

    const double features[] = {0.2, 32.0, 1.4};
    REQUIRE(sdhkb_estimate_step_cost_json(kb.handle, features, 3, 1, &text) ==
            SDHKB_OK);
    json estimates = json::parse(take(text));
    CHECK(estimates.is_array());
    CHECK_FALSE(estimates.empty());
    for (const auto& e : estimates) {
        CHECK(e["support"] == 1);
    }
}

TEST_CASE("coverage, simulation and benchmarking through the C interface") {
    uint64_t links[] = {1, 2, 3};
    uint64_t known[] = {1, 2};
    double cov = 0.0;
    REQUIRE(sdhkb_coverage(links, 3, known, 2, &cov) == SDHKB_OK);
    CHECK(cov == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(sdhkb_coverage(nullptr, 0, known, 2, &cov) == SDHKB_ERR_EMPTY_LINKS);

    uint64_t sizes[] = {0, 10, 20};
    sdhkb_uncoverage_point points[3];
    REQUIRE(sdhkb_simulate_uncoverage(2.5, 2.0 / 3.0, 20, 4, 20, sizes, 3, 9,
                                      5, points) == SDHKB_OK);
    CHECK(points[0].mean_uncoverage == 1.0);
    CHECK(points[2].mean_uncoverage == 0.0);
    CHECK(sdhkb_simulate_uncoverage(0.0, 0.5, 20, 4, 20, sizes, 3, 9, 5,
                                    points) == SDHKB_ERR_INVALID_PARAMETER);

    Kb bench_kb{};
    REQUIRE(sdhkb_generate_random_kb(200, 2.0 / 3.0, 10, 2.5, 0, 1,
                                     &bench_kb.handle) == SDHKB_OK);
    sdhkb_bench_result result{};
    REQUIRE(sdhkb_time_queries(bench_kb.handle, 1, 200, 1, &result) ==
            SDHKB_OK);
    CHECK(result.n_steps == 200);
    CHECK(result.p50_ns <= result.p95_ns);
    CHECK(sdhkb_time_queries(bench_kb.handle, 4, 10, 1, &result) ==
          SDHKB_ERR_INVALID_PARAMETER);
}
