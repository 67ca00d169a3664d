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

#include "sdhkb.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "sdhkb/bench.hpp"
#include "sdhkb/cost_model.hpp"
#include "sdhkb/coverage_sim.hpp"
#include "sdhkb/fixtures.hpp"
#include "sdhkb/knowledge_base.hpp"
#include "sdhkb/persistence.hpp"
#include "sdhkb/query.hpp"

using nlohmann::json;

struct sdhkb_kb {
    sdhkb::KnowledgeBase impl;
};

namespace {

thread_local std::string g_last_error;

sdhkb_status map_code(sdhkb::ErrorCode code) {
    using sdhkb::ErrorCode;
    switch (code) {
        case ErrorCode::unknown_vertex: return SDHKB_ERR_UNKNOWN_VERTEX;
        case ErrorCode::unknown_edge: return SDHKB_ERR_UNKNOWN_EDGE;
        case ErrorCode::unknown_decomposition:
            return SDHKB_ERR_UNKNOWN_DECOMPOSITION;
        case ErrorCode::unknown_variant: return SDHKB_ERR_UNKNOWN_VARIANT;
        case ErrorCode::unknown_fixture: return SDHKB_ERR_UNKNOWN_FIXTURE;
        case ErrorCode::dimension_mismatch: return SDHKB_ERR_DIMENSION_MISMATCH;
        case ErrorCode::layer_violation: return SDHKB_ERR_LAYER_VIOLATION;
        case ErrorCode::sequence_gap: return SDHKB_ERR_SEQUENCE_GAP;
        case ErrorCode::duplicate_edge: return SDHKB_ERR_DUPLICATE_EDGE;
        case ErrorCode::duplicate_id: return SDHKB_ERR_DUPLICATE_ID;
        case ErrorCode::empty_variants: return SDHKB_ERR_EMPTY_VARIANTS;
        case ErrorCode::negative_cost: return SDHKB_ERR_NEGATIVE_COST;
        case ErrorCode::invalid_rate: return SDHKB_ERR_INVALID_RATE;
        case ErrorCode::invalid_parameter: return SDHKB_ERR_INVALID_PARAMETER;
        case ErrorCode::no_mapping: return SDHKB_ERR_NO_MAPPING;
        case ErrorCode::zero_similarity: return SDHKB_ERR_ZERO_SIMILARITY;
        case ErrorCode::empty_kb: return SDHKB_ERR_EMPTY_KB;
        case ErrorCode::empty_links: return SDHKB_ERR_EMPTY_LINKS;
        case ErrorCode::io_error: return SDHKB_ERR_IO;
        case ErrorCode::parse_error: return SDHKB_ERR_PARSE;
        case ErrorCode::version_mismatch: return SDHKB_ERR_VERSION_MISMATCH;
        case ErrorCode::invariant_violation:
            return SDHKB_ERR_INVARIANT_VIOLATION;
    }
    return SDHKB_ERR_INTERNAL;
}

template <typename F>
sdhkb_status guarded(F&& body) {
    try {
        body();
        return SDHKB_OK;
    } catch (const sdhkb::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SDHKB_ERR_INTERNAL;
    }
}

sdhkb_status invalid(const char* what) {
    g_last_error = what;
    return SDHKB_ERR_INVALID_PARAMETER;
}

char* copy_to_c(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    std::memcpy(out, text.data(), text.size() + 1);
    return out;
}

std::map<std::string, double> kv_map(const char* const* keys,
                                     const double* values, size_t n) {
    std::map<std::string, double> out;
    for (size_t i = 0; i < n; ++i) {
        out.emplace(keys[i], values[i]);
    }
    return out;
}

json edge_to_json(const sdhkb::PerformanceModelEdge& edge) {
    json mappings = json::array();
    for (const auto& mv : edge.mappings) {
        mappings.push_back({{"variant_id", mv.variant_id},
                            {"update_count", mv.model.update_count},
                            {"time_params", mv.model.time_params},
                            {"energy_params", mv.model.energy_params}});
    }
    return json{{"edge_id", edge.id},
                {"kernel", edge.kernel_id},
                {"hardware", edge.hardware_id},
                {"mappings", std::move(mappings)}};
}

sdhkb::Workflow workflow_from_json(const char* text) {
    sdhkb::Workflow wf;
    if (text == nullptr) return wf;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw sdhkb::Error(sdhkb::ErrorCode::parse_error,
                           std::string("workflow json: ") + e.what());
    }
    try {
        wf.id = doc.value("id", 0ULL);
        for (const json& s : doc.value("states", json::array())) {
            wf.states.push_back(s.is_null() ? sdhkb::kUnknownStepId
                                            : s.get<sdhkb::NodeId>());
        }
        for (const json& t : doc.value("transitions", json::array())) {
            wf.transitions.push_back({t.at(0).get<std::size_t>(),
                                      t.at(1).get<std::size_t>(),
                                      t.size() > 2 ? t.at(2).get<std::string>()
                                                   : std::string{}});
        }
        wf.initial = doc.value("initial", 0ULL);
        for (const json& t : doc.value("terminal", json::array())) {
            wf.terminal.insert(t.get<std::size_t>());
        }
    } catch (const json::exception& e) {
        throw sdhkb::Error(sdhkb::ErrorCode::parse_error,
                           std::string("workflow json: ") + e.what());
    }
    return wf;
}

} // namespace

extern "C" {

const char* sdhkb_last_error_message(void) { return g_last_error.c_str(); }

void sdhkb_free(void* buffer) { std::free(buffer); }

sdhkb_kb* sdhkb_create(void) { return new sdhkb_kb{}; }

sdhkb_kb* sdhkb_create_with_schema(const char* const* names, size_t n_names) {
    std::vector<std::string> schema;
    schema.reserve(n_names);
    for (size_t i = 0; i < n_names; ++i) schema.emplace_back(names[i]);
    return new sdhkb_kb{sdhkb::KnowledgeBase(std::move(schema))};
}

void sdhkb_destroy(sdhkb_kb* kb) { delete kb; }

sdhkb_status sdhkb_load(const char* path, sdhkb_kb** out_kb) {
    if (path == nullptr || out_kb == nullptr) return invalid("null argument");
    return guarded([&] {
        *out_kb = new sdhkb_kb{sdhkb::persistence::load_file(path)};
    });
}

sdhkb_status sdhkb_save(const sdhkb_kb* kb, const char* path) {
    if (kb == nullptr || path == nullptr) return invalid("null argument");
    return guarded([&] { sdhkb::persistence::save_file(kb->impl, path); });
}

sdhkb_status sdhkb_add_step(sdhkb_kb* kb, const char* name,
                            const double* features, size_t n_features,
                            uint64_t* out_id) {
    if (kb == nullptr || name == nullptr || out_id == nullptr ||
        (features == nullptr && n_features > 0)) {
        return invalid("null argument");
    }
    return guarded([&] {
        *out_id = kb->impl.add_step(
            name, std::vector<double>(features, features + n_features));
    });
}

sdhkb_status sdhkb_add_kernel(sdhkb_kb* kb, const char* name, int identified,
                              uint64_t* out_id) {
    if (kb == nullptr || name == nullptr || out_id == nullptr) {
        return invalid("null argument");
    }
    return guarded([&] { *out_id = kb->impl.add_kernel(name, identified != 0); });
}

sdhkb_status sdhkb_add_hardware(sdhkb_kb* kb, const char* name,
                                const char* const* char_keys,
                                const double* char_values,
                                size_t n_characteristics,
                                double reconfig_cost_ms, uint64_t* out_id) {
    if (kb == nullptr || name == nullptr || out_id == nullptr ||
        (n_characteristics > 0 &&
         (char_keys == nullptr || char_values == nullptr))) {
        return invalid("null argument");
    }
    return guarded([&] {
        *out_id = kb->impl.add_hardware(
            name, kv_map(char_keys, char_values, n_characteristics),
            reconfig_cost_ms);
    });
}

sdhkb_status sdhkb_link_step_kernel(sdhkb_kb* kb, uint64_t step,
                                    uint64_t kernel, uint32_t d_id,
                                    uint32_t seq_index,
                                    const char* const* weight_keys,
                                    const double* weight_values,
                                    size_t n_weights, uint64_t* out_edge_id) {
    if (kb == nullptr || out_edge_id == nullptr ||
        (n_weights > 0 && (weight_keys == nullptr || weight_values == nullptr))) {
        return invalid("null argument");
    }
    return guarded([&] {
        *out_edge_id = kb->impl.link_step_kernel(
            step, kernel, d_id, seq_index,
            kv_map(weight_keys, weight_values, n_weights));
    });
}

sdhkb_status sdhkb_link_kernel_hardware(sdhkb_kb* kb, uint64_t kernel,
                                        uint64_t hardware,
                                        const sdhkb_cost_model_init* variants,
                                        size_t n_variants,
                                        uint64_t* out_edge_id) {
    if (kb == nullptr || out_edge_id == nullptr ||
        (n_variants > 0 && variants == nullptr)) {
        return invalid("null argument");
    }
    return guarded([&] {
        std::vector<sdhkb::CostModel> models;
        models.reserve(n_variants);
        for (size_t i = 0; i < n_variants; ++i) {
            const auto& v = variants[i];
            if (v.time_params == nullptr || v.energy_params == nullptr) {
                throw sdhkb::Error(sdhkb::ErrorCode::invalid_parameter,
                                   "null parameter vector in variant");
            }
            models.push_back(sdhkb::CostModel{
                std::vector<double>(v.time_params, v.time_params + v.n_params),
                std::vector<double>(v.energy_params,
                                    v.energy_params + v.n_params),
                0});
        }
        *out_edge_id =
            kb->impl.link_kernel_hardware(kernel, hardware, std::move(models));
    });
}

sdhkb_status sdhkb_merge_kernels(sdhkb_kb* kb, const uint64_t* kernels,
                                 size_t n_kernels, const char* new_name,
                                 uint64_t* out_id) {
    if (kb == nullptr || new_name == nullptr || out_id == nullptr ||
        (n_kernels > 0 && kernels == nullptr)) {
        return invalid("null argument");
    }
    return guarded([&] {
        *out_id = kb->impl.merge_kernels(
            std::vector<sdhkb::NodeId>(kernels, kernels + n_kernels), new_name);
    });
}

sdhkb_status sdhkb_record_execution(sdhkb_kb* kb, const char* workflow_json,
                                    const uint64_t* kernel_trace,
                                    size_t n_trace) {
    if (kb == nullptr || (n_trace > 0 && kernel_trace == nullptr)) {
        return invalid("null argument");
    }
    return guarded([&] {
        kb->impl.record_execution(
            workflow_from_json(workflow_json),
            std::vector<sdhkb::NodeId>(kernel_trace, kernel_trace + n_trace));
    });
}

sdhkb_status sdhkb_update_model(sdhkb_kb* kb, uint64_t kernel,
                                uint64_t hardware, uint32_t variant_id,
                                const double* metadata, size_t n_metadata,
                                double observed_time_ms,
                                double observed_energy_mj, double rate) {
    if (kb == nullptr || (n_metadata > 0 && metadata == nullptr)) {
        return invalid("null argument");
    }
    return guarded([&] {
        sdhkb::Observation obs{
            std::vector<double>(metadata, metadata + n_metadata),
            observed_time_ms, observed_energy_mj};
        kb->impl.update_model(kernel, hardware, variant_id, obs, rate);
    });
}

sdhkb_status sdhkb_predict(const sdhkb_kb* kb, uint64_t kernel,
                           uint64_t hardware, uint32_t variant_id,
                           const double* metadata, size_t n_metadata,
                           double* out_time_ms, double* out_energy_mj) {
    if (kb == nullptr || out_time_ms == nullptr || out_energy_mj == nullptr ||
        (n_metadata > 0 && metadata == nullptr)) {
        return invalid("null argument");
    }
    return guarded([&] {
        const auto* edge = sdhkb::query::type2(kb->impl, kernel, hardware);
        if (edge == nullptr) {
            throw sdhkb::Error(sdhkb::ErrorCode::no_mapping,
                               "kernel has no mapping onto this hardware");
        }
        for (const auto& mv : edge->mappings) {
            if (mv.variant_id == variant_id) {
                auto pred = sdhkb::predict(
                    mv.model, std::span(metadata, n_metadata));
                *out_time_ms = pred.time_ms;
                *out_energy_mj = pred.energy_mj;
                return;
            }
        }
        throw sdhkb::Error(sdhkb::ErrorCode::unknown_variant,
                           "no mapping variant " + std::to_string(variant_id));
    });
}

sdhkb_status sdhkb_query_type1(const sdhkb_kb* kb, uint64_t step,
                               uint64_t** out_kernels, size_t* out_n) {
    if (kb == nullptr || out_kernels == nullptr || out_n == nullptr) {
        return invalid("null argument");
    }
    return guarded([&] {
        auto kernels = sdhkb::query::type1(kb->impl, step);
        auto* buf = static_cast<uint64_t*>(
            std::malloc(sizeof(uint64_t) * std::max<size_t>(1, kernels.size())));
        std::memcpy(buf, kernels.data(), sizeof(uint64_t) * kernels.size());
        *out_kernels = buf;
        *out_n = kernels.size();
    });
}

sdhkb_status sdhkb_query_type2_json(const sdhkb_kb* kb, uint64_t kernel,
                                    uint64_t hardware, char** out_json) {
    if (kb == nullptr || out_json == nullptr) return invalid("null argument");
    return guarded([&] {
        const auto* edge = sdhkb::query::type2(kb->impl, kernel, hardware);
        *out_json = copy_to_c(
            edge == nullptr ? "null" : edge_to_json(*edge).dump());
    });
}

sdhkb_status sdhkb_query_type3_json(const sdhkb_kb* kb, uint64_t kernel,
                                    char** out_json) {
    if (kb == nullptr || out_json == nullptr) return invalid("null argument");
    return guarded([&] {
        json out = json::array();
        for (const auto& [hw, edge] : sdhkb::query::type3(kb->impl, kernel)) {
            out.push_back(edge_to_json(*edge));
        }
        *out_json = copy_to_c(out.dump());
    });
}

sdhkb_status sdhkb_resolve_decomposition_json(const sdhkb_kb* kb,
                                              uint64_t step, uint32_t d_id,
                                              char** out_json) {
    if (kb == nullptr || out_json == nullptr) return invalid("null argument");
    return guarded([&] {
        json out = json::array();
        for (const auto& [kernel, weight] :
             sdhkb::query::resolve_decomposition(kb->impl, step, d_id)) {
            out.push_back({{"kernel", kernel}, {"weight", weight}});
        }
        *out_json = copy_to_c(out.dump());
    });
}

sdhkb_status sdhkb_list_decompositions(const sdhkb_kb* kb, uint64_t step,
                                       uint32_t** out_d_ids, size_t* out_n) {
    if (kb == nullptr || out_d_ids == nullptr || out_n == nullptr) {
        return invalid("null argument");
    }
    return guarded([&] {
        auto d_ids = sdhkb::query::list_decompositions(kb->impl, step);
        auto* buf = static_cast<uint32_t*>(
            std::malloc(sizeof(uint32_t) * std::max<size_t>(1, d_ids.size())));
        std::memcpy(buf, d_ids.data(), sizeof(uint32_t) * d_ids.size());
        *out_d_ids = buf;
        *out_n = d_ids.size();
    });
}

sdhkb_status sdhkb_recommend_hardware_json(
    const sdhkb_kb* kb, uint64_t kernel, const double* metadata,
    size_t n_metadata, int has_current, uint64_t current_config,
    const uint64_t* available, size_t n_available, char** out_json) {
    if (kb == nullptr || out_json == nullptr ||
        (n_metadata > 0 && metadata == nullptr) ||
        (n_available > 0 && available == nullptr)) {
        return invalid("null argument");
    }
    return guarded([&] {
        std::optional<sdhkb::NodeId> current;
        if (has_current != 0) current = current_config;
        auto ranked = sdhkb::query::recommend_hardware(
            kb->impl, kernel, std::span(metadata, n_metadata), current,
            std::span(available, n_available));
        json out = json::array();
        for (const auto& r : ranked) {
            out.push_back({{"hardware", r.hardware_id},
                           {"variant_id", r.variant_id},
                           {"predicted_time_ms", r.predicted_time_ms},
                           {"predicted_energy_mj", r.predicted_energy_mj},
                           {"reconfig_penalty_ms", r.reconfig_penalty_ms},
                           {"total_cost_ms", r.total_cost_ms}});
        }
        *out_json = copy_to_c(out.dump());
    });
}

sdhkb_status sdhkb_estimate_step_cost_json(const sdhkb_kb* kb,
                                           const double* features,
                                           size_t n_features, uint64_t k,
                                           char** out_json) {
    if (kb == nullptr || out_json == nullptr ||
        (n_features > 0 && features == nullptr)) {
        return invalid("null argument");
    }
    return guarded([&] {
        auto estimates = sdhkb::query::estimate_step_cost(
            kb->impl, std::span(features, n_features),
            static_cast<std::size_t>(k));
        json out = json::array();
        for (const auto& e : estimates) {
            out.push_back({{"hardware", e.hardware_id},
                           {"estimated_time_ms", e.estimated_time_ms},
                           {"support", e.support},
                           {"confidence_weight", e.confidence_weight}});
        }
        *out_json = copy_to_c(out.dump());
    });
}

sdhkb_status sdhkb_stats_json(const sdhkb_kb* kb, char** out_json) {
    if (kb == nullptr || out_json == nullptr) return invalid("null argument");
    return guarded([&] {
        const auto& impl = kb->impl;
        json out{{"steps", impl.step_count()},
                 {"kernels", impl.kernel_count()},
                 {"hardware", impl.hardware_count()},
                 {"kernel_map_edges", impl.kernel_map_count()},
                 {"performance_model_edges", impl.performance_model_count()},
                 {"feature_schema",
                  {{"fixed", impl.schema_fixed()},
                   {"dimensions", impl.feature_names()}}}};
        *out_json = copy_to_c(out.dump());
    });
}

namespace {

sdhkb_status copy_id_list(const std::vector<sdhkb::NodeId>& ids,
                          uint64_t** out_ids, size_t* out_n) {
    auto* buf = static_cast<uint64_t*>(
        std::malloc(sizeof(uint64_t) * std::max<size_t>(1, ids.size())));
    std::memcpy(buf, ids.data(), sizeof(uint64_t) * ids.size());
    *out_ids = buf;
    *out_n = ids.size();
    return SDHKB_OK;
}

} // namespace

sdhkb_status sdhkb_list_steps(const sdhkb_kb* kb, uint64_t** out_ids,
                              size_t* out_n) {
    if (kb == nullptr || out_ids == nullptr || out_n == nullptr) {
        return invalid("null argument");
    }
    return copy_id_list(kb->impl.step_ids(), out_ids, out_n);
}

sdhkb_status sdhkb_list_kernels(const sdhkb_kb* kb, uint64_t** out_ids,
                                size_t* out_n) {
    if (kb == nullptr || out_ids == nullptr || out_n == nullptr) {
        return invalid("null argument");
    }
    return copy_id_list(kb->impl.kernel_ids(), out_ids, out_n);
}

sdhkb_status sdhkb_list_hardware(const sdhkb_kb* kb, uint64_t** out_ids,
                                 size_t* out_n) {
    if (kb == nullptr || out_ids == nullptr || out_n == nullptr) {
        return invalid("null argument");
    }
    return copy_id_list(kb->impl.hardware_ids(), out_ids, out_n);
}

sdhkb_status sdhkb_coverage(const uint64_t* workflow_links, size_t n_links,
                            const uint64_t* kb_kernels, size_t n_kb_kernels,
                            double* out_coverage) {
    if (out_coverage == nullptr || (n_links > 0 && workflow_links == nullptr) ||
        (n_kb_kernels > 0 && kb_kernels == nullptr)) {
        return invalid("null argument");
    }
    return guarded([&] {
        *out_coverage = sdhkb::coverage_sim::coverage(
            std::span(workflow_links, n_links),
            std::span(kb_kernels, n_kb_kernels));
    });
}

sdhkb_status sdhkb_simulate_uncoverage(
    double lambda, double p, uint64_t n_workflows, uint64_t steps_per_workflow,
    uint64_t universe_kernels, const uint64_t* kb_sizes, size_t n_kb_sizes,
    uint64_t seed, uint64_t replicates, sdhkb_uncoverage_point* out_points) {
    if (out_points == nullptr || (n_kb_sizes > 0 && kb_sizes == nullptr)) {
        return invalid("null argument");
    }
    return guarded([&] {
        sdhkb::coverage_sim::WorkloadParams params{
            lambda, p, n_workflows, steps_per_workflow, universe_kernels};
        auto points = sdhkb::coverage_sim::simulate_uncoverage(
            params, std::span(kb_sizes, n_kb_sizes), seed, replicates);
        for (size_t i = 0; i < points.size(); ++i) {
            out_points[i] = sdhkb_uncoverage_point{points[i].kb_kernel_count,
                                                   points[i].mean_uncoverage,
                                                   points[i].stddev_uncoverage};
        }
    });
}

sdhkb_status sdhkb_generate_random_kb(uint64_t n_steps, double p, uint64_t h,
                                      double lambda, int disjoint_stars,
                                      uint64_t seed, sdhkb_kb** out_kb) {
    if (out_kb == nullptr) return invalid("null argument");
    return guarded([&] {
        sdhkb::bench::RandomKbParams params{n_steps, p, h, lambda,
                                            disjoint_stars != 0};
        *out_kb = new sdhkb_kb{sdhkb::bench::generate_random_kb(params, seed)};
    });
}

sdhkb_status sdhkb_time_queries(const sdhkb_kb* kb, int query_type,
                                uint64_t trials, uint64_t seed,
                                sdhkb_bench_result* out_result) {
    if (kb == nullptr || out_result == nullptr) return invalid("null argument");
    if (query_type < 1 || query_type > 3) {
        return invalid("query_type must be 1, 2 or 3");
    }
    return guarded([&] {
        auto r = sdhkb::bench::time_queries(
            kb->impl, static_cast<sdhkb::bench::QueryType>(query_type), trials,
            seed);
        *out_result = sdhkb_bench_result{r.n_steps, r.query_type, r.trials,
                                         r.mean_ns, r.p50_ns, r.p95_ns};
    });
}

sdhkb_status sdhkb_build_fixture(const char* name, sdhkb_kb** out_kb) {
    if (name == nullptr || out_kb == nullptr) return invalid("null argument");
    return guarded([&] {
        *out_kb = new sdhkb_kb{sdhkb::fixtures::build_fixture(name)};
    });
}

} // extern "C"
