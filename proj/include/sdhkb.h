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

/*
 * C interface of the sdhkb shared library.
 *
 * A knowledge base is an opaque handle created by sdhkb_create /
 * sdhkb_load / sdhkb_generate_random_kb / sdhkb_build_fixture and released
 * with sdhkb_destroy. Every fallible call returns a status code; on failure
 * sdhkb_last_error_message() describes the problem for the calling thread.
 *
 * Structured query results come back as JSON text; plain id lists come back
 * as arrays. Both are heap buffers owned by the caller: release them with
 * sdhkb_free.
 *
 * Concurrency follows the library contract: no internal locking. A handle
 * may be read from several threads at once, but mutations (add/link/merge/
 * record/update/load-into) must be serialized by the caller and never
 * overlap reads.
 */

#ifndef SDHKB_H
#define SDHKB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef SDHKB_API
#define SDHKB_API __attribute__((visibility("default")))
#endif

typedef struct sdhkb_kb sdhkb_kb; /* opaque knowledge-base handle */

typedef enum sdhkb_status {
    SDHKB_OK = 0,
    SDHKB_ERR_UNKNOWN_VERTEX = 1,
    SDHKB_ERR_UNKNOWN_EDGE = 2,
    SDHKB_ERR_UNKNOWN_DECOMPOSITION = 3,
    SDHKB_ERR_UNKNOWN_VARIANT = 4,
    SDHKB_ERR_UNKNOWN_FIXTURE = 5,
    SDHKB_ERR_DIMENSION_MISMATCH = 6,
    SDHKB_ERR_LAYER_VIOLATION = 7,
    SDHKB_ERR_SEQUENCE_GAP = 8,
    SDHKB_ERR_DUPLICATE_EDGE = 9,
    SDHKB_ERR_DUPLICATE_ID = 10,
    SDHKB_ERR_EMPTY_VARIANTS = 11,
    SDHKB_ERR_NEGATIVE_COST = 12,
    SDHKB_ERR_INVALID_RATE = 13,
    SDHKB_ERR_INVALID_PARAMETER = 14,
    SDHKB_ERR_NO_MAPPING = 15,
    SDHKB_ERR_ZERO_SIMILARITY = 16,
    SDHKB_ERR_EMPTY_KB = 17,
    SDHKB_ERR_EMPTY_LINKS = 18,
    SDHKB_ERR_IO = 19,
    SDHKB_ERR_PARSE = 20,
    SDHKB_ERR_VERSION_MISMATCH = 21,
    SDHKB_ERR_INVARIANT_VIOLATION = 22,
    SDHKB_ERR_INTERNAL = 23
} sdhkb_status;

/* Message describing the most recent failure on this thread. */
SDHKB_API const char* sdhkb_last_error_message(void);

/* Releases any buffer (array or string) returned by this library. */
SDHKB_API void sdhkb_free(void* buffer);

/* ---- lifecycle -------------------------------------------------------- */

SDHKB_API sdhkb_kb* sdhkb_create(void);
/* Fixes the feature schema to the given dimension names. */
SDHKB_API sdhkb_kb* sdhkb_create_with_schema(const char* const* names,
                                             size_t n_names);
SDHKB_API void sdhkb_destroy(sdhkb_kb* kb);

SDHKB_API sdhkb_status sdhkb_load(const char* path, sdhkb_kb** out_kb);
SDHKB_API sdhkb_status sdhkb_save(const sdhkb_kb* kb, const char* path);

/* ---- mutation --------------------------------------------------------- */

SDHKB_API sdhkb_status sdhkb_add_step(sdhkb_kb* kb, const char* name,
                                      const double* features,
                                      size_t n_features, uint64_t* out_id);

SDHKB_API sdhkb_status sdhkb_add_kernel(sdhkb_kb* kb, const char* name,
                                        int identified, uint64_t* out_id);

SDHKB_API sdhkb_status sdhkb_add_hardware(sdhkb_kb* kb, const char* name,
                                          const char* const* char_keys,
                                          const double* char_values,
                                          size_t n_characteristics,
                                          double reconfig_cost_ms,
                                          uint64_t* out_id);

SDHKB_API sdhkb_status sdhkb_link_step_kernel(
    sdhkb_kb* kb, uint64_t step, uint64_t kernel, uint32_t d_id,
    uint32_t seq_index, const char* const* weight_keys,
    const double* weight_values, size_t n_weights, uint64_t* out_edge_id);

/* One mapping variant: [intercept, per-feature coefficients], n_params =
 * feature dimension + 1, same length for time and energy. */
typedef struct sdhkb_cost_model_init {
    const double* time_params;
    const double* energy_params;
    size_t n_params;
} sdhkb_cost_model_init;

SDHKB_API sdhkb_status sdhkb_link_kernel_hardware(
    sdhkb_kb* kb, uint64_t kernel, uint64_t hardware,
    const sdhkb_cost_model_init* variants, size_t n_variants,
    uint64_t* out_edge_id);

SDHKB_API sdhkb_status sdhkb_merge_kernels(sdhkb_kb* kb,
                                           const uint64_t* kernels,
                                           size_t n_kernels,
                                           const char* new_name,
                                           uint64_t* out_id);

/* workflow_json: {"id":0,"states":[...],"transitions":[[from,to,"label"],...],
 * "initial":0,"terminal":[...]} with null in "states" for steps not yet in
 * the KB. Pass NULL for a trivial empty workflow. */
SDHKB_API sdhkb_status sdhkb_record_execution(sdhkb_kb* kb,
                                              const char* workflow_json,
                                              const uint64_t* kernel_trace,
                                              size_t n_trace);

SDHKB_API sdhkb_status sdhkb_update_model(sdhkb_kb* kb, uint64_t kernel,
                                          uint64_t hardware,
                                          uint32_t variant_id,
                                          const double* metadata,
                                          size_t n_metadata,
                                          double observed_time_ms,
                                          double observed_energy_mj,
                                          double rate);

/* ---- prediction ------------------------------------------------------- */

SDHKB_API sdhkb_status sdhkb_predict(const sdhkb_kb* kb, uint64_t kernel,
                                     uint64_t hardware, uint32_t variant_id,
                                     const double* metadata, size_t n_metadata,
                                     double* out_time_ms,
                                     double* out_energy_mj);

/* ---- queries ---------------------------------------------------------- */

/* Type 1: kernels linked with a step, deduplicated, ascending id. */
SDHKB_API sdhkb_status sdhkb_query_type1(const sdhkb_kb* kb, uint64_t step,
                                         uint64_t** out_kernels,
                                         size_t* out_n);

/* Type 2: the (kernel, hardware) performance model as a JSON object, or the
 * JSON literal null when the pair is unlinked. */
SDHKB_API sdhkb_status sdhkb_query_type2_json(const sdhkb_kb* kb,
                                              uint64_t kernel,
                                              uint64_t hardware,
                                              char** out_json);

/* Type 3: JSON array of performance models on all linked hardware,
 * ascending hardware id. */
SDHKB_API sdhkb_status sdhkb_query_type3_json(const sdhkb_kb* kb,
                                              uint64_t kernel,
                                              char** out_json);

/* Kernels of decomposition (step, d_id) in sequence order, with weights. */
SDHKB_API sdhkb_status sdhkb_resolve_decomposition_json(const sdhkb_kb* kb,
                                                        uint64_t step,
                                                        uint32_t d_id,
                                                        char** out_json);

SDHKB_API sdhkb_status sdhkb_list_decompositions(const sdhkb_kb* kb,
                                                 uint64_t step,
                                                 uint32_t** out_d_ids,
                                                 size_t* out_n);

/* Ranked hardware recommendations for a kernel. has_current == 0 means no
 * current configuration (every candidate pays its reconfiguration cost). */
SDHKB_API sdhkb_status sdhkb_recommend_hardware_json(
    const sdhkb_kb* kb, uint64_t kernel, const double* metadata,
    size_t n_metadata, int has_current, uint64_t current_config,
    const uint64_t* available, size_t n_available, char** out_json);

/* Per-hardware execution-time estimates for an unknown step from its k
 * nearest known steps. */
SDHKB_API sdhkb_status sdhkb_estimate_step_cost_json(const sdhkb_kb* kb,
                                                     const double* features,
                                                     size_t n_features,
                                                     uint64_t k,
                                                     char** out_json);

/* Vertex/edge counts and the feature schema. */
SDHKB_API sdhkb_status sdhkb_stats_json(const sdhkb_kb* kb, char** out_json);

/* Vertex ids of one layer, ascending. */
SDHKB_API sdhkb_status sdhkb_list_steps(const sdhkb_kb* kb, uint64_t** out_ids,
                                        size_t* out_n);
SDHKB_API sdhkb_status sdhkb_list_kernels(const sdhkb_kb* kb,
                                          uint64_t** out_ids, size_t* out_n);
SDHKB_API sdhkb_status sdhkb_list_hardware(const sdhkb_kb* kb,
                                           uint64_t** out_ids, size_t* out_n);

/* ---- coverage and workload simulation --------------------------------- */

SDHKB_API sdhkb_status sdhkb_coverage(const uint64_t* workflow_links,
                                      size_t n_links,
                                      const uint64_t* kb_kernels,
                                      size_t n_kb_kernels,
                                      double* out_coverage);

typedef struct sdhkb_uncoverage_point {
    uint64_t kb_kernel_count;
    double mean_uncoverage;
    double stddev_uncoverage;
} sdhkb_uncoverage_point;

/* out_points must hold n_kb_sizes entries; kb_sizes must ascend and stay
 * within [0, universe_kernels]. */
SDHKB_API sdhkb_status sdhkb_simulate_uncoverage(
    double lambda, double p, uint64_t n_workflows,
    uint64_t steps_per_workflow, uint64_t universe_kernels,
    const uint64_t* kb_sizes, size_t n_kb_sizes, uint64_t seed,
    uint64_t replicates, sdhkb_uncoverage_point* out_points);

/* ---- benchmarking ----------------------------------------------------- */

typedef struct sdhkb_bench_result {
    uint64_t n_steps;
    int query_type;
    uint64_t trials;
    double mean_ns;
    double p50_ns;
    double p95_ns;
} sdhkb_bench_result;

SDHKB_API sdhkb_status sdhkb_generate_random_kb(uint64_t n_steps, double p,
                                                uint64_t h, double lambda,
                                                int disjoint_stars,
                                                uint64_t seed,
                                                sdhkb_kb** out_kb);

SDHKB_API sdhkb_status sdhkb_time_queries(const sdhkb_kb* kb, int query_type,
                                          uint64_t trials, uint64_t seed,
                                          sdhkb_bench_result* out_result);

/* ---- fixtures ---------------------------------------------------------- */

/* name: "node-classification" or "convolution". */
SDHKB_API sdhkb_status sdhkb_build_fixture(const char* name,
                                           sdhkb_kb** out_kb);

#ifdef __cplusplus
}
#endif

#endif /* SDHKB_H */
