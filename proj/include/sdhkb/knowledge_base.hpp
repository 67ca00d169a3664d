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

#ifndef SDHKB_KNOWLEDGE_BASE_HPP
#define SDHKB_KNOWLEDGE_BASE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sdhkb/error.hpp"
#include "sdhkb/types.hpp"

namespace sdhkb {

/// Inline adjacency entry for a step's kernel-map edges. Carries everything
/// the latency-critical queries need so they touch one contiguous block
/// instead of chasing the edge table per entry.
struct KernelMapRef {
    EdgeId edge_id = 0;
    NodeId kernel_id = 0;
    std::uint32_t d_id = 0;
    std::uint32_t seq_index = 0;
};

/// Inline adjacency entry for a kernel's performance-model edges.
struct PerformanceModelRef {
    EdgeId edge_id = 0;
    NodeId hardware_id = 0;
};

/// The tripartite graph: steps (V1), kernels (V2) and hardware configurations
/// (V3), with kernel-map edges V1->V2 and performance-model edges V2->V3.
///
/// Concurrency contract: single writer, no internal locking. Const methods
/// are safe to call concurrently with each other but never concurrently with
/// a mutation; callers own serialization of mutations.
class KnowledgeBase {
public:
    KnowledgeBase() = default;

    /// Fixes the feature schema up front. Otherwise the first add_step (or
    /// the first cost model, for the dimension) establishes it.
    explicit KnowledgeBase(std::vector<std::string> feature_names);

    KnowledgeBase(KnowledgeBase&&) = default;
    KnowledgeBase& operator=(KnowledgeBase&&) = default;
    KnowledgeBase(const KnowledgeBase&) = default;
    KnowledgeBase& operator=(const KnowledgeBase&) = default;

    // --- mutations ------------------------------------------------------

    NodeId add_step(std::string name, std::vector<double> features);
    NodeId add_kernel(std::string name, bool identified);
    NodeId add_hardware(std::string name,
                        std::map<std::string, double> characteristics,
                        double reconfig_cost_ms);

    /// Appends one position to decomposition (step, d_id). seq_index must
    /// equal the decomposition's current length.
    EdgeId link_step_kernel(NodeId step, NodeId kernel, std::uint32_t d_id,
                            std::uint32_t seq_index,
                            std::map<std::string, double> weight);

    /// Creates the unique (kernel, hardware) edge with variant ids 0..n-1.
    EdgeId link_kernel_hardware(NodeId kernel, NodeId hardware,
                                std::vector<CostModel> variant_models);

    /// Replaces >= 2 kernels with one. Kernel-map edges are re-targeted;
    /// runs of adjacent merged kernels within one decomposition collapse to
    /// a single position (keeping the first edge) and seq indices re-compact.
    /// Performance-model edges to a common hardware are united with variant
    /// ids reassigned 0..n-1. New frequency is the sum of the old ones.
    NodeId merge_kernels(const std::vector<NodeId>& kernels,
                         std::string new_name);

    /// Bumps each kernel's frequency by its occurrence count in the trace.
    /// Validates everything first; on error nothing changes.
    void record_execution(const Workflow& workflow,
                          const std::vector<NodeId>& kernel_trace);

    /// Applies one observation to the stored model of a mapping variant.
    void update_model(NodeId kernel, NodeId hardware, std::uint32_t variant_id,
                      const Observation& obs, double rate);

    // --- lookups ----------------------------------------------------------

    const StepNode* find_step(NodeId id) const;
    const KernelNode* find_kernel(NodeId id) const;
    const HardwareNode* find_hardware(NodeId id) const;

    const StepNode& step(NodeId id) const;
    const KernelNode& kernel(NodeId id) const;
    const HardwareNode& hardware(NodeId id) const;

    const KernelMapEdge& kernel_map(EdgeId id) const;
    const PerformanceModelEdge& performance_model(EdgeId id) const;

    /// The unique (kernel, hardware) edge, or nullptr when unlinked.
    const PerformanceModelEdge* find_performance_model(NodeId kernel,
                                                       NodeId hardware) const;

    // --- adjacency --------------------------------------------------------

    /// Kernel-map edges leaving a step (unspecified order). Throws
    /// Error(unknown_vertex) when the id is not a step.
    std::span<const KernelMapRef> step_kernel_maps(NodeId step) const;
    /// Kernel-map edge ids entering a kernel (unspecified order).
    std::span<const EdgeId> kernel_kernel_maps(NodeId kernel) const;
    /// Performance-model edges leaving a kernel (unspecified order). Throws
    /// Error(unknown_vertex) when the id is not a kernel.
    std::span<const PerformanceModelRef> kernel_performance_models(
        NodeId kernel) const;

    // --- enumeration (ascending id order) -----------------------------------

    std::vector<NodeId> step_ids() const;
    std::vector<NodeId> kernel_ids() const;
    std::vector<NodeId> hardware_ids() const;
    std::vector<EdgeId> kernel_map_ids() const;
    std::vector<EdgeId> performance_model_ids() const;

    std::size_t step_count() const { return steps_.size(); }
    std::size_t kernel_count() const { return kernels_.size(); }
    std::size_t hardware_count() const { return hardware_.size(); }
    std::size_t kernel_map_count() const { return kernel_maps_.size(); }
    std::size_t performance_model_count() const { return perf_models_.size(); }

    NodeId next_vertex_id() const { return next_vertex_id_; }
    EdgeId next_edge_id() const { return next_edge_id_; }

    // --- feature schema ---------------------------------------------------

    bool schema_fixed() const { return schema_fixed_; }
    std::size_t feature_dim() const { return feature_names_.size(); }
    const std::vector<std::string>& feature_names() const {
        return feature_names_;
    }

    /// Throws Error(dimension_mismatch) unless `dim` matches the schema;
    /// fixes the schema (with generated names) when it is still open.
    void require_feature_dim(std::size_t dim);

    // --- integrity ----------------------------------------------------------

    /// Full structural scan; throws Error(invariant_violation) on the first
    /// broken invariant. Used after bulk construction (load) and by tests.
    void check_invariants() const;

    /// Raw state for bulk construction; produced by loaders.
    struct Parts {
        bool schema_fixed = false;
        std::vector<std::string> feature_names;
        std::vector<StepNode> steps;
        std::vector<KernelNode> kernels;
        std::vector<HardwareNode> hardware;
        std::vector<KernelMapEdge> kernel_maps;
        std::vector<PerformanceModelEdge> perf_models;
        NodeId next_vertex_id = 0;
        EdgeId next_edge_id = 0;
    };

    /// Builds a KB from raw parts, rebuilding indices and validating every
    /// structural invariant. Throws without leaking a partial KB.
    static KnowledgeBase from_parts(Parts parts);

private:
    NodeId fresh_vertex_id() { return next_vertex_id_++; }
    EdgeId fresh_edge_id() { return next_edge_id_++; }

    const KernelNode& kernel_mut_check(NodeId id) const;
    std::size_t decomposition_length(NodeId step, std::uint32_t d_id) const;

    bool schema_fixed_ = false;
    std::vector<std::string> feature_names_;

    std::unordered_map<NodeId, StepNode> steps_;
    std::unordered_map<NodeId, KernelNode> kernels_;
    std::unordered_map<NodeId, HardwareNode> hardware_;
    std::unordered_map<EdgeId, KernelMapEdge> kernel_maps_;
    std::unordered_map<EdgeId, PerformanceModelEdge> perf_models_;

    // adjacency indices; the out-edge tables double as existence sets (an
    // entry exists for every step/kernel, even with no edges yet)
    std::unordered_map<NodeId, std::vector<KernelMapRef>> step_out_;
    std::unordered_map<NodeId, std::vector<EdgeId>> kernel_in_;
    std::unordered_map<NodeId, std::vector<PerformanceModelRef>> kernel_out_;

    // (kernel, hardware) -> performance-model edge id
    struct PairHash {
        std::size_t operator()(const std::pair<NodeId, NodeId>& p) const {
            return std::hash<std::uint64_t>{}(p.first * 0x9E3779B97F4A7C15ULL ^
                                              p.second);
        }
    };
    std::unordered_map<std::pair<NodeId, NodeId>, EdgeId, PairHash> pair_index_;

    NodeId next_vertex_id_ = 0;
    EdgeId next_edge_id_ = 0;
};

/// Structural validation of a workflow FSM against a KB: transition
/// endpoints, initial and terminal indices in range; every state's step id
/// present in the KB or flagged with kUnknownStepId.
void validate_workflow(const KnowledgeBase& kb, const Workflow& workflow);

} // namespace sdhkb

#endif
