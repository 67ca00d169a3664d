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

#include "sdhkb/knowledge_base.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <unordered_set>

#include "sdhkb/cost_model.hpp"

namespace sdhkb {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::unknown_vertex: return "unknown-vertex";
        case ErrorCode::unknown_edge: return "unknown-edge";
        case ErrorCode::unknown_decomposition: return "unknown-decomposition";
        case ErrorCode::unknown_variant: return "unknown-variant";
        case ErrorCode::unknown_fixture: return "unknown-fixture";
        case ErrorCode::dimension_mismatch: return "dimension-mismatch";
        case ErrorCode::layer_violation: return "layer-violation";
        case ErrorCode::sequence_gap: return "sequence-gap";
        case ErrorCode::duplicate_edge: return "duplicate-edge";
        case ErrorCode::duplicate_id: return "duplicate-id";
        case ErrorCode::empty_variants: return "empty-variants";
        case ErrorCode::negative_cost: return "negative-cost";
        case ErrorCode::invalid_rate: return "invalid-rate";
        case ErrorCode::invalid_parameter: return "invalid-parameter";
        case ErrorCode::no_mapping: return "no-mapping";
        case ErrorCode::zero_similarity: return "zero-similarity";
        case ErrorCode::empty_kb: return "empty-kb";
        case ErrorCode::empty_links: return "empty-links";
        case ErrorCode::io_error: return "io-error";
        case ErrorCode::parse_error: return "parse-error";
        case ErrorCode::version_mismatch: return "version-mismatch";
        case ErrorCode::invariant_violation: return "invariant-violation";
    }
    return "unknown-error";
}

namespace {

[[noreturn]] void throw_unknown(const char* kind, NodeId id) {
    throw Error(ErrorCode::unknown_vertex,
                std::string("unknown ") + kind + " id " + std::to_string(id));
}

} // namespace

KnowledgeBase::KnowledgeBase(std::vector<std::string> feature_names)
    : schema_fixed_(true), feature_names_(std::move(feature_names)) {}

// --- schema -----------------------------------------------------------------

void KnowledgeBase::require_feature_dim(std::size_t dim) {
    if (!schema_fixed_) {
        schema_fixed_ = true;
        feature_names_.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            feature_names_[i] = "f" + std::to_string(i);
        }
        return;
    }
    if (dim != feature_names_.size()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "feature vector has " + std::to_string(dim) +
                        " dimensions, schema has " +
                        std::to_string(feature_names_.size()));
    }
}

// --- vertex mutations ---------------------------------------------------------

NodeId KnowledgeBase::add_step(std::string name, std::vector<double> features) {
    require_feature_dim(features.size());
    NodeId id = fresh_vertex_id();
    steps_.emplace(id, StepNode{id, std::move(name), std::move(features)});
    step_out_.emplace(id, std::vector<KernelMapRef>{});
    return id;
}

NodeId KnowledgeBase::add_kernel(std::string name, bool identified) {
    NodeId id = fresh_vertex_id();
    kernels_.emplace(id, KernelNode{id, std::move(name), identified, 0});
    kernel_in_.emplace(id, std::vector<EdgeId>{});
    kernel_out_.emplace(id, std::vector<PerformanceModelRef>{});
    return id;
}

NodeId KnowledgeBase::add_hardware(std::string name,
                                   std::map<std::string, double> characteristics,
                                   double reconfig_cost_ms) {
    if (reconfig_cost_ms < 0.0) {
        throw Error(ErrorCode::negative_cost,
                    "reconfiguration cost must be >= 0, got " +
                        std::to_string(reconfig_cost_ms));
    }
    NodeId id = fresh_vertex_id();
    hardware_.emplace(id, HardwareNode{id, std::move(name),
                                       std::move(characteristics),
                                       reconfig_cost_ms});
    return id;
}

// --- edge mutations -----------------------------------------------------------

std::size_t KnowledgeBase::decomposition_length(NodeId step,
                                                std::uint32_t d_id) const {
    std::size_t n = 0;
    for (const KernelMapRef& ref : step_kernel_maps(step)) {
        if (ref.d_id == d_id) ++n;
    }
    return n;
}

EdgeId KnowledgeBase::link_step_kernel(NodeId step, NodeId kernel,
                                       std::uint32_t d_id,
                                       std::uint32_t seq_index,
                                       std::map<std::string, double> weight) {
    auto* s = find_step(step);
    auto* k = find_kernel(kernel);
    if (s == nullptr || k == nullptr) {
        // distinguish a wrong-layer id from a nonexistent one
        bool step_is_other = find_kernel(step) || find_hardware(step);
        bool kernel_is_other = find_step(kernel) || find_hardware(kernel);
        if (step_is_other || kernel_is_other) {
            throw Error(ErrorCode::layer_violation,
                        "kernel-map edges join a step and a kernel");
        }
        if (s == nullptr) throw_unknown("step", step);
        throw_unknown("kernel", kernel);
    }
    std::size_t len = decomposition_length(step, d_id);
    if (seq_index != len) {
        throw Error(ErrorCode::sequence_gap,
                    "seq_index " + std::to_string(seq_index) +
                        " does not extend decomposition of length " +
                        std::to_string(len));
    }
    EdgeId id = fresh_edge_id();
    kernel_maps_.emplace(
        id, KernelMapEdge{id, step, kernel, d_id, seq_index, std::move(weight)});
    step_out_[step].push_back(KernelMapRef{id, kernel, d_id, seq_index});
    kernel_in_[kernel].push_back(id);
    return id;
}

EdgeId KnowledgeBase::link_kernel_hardware(NodeId kernel, NodeId hardware,
                                           std::vector<CostModel> variant_models) {
    auto* k = find_kernel(kernel);
    auto* h = find_hardware(hardware);
    if (k == nullptr || h == nullptr) {
        bool kernel_is_other = find_step(kernel) || find_hardware(kernel);
        bool hardware_is_other = find_step(hardware) || find_kernel(hardware);
        if (kernel_is_other || hardware_is_other) {
            throw Error(ErrorCode::layer_violation,
                        "performance-model edges join a kernel and a hardware "
                        "configuration");
        }
        if (k == nullptr) throw_unknown("kernel", kernel);
        throw_unknown("hardware", hardware);
    }
    if (variant_models.empty()) {
        throw Error(ErrorCode::empty_variants,
                    "a performance-model edge needs at least one mapping variant");
    }
    if (pair_index_.contains(std::pair{kernel, hardware})) {
        throw Error(ErrorCode::duplicate_edge,
                    "kernel " + std::to_string(kernel) + " and hardware " +
                        std::to_string(hardware) + " are already linked");
    }
    for (const CostModel& m : variant_models) {
        if (m.time_params.empty() || m.energy_params.size() != m.time_params.size()) {
            throw Error(ErrorCode::dimension_mismatch,
                        "cost model parameter vectors must be non-empty and of "
                        "equal length");
        }
        require_feature_dim(m.time_params.size() - 1);
    }
    EdgeId id = fresh_edge_id();
    PerformanceModelEdge edge{id, kernel, hardware, {}};
    edge.mappings.reserve(variant_models.size());
    for (std::size_t v = 0; v < variant_models.size(); ++v) {
        edge.mappings.push_back(MappingVariant{static_cast<std::uint32_t>(v),
                                               std::move(variant_models[v])});
    }
    perf_models_.emplace(id, std::move(edge));
    kernel_out_[kernel].push_back(PerformanceModelRef{id, hardware});
    pair_index_.emplace(std::pair{kernel, hardware}, id);
    return id;
}

// --- merge ---------------------------------------------------------------------

NodeId KnowledgeBase::merge_kernels(const std::vector<NodeId>& kernels,
                                    std::string new_name) {
    if (kernels.size() < 2) {
        throw Error(ErrorCode::invalid_parameter,
                    "merge needs at least two kernels");
    }
    std::unordered_set<NodeId> merged(kernels.begin(), kernels.end());
    if (merged.size() != kernels.size()) {
        throw Error(ErrorCode::duplicate_id, "merge list has duplicate ids");
    }
    bool identified = true;
    std::uint64_t frequency = 0;
    for (NodeId id : kernels) {
        const KernelNode* k = find_kernel(id);
        if (k == nullptr) throw_unknown("kernel", id);
        identified = identified && k->identified;
        frequency += k->frequency;
    }

    NodeId new_id = fresh_vertex_id();
    kernels_.emplace(new_id,
                     KernelNode{new_id, std::move(new_name), identified, frequency});
    kernel_in_.emplace(new_id, std::vector<EdgeId>{});
    kernel_out_.emplace(new_id, std::vector<PerformanceModelRef>{});

    // Rewrite kernel-map edges decomposition by decomposition.
    std::set<std::pair<NodeId, std::uint32_t>> touched;
    std::set<NodeId> touched_steps;
    for (NodeId id : kernels) {
        for (EdgeId e : kernel_in_[id]) {
            const auto& edge = kernel_maps_.at(e);
            touched.insert({edge.step_id, edge.d_id});
            touched_steps.insert(edge.step_id);
        }
    }
    for (const auto& [step_id, d_id] : touched) {
        std::vector<EdgeId> seq;
        for (const KernelMapRef& ref : step_out_[step_id]) {
            if (ref.d_id == d_id) seq.push_back(ref.edge_id);
        }
        std::sort(seq.begin(), seq.end(), [&](EdgeId a, EdgeId b) {
            return kernel_maps_.at(a).seq_index < kernel_maps_.at(b).seq_index;
        });
        // Collapse maximal runs of merged kernels to the run's first edge.
        std::vector<EdgeId> kept;
        std::vector<EdgeId> dropped;
        bool in_run = false;
        for (EdgeId e : seq) {
            bool is_merged = merged.contains(kernel_maps_.at(e).kernel_id);
            if (is_merged && in_run) {
                dropped.push_back(e);
            } else {
                kept.push_back(e);
            }
            in_run = is_merged;
        }
        for (std::size_t pos = 0; pos < kept.size(); ++pos) {
            auto& edge = kernel_maps_.at(kept[pos]);
            edge.seq_index = static_cast<std::uint32_t>(pos);
            if (merged.contains(edge.kernel_id)) {
                edge.kernel_id = new_id;
                kernel_in_[new_id].push_back(edge.id);
            }
        }
        for (EdgeId e : dropped) {
            kernel_maps_.erase(e);
        }
    }
    // refresh the inline adjacency of every step whose edges were rewritten
    for (NodeId step_id : touched_steps) {
        std::vector<KernelMapRef> refs;
        for (const KernelMapRef& old : step_out_[step_id]) {
            auto it = kernel_maps_.find(old.edge_id);
            if (it == kernel_maps_.end()) continue; // dropped by a collapse
            const KernelMapEdge& edge = it->second;
            refs.push_back(
                KernelMapRef{edge.id, edge.kernel_id, edge.d_id, edge.seq_index});
        }
        step_out_[step_id] = std::move(refs);
    }

    // Unite performance-model edges per hardware node, in merge-list order.
    std::unordered_map<NodeId, EdgeId> union_edge; // hardware -> surviving edge
    for (NodeId id : kernels) {
        std::vector<EdgeId> out;
        for (const PerformanceModelRef& ref : kernel_out_[id]) {
            out.push_back(ref.edge_id);
        }
        std::sort(out.begin(), out.end());
        for (EdgeId e : out) {
            auto& edge = perf_models_.at(e);
            pair_index_.erase(std::pair{edge.kernel_id, edge.hardware_id});
            auto it = union_edge.find(edge.hardware_id);
            if (it == union_edge.end()) {
                edge.kernel_id = new_id;
                union_edge.emplace(edge.hardware_id, e);
                kernel_out_[new_id].push_back(
                    PerformanceModelRef{e, edge.hardware_id});
                pair_index_.emplace(std::pair{new_id, edge.hardware_id}, e);
            } else {
                auto& target = perf_models_.at(it->second);
                for (auto& mv : edge.mappings) {
                    target.mappings.push_back(std::move(mv));
                }
                perf_models_.erase(e);
            }
        }
    }
    for (auto& [hw, e] : union_edge) {
        auto& mappings = perf_models_.at(e).mappings;
        for (std::size_t v = 0; v < mappings.size(); ++v) {
            mappings[v].variant_id = static_cast<std::uint32_t>(v);
        }
    }

    for (NodeId id : kernels) {
        kernels_.erase(id);
        kernel_in_.erase(id);
        kernel_out_.erase(id);
    }
    return new_id;
}

// --- execution records ----------------------------------------------------------

void KnowledgeBase::record_execution(const Workflow& workflow,
                                     const std::vector<NodeId>& kernel_trace) {
    validate_workflow(*this, workflow);
    for (NodeId id : kernel_trace) {
        if (find_kernel(id) == nullptr) throw_unknown("kernel", id);
    }
    for (NodeId id : kernel_trace) {
        kernels_.at(id).frequency += 1;
    }
}

void KnowledgeBase::update_model(NodeId kernel_id, NodeId hardware_id,
                                 std::uint32_t variant_id,
                                 const Observation& obs, double rate) {
    if (find_kernel(kernel_id) == nullptr) throw_unknown("kernel", kernel_id);
    if (find_hardware(hardware_id) == nullptr) {
        throw_unknown("hardware", hardware_id);
    }
    auto it = pair_index_.find(std::pair{kernel_id, hardware_id});
    if (it == pair_index_.end()) {
        throw Error(ErrorCode::no_mapping,
                    "kernel " + std::to_string(kernel_id) +
                        " has no mapping onto hardware " +
                        std::to_string(hardware_id));
    }
    auto& edge = perf_models_.at(it->second);
    for (auto& mv : edge.mappings) {
        if (mv.variant_id == variant_id) {
            mv.model = updated(mv.model, obs, rate);
            return;
        }
    }
    throw Error(ErrorCode::unknown_variant,
                "no mapping variant " + std::to_string(variant_id));
}

// --- lookups ---------------------------------------------------------------------

const StepNode* KnowledgeBase::find_step(NodeId id) const {
    auto it = steps_.find(id);
    return it == steps_.end() ? nullptr : &it->second;
}

const KernelNode* KnowledgeBase::find_kernel(NodeId id) const {
    auto it = kernels_.find(id);
    return it == kernels_.end() ? nullptr : &it->second;
}

const HardwareNode* KnowledgeBase::find_hardware(NodeId id) const {
    auto it = hardware_.find(id);
    return it == hardware_.end() ? nullptr : &it->second;
}

const StepNode& KnowledgeBase::step(NodeId id) const {
    const StepNode* s = find_step(id);
    if (s == nullptr) throw_unknown("step", id);
    return *s;
}

const KernelNode& KnowledgeBase::kernel(NodeId id) const {
    const KernelNode* k = find_kernel(id);
    if (k == nullptr) throw_unknown("kernel", id);
    return *k;
}

const HardwareNode& KnowledgeBase::hardware(NodeId id) const {
    const HardwareNode* h = find_hardware(id);
    if (h == nullptr) throw_unknown("hardware", id);
    return *h;
}

const KernelMapEdge& KnowledgeBase::kernel_map(EdgeId id) const {
    auto it = kernel_maps_.find(id);
    if (it == kernel_maps_.end()) {
        throw Error(ErrorCode::unknown_edge,
                    "unknown kernel-map edge " + std::to_string(id));
    }
    return it->second;
}

const PerformanceModelEdge& KnowledgeBase::performance_model(EdgeId id) const {
    auto it = perf_models_.find(id);
    if (it == perf_models_.end()) {
        throw Error(ErrorCode::unknown_edge,
                    "unknown performance-model edge " + std::to_string(id));
    }
    return it->second;
}

const PerformanceModelEdge* KnowledgeBase::find_performance_model(
    NodeId kernel, NodeId hardware) const {
    auto it = pair_index_.find(std::pair{kernel, hardware});
    return it == pair_index_.end() ? nullptr : &perf_models_.at(it->second);
}

// --- adjacency --------------------------------------------------------------------

namespace {
const std::vector<EdgeId> kNoEdges;
}

std::span<const KernelMapRef> KnowledgeBase::step_kernel_maps(
    NodeId step) const {
    auto it = step_out_.find(step);
    if (it == step_out_.end()) throw_unknown("step", step);
    return it->second;
}

std::span<const EdgeId> KnowledgeBase::kernel_kernel_maps(NodeId kernel) const {
    auto it = kernel_in_.find(kernel);
    return it == kernel_in_.end() ? std::span<const EdgeId>(kNoEdges)
                                  : std::span<const EdgeId>(it->second);
}

std::span<const PerformanceModelRef> KnowledgeBase::kernel_performance_models(
    NodeId kernel) const {
    auto it = kernel_out_.find(kernel);
    if (it == kernel_out_.end()) throw_unknown("kernel", kernel);
    return it->second;
}

// --- enumeration -------------------------------------------------------------------

namespace {
template <typename Map>
std::vector<std::uint64_t> sorted_keys(const Map& map) {
    std::vector<std::uint64_t> out;
    out.reserve(map.size());
    for (const auto& [k, v] : map) out.push_back(k);
    std::sort(out.begin(), out.end());
    return out;
}
} // namespace

std::vector<NodeId> KnowledgeBase::step_ids() const { return sorted_keys(steps_); }
std::vector<NodeId> KnowledgeBase::kernel_ids() const {
    return sorted_keys(kernels_);
}
std::vector<NodeId> KnowledgeBase::hardware_ids() const {
    return sorted_keys(hardware_);
}
std::vector<EdgeId> KnowledgeBase::kernel_map_ids() const {
    return sorted_keys(kernel_maps_);
}
std::vector<EdgeId> KnowledgeBase::performance_model_ids() const {
    return sorted_keys(perf_models_);
}

// --- integrity ----------------------------------------------------------------------

namespace {
[[noreturn]] void violation(const std::string& what) {
    throw Error(ErrorCode::invariant_violation, what);
}
} // namespace

void KnowledgeBase::check_invariants() const {
    // exclusive vertex kind + id bounds
    for (const auto& [id, s] : steps_) {
        if (kernels_.contains(id) || hardware_.contains(id)) {
            violation("vertex " + std::to_string(id) + " has more than one kind");
        }
        if (id >= next_vertex_id_) violation("step id beyond allocator watermark");
        if (s.features.size() != feature_names_.size()) {
            violation("step " + std::to_string(id) + " feature dimensionality");
        }
    }
    for (const auto& [id, k] : kernels_) {
        if (hardware_.contains(id)) {
            violation("vertex " + std::to_string(id) + " has more than one kind");
        }
        if (id >= next_vertex_id_) violation("kernel id beyond allocator watermark");
    }
    for (const auto& [id, h] : hardware_) {
        if (id >= next_vertex_id_) violation("hardware id beyond allocator watermark");
        if (h.reconfig_cost_ms < 0.0) {
            violation("hardware " + std::to_string(id) + " has negative reconfiguration cost");
        }
    }
    if (!schema_fixed_ && (!steps_.empty() || !perf_models_.empty())) {
        violation("schema open but steps or models exist");
    }

    // tripartite edge scan + decomposition contiguity
    std::map<std::pair<NodeId, std::uint32_t>, std::vector<std::uint32_t>> decomp;
    for (const auto& [id, e] : kernel_maps_) {
        if (id >= next_edge_id_) violation("edge id beyond allocator watermark");
        if (perf_models_.contains(id)) {
            violation("edge " + std::to_string(id) + " has more than one kind");
        }
        if (!steps_.contains(e.step_id) || !kernels_.contains(e.kernel_id)) {
            violation("kernel-map edge " + std::to_string(id) +
                      " does not join a step to a kernel");
        }
        decomp[{e.step_id, e.d_id}].push_back(e.seq_index);
    }
    for (auto& [key, seqs] : decomp) {
        std::sort(seqs.begin(), seqs.end());
        for (std::size_t i = 0; i < seqs.size(); ++i) {
            if (seqs[i] != i) {
                violation("decomposition (step " + std::to_string(key.first) +
                          ", d_id " + std::to_string(key.second) +
                          ") has non-contiguous seq indices");
            }
        }
    }

    std::set<std::pair<NodeId, NodeId>> seen_pairs;
    for (const auto& [id, e] : perf_models_) {
        if (id >= next_edge_id_) violation("edge id beyond allocator watermark");
        if (!kernels_.contains(e.kernel_id) || !hardware_.contains(e.hardware_id)) {
            violation("performance-model edge " + std::to_string(id) +
                      " does not join a kernel to a hardware configuration");
        }
        if (!seen_pairs.insert(std::pair{e.kernel_id, e.hardware_id}).second) {
            violation("duplicate performance-model edge for (kernel " +
                      std::to_string(e.kernel_id) + ", hardware " +
                      std::to_string(e.hardware_id) + ")");
        }
        if (e.mappings.empty()) {
            violation("performance-model edge " + std::to_string(id) +
                      " has no mapping variants");
        }
        std::unordered_set<std::uint32_t> vids;
        for (const auto& mv : e.mappings) {
            if (!vids.insert(mv.variant_id).second) {
                violation("duplicate variant id on edge " + std::to_string(id));
            }
            if (mv.model.time_params.size() != feature_names_.size() + 1 ||
                mv.model.energy_params.size() != feature_names_.size() + 1) {
                violation("cost model on edge " + std::to_string(id) +
                          " does not match the feature schema");
            }
        }
    }

    // adjacency indices agree with the edge maps
    if (step_out_.size() != steps_.size() || kernel_out_.size() != kernels_.size() ||
        kernel_in_.size() != kernels_.size()) {
        violation("adjacency tables disagree with the vertex sets");
    }
    std::size_t indexed = 0;
    for (const auto& [step, refs] : step_out_) {
        if (!steps_.contains(step)) violation("adjacency entry for a non-step");
        for (const KernelMapRef& ref : refs) {
            auto it = kernel_maps_.find(ref.edge_id);
            if (it == kernel_maps_.end() || it->second.step_id != step ||
                it->second.kernel_id != ref.kernel_id ||
                it->second.d_id != ref.d_id ||
                it->second.seq_index != ref.seq_index) {
                violation("stale step adjacency entry");
            }
            ++indexed;
        }
    }
    if (indexed != kernel_maps_.size()) violation("step adjacency incomplete");
    indexed = 0;
    for (const auto& [kernel, edges] : kernel_in_) {
        if (!kernels_.contains(kernel)) violation("adjacency entry for a non-kernel");
        for (EdgeId e : edges) {
            auto it = kernel_maps_.find(e);
            if (it == kernel_maps_.end() || it->second.kernel_id != kernel) {
                violation("stale kernel adjacency entry");
            }
            ++indexed;
        }
    }
    if (indexed != kernel_maps_.size()) violation("kernel adjacency incomplete");
    indexed = 0;
    for (const auto& [kernel, refs] : kernel_out_) {
        for (const PerformanceModelRef& ref : refs) {
            auto it = perf_models_.find(ref.edge_id);
            if (it == perf_models_.end() || it->second.kernel_id != kernel ||
                it->second.hardware_id != ref.hardware_id) {
                violation("stale performance-model adjacency entry");
            }
            ++indexed;
        }
    }
    if (indexed != perf_models_.size()) {
        violation("performance-model adjacency incomplete");
    }
    if (pair_index_.size() != perf_models_.size()) {
        violation("pair index incomplete");
    }
}

KnowledgeBase KnowledgeBase::from_parts(Parts parts) {
    KnowledgeBase kb;
    kb.schema_fixed_ = parts.schema_fixed;
    kb.feature_names_ = std::move(parts.feature_names);
    kb.next_vertex_id_ = parts.next_vertex_id;
    kb.next_edge_id_ = parts.next_edge_id;

    for (auto& s : parts.steps) {
        NodeId id = s.id;
        if (!kb.steps_.emplace(id, std::move(s)).second) {
            violation("duplicate step id " + std::to_string(id));
        }
        kb.step_out_.emplace(id, std::vector<KernelMapRef>{});
    }
    for (auto& k : parts.kernels) {
        NodeId id = k.id;
        if (kb.steps_.contains(id) || !kb.kernels_.emplace(id, std::move(k)).second) {
            violation("duplicate vertex id " + std::to_string(id));
        }
        kb.kernel_in_.emplace(id, std::vector<EdgeId>{});
        kb.kernel_out_.emplace(id, std::vector<PerformanceModelRef>{});
    }
    for (auto& h : parts.hardware) {
        NodeId id = h.id;
        if (kb.steps_.contains(id) || kb.kernels_.contains(id) ||
            !kb.hardware_.emplace(id, std::move(h)).second) {
            violation("duplicate vertex id " + std::to_string(id));
        }
    }
    for (auto& e : parts.kernel_maps) {
        EdgeId id = e.id;
        NodeId step = e.step_id;
        NodeId kernel = e.kernel_id;
        KernelMapRef ref{id, kernel, e.d_id, e.seq_index};
        if (!kb.kernel_maps_.emplace(id, std::move(e)).second) {
            violation("duplicate edge id " + std::to_string(id));
        }
        if (kb.steps_.contains(step)) kb.step_out_[step].push_back(ref);
        if (kb.kernels_.contains(kernel)) kb.kernel_in_[kernel].push_back(id);
    }
    for (auto& e : parts.perf_models) {
        EdgeId id = e.id;
        NodeId kernel = e.kernel_id;
        NodeId hardware = e.hardware_id;
        if (kb.kernel_maps_.contains(id) ||
            !kb.perf_models_.emplace(id, std::move(e)).second) {
            violation("duplicate edge id " + std::to_string(id));
        }
        if (kb.kernels_.contains(kernel)) {
            kb.kernel_out_[kernel].push_back(PerformanceModelRef{id, hardware});
            kb.pair_index_.emplace(std::pair{kernel, hardware}, id);
        }
    }
    kb.check_invariants();
    return kb;
}

// --- workflows -----------------------------------------------------------------------

void validate_workflow(const KnowledgeBase& kb, const Workflow& workflow) {
    const std::size_t n = workflow.states.size();
    for (const auto& t : workflow.transitions) {
        if (t.from >= n || t.to >= n) {
            throw Error(ErrorCode::invalid_parameter,
                        "workflow transition endpoint out of range");
        }
    }
    if (n > 0 && workflow.initial >= n) {
        throw Error(ErrorCode::invalid_parameter,
                    "workflow initial state out of range");
    }
    for (std::size_t t : workflow.terminal) {
        if (t >= n) {
            throw Error(ErrorCode::invalid_parameter,
                        "workflow terminal state out of range");
        }
    }
    for (NodeId s : workflow.states) {
        if (s != kUnknownStepId && kb.find_step(s) == nullptr) {
            throw Error(ErrorCode::unknown_vertex,
                        "workflow references unknown step " + std::to_string(s));
        }
    }
}

} // namespace sdhkb
