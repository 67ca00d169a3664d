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

#include "sdhkb/query.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdhkb/cost_model.hpp"

namespace sdhkb::query {

std::vector<NodeId> type1(const KnowledgeBase& kb, NodeId step) {
    auto refs = kb.step_kernel_maps(step); // throws when `step` is not a step
    std::vector<NodeId> kernels;
    kernels.reserve(refs.size());
    for (const KernelMapRef& ref : refs) {
        kernels.push_back(ref.kernel_id);
    }
    std::sort(kernels.begin(), kernels.end());
    kernels.erase(std::unique(kernels.begin(), kernels.end()), kernels.end());
    return kernels;
}

const PerformanceModelEdge* type2(const KnowledgeBase& kb, NodeId kernel,
                                  NodeId hardware) {
    const PerformanceModelEdge* edge = kb.find_performance_model(kernel, hardware);
    if (edge != nullptr) return edge; // both endpoints necessarily exist
    kb.kernel(kernel);
    kb.hardware(hardware);
    return nullptr;
}

std::vector<std::pair<NodeId, const PerformanceModelEdge*>> type3(
    const KnowledgeBase& kb, NodeId kernel) {
    auto refs = kb.kernel_performance_models(kernel); // throws on non-kernels
    std::vector<std::pair<NodeId, const PerformanceModelEdge*>> out;
    out.reserve(refs.size());
    for (const PerformanceModelRef& ref : refs) {
        out.emplace_back(ref.hardware_id, &kb.performance_model(ref.edge_id));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<std::pair<NodeId, std::map<std::string, double>>>
resolve_decomposition(const KnowledgeBase& kb, NodeId step, std::uint32_t d_id) {
    std::vector<const KernelMapEdge*> edges;
    for (const KernelMapRef& ref : kb.step_kernel_maps(step)) {
        if (ref.d_id == d_id) edges.push_back(&kb.kernel_map(ref.edge_id));
    }
    if (edges.empty()) {
        throw Error(ErrorCode::unknown_decomposition,
                    "step " + std::to_string(step) + " has no decomposition " +
                        std::to_string(d_id));
    }
    std::sort(edges.begin(), edges.end(),
              [](const KernelMapEdge* a, const KernelMapEdge* b) {
                  return a->seq_index < b->seq_index;
              });
    std::vector<std::pair<NodeId, std::map<std::string, double>>> out;
    out.reserve(edges.size());
    for (const KernelMapEdge* e : edges) {
        out.emplace_back(e->kernel_id, e->weight);
    }
    return out;
}

std::vector<std::uint32_t> list_decompositions(const KnowledgeBase& kb,
                                               NodeId step) {
    std::vector<std::uint32_t> out;
    for (const KernelMapRef& ref : kb.step_kernel_maps(step)) {
        out.push_back(ref.d_id);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<HardwareRecommendation> recommend_hardware(
    const KnowledgeBase& kb, NodeId kernel, std::span<const double> metadata,
    std::optional<NodeId> current_config, std::span<const NodeId> available) {
    kb.kernel(kernel);
    if (available.empty()) {
        throw Error(ErrorCode::invalid_parameter,
                    "the set of available hardware is empty");
    }
    std::vector<NodeId> candidates(available.begin(), available.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    std::vector<HardwareRecommendation> out;
    for (NodeId hw_id : candidates) {
        const HardwareNode& hw = kb.hardware(hw_id);
        const PerformanceModelEdge* edge = kb.find_performance_model(kernel, hw_id);
        if (edge == nullptr) continue;
        double penalty =
            (current_config && *current_config == hw_id) ? 0.0 : hw.reconfig_cost_ms;
        HardwareRecommendation best;
        double best_cost = std::numeric_limits<double>::infinity();
        for (const MappingVariant& mv : edge->mappings) {
            Prediction pred = predict(mv.model, metadata);
            double total = pred.time_ms + penalty;
            if (total < best_cost ||
                (total == best_cost && mv.variant_id < best.variant_id)) {
                best = HardwareRecommendation{hw_id,        mv.variant_id,
                                              pred.time_ms, pred.energy_mj,
                                              penalty,      total};
                best_cost = total;
            }
        }
        out.push_back(best);
    }
    if (out.empty()) {
        throw Error(ErrorCode::no_mapping,
                    "kernel " + std::to_string(kernel) +
                        " is not mapped to any available hardware");
    }
    std::sort(out.begin(), out.end(),
              [](const HardwareRecommendation& a, const HardwareRecommendation& b) {
                  if (a.total_cost_ms != b.total_cost_ms) {
                      return a.total_cost_ms < b.total_cost_ms;
                  }
                  if (a.hardware_id != b.hardware_id) {
                      return a.hardware_id < b.hardware_id;
                  }
                  return a.variant_id < b.variant_id;
              });
    return out;
}

double clamped_cosine(std::span<const double> a, std::span<const double> b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::max(0.0, dot / (std::sqrt(na) * std::sqrt(nb)));
}

namespace {

/// Total predicted time of a step's lowest-numbered decomposition on one
/// hardware configuration, or nullopt when some position lacks a mapping.
std::optional<double> decomposition_time_on(const KnowledgeBase& kb,
                                            const StepNode& step, NodeId hw) {
    auto d_ids = list_decompositions(kb, step.id);
    if (d_ids.empty()) return std::nullopt;
    double total = 0.0;
    for (const auto& [kernel_id, weight] :
         resolve_decomposition(kb, step.id, d_ids.front())) {
        const PerformanceModelEdge* edge = kb.find_performance_model(kernel_id, hw);
        if (edge == nullptr) return std::nullopt;
        double best = std::numeric_limits<double>::infinity();
        for (const MappingVariant& mv : edge->mappings) {
            best = std::min(best, predict(mv.model, step.features).time_ms);
        }
        total += best;
    }
    return total;
}

} // namespace

std::vector<StepCostEstimate> estimate_step_cost(const KnowledgeBase& kb,
                                                 std::span<const double> features,
                                                 std::size_t k) {
    if (k == 0) {
        throw Error(ErrorCode::invalid_parameter, "k must be positive");
    }
    if (kb.step_count() == 0) {
        throw Error(ErrorCode::empty_kb, "no known steps to compare against");
    }
    if (kb.schema_fixed() && features.size() != kb.feature_dim()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "feature vector does not match the KB schema");
    }

    // k nearest known steps; ties resolved by ascending step id
    std::vector<std::pair<double, NodeId>> neighbors;
    for (NodeId id : kb.step_ids()) {
        neighbors.emplace_back(clamped_cosine(features, kb.step(id).features), id);
    }
    std::sort(neighbors.begin(), neighbors.end(),
              [](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first > b.first;
                  return a.second < b.second;
              });
    if (neighbors.size() > k) neighbors.resize(k);
    if (std::all_of(neighbors.begin(), neighbors.end(),
                    [](const auto& n) { return n.first == 0.0; })) {
        throw Error(ErrorCode::zero_similarity,
                    "all nearest steps have zero similarity");
    }

    std::vector<StepCostEstimate> out;
    for (NodeId hw : kb.hardware_ids()) {
        double weighted_sum = 0.0;
        double weight = 0.0;
        std::uint64_t support = 0;
        for (const auto& [sim, step_id] : neighbors) {
            if (sim == 0.0) continue;
            auto time = decomposition_time_on(kb, kb.step(step_id), hw);
            if (!time) continue;
            weighted_sum += sim * *time;
            weight += sim;
            support += 1;
        }
        if (support >= 1) {
            out.push_back(
                StepCostEstimate{hw, weighted_sum / weight, support, weight});
        }
    }
    return out;
}

} // namespace sdhkb::query
