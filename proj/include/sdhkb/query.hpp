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

#ifndef SDHKB_QUERY_HPP
#define SDHKB_QUERY_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sdhkb/knowledge_base.hpp"

namespace sdhkb::query {

/// One ranked candidate from recommend_hardware. total_cost_ms is
/// predicted_time_ms plus the reconfiguration penalty (zero when the
/// hardware already is the current configuration).
struct HardwareRecommendation {
    NodeId hardware_id = 0;
    std::uint32_t variant_id = 0;
    double predicted_time_ms = 0.0;
    double predicted_energy_mj = 0.0;
    double reconfig_penalty_ms = 0.0;
    double total_cost_ms = 0.0;
};

/// Similarity-weighted execution-time estimate for an unknown step on one
/// hardware configuration. support counts contributing neighbors;
/// confidence_weight is the sum of their similarities.
struct StepCostEstimate {
    NodeId hardware_id = 0;
    double estimated_time_ms = 0.0;
    std::uint64_t support = 0;
    double confidence_weight = 0.0;
};

/// Type 1: all kernels linked with a step, deduplicated, ascending id.
std::vector<NodeId> type1(const KnowledgeBase& kb, NodeId step);

/// Type 2: the performance model for (kernel, hardware), nullptr if unlinked.
const PerformanceModelEdge* type2(const KnowledgeBase& kb, NodeId kernel,
                                  NodeId hardware);

/// Type 3: performance models for a kernel on all linked hardware
/// configurations, ascending hardware id.
std::vector<std::pair<NodeId, const PerformanceModelEdge*>> type3(
    const KnowledgeBase& kb, NodeId kernel);

/// The kernels of decomposition (step, d_id) in sequence order, with the
/// per-position weight maps.
std::vector<std::pair<NodeId, std::map<std::string, double>>>
resolve_decomposition(const KnowledgeBase& kb, NodeId step, std::uint32_t d_id);

/// Distinct decomposition indices on a step, ascending.
std::vector<std::uint32_t> list_decompositions(const KnowledgeBase& kb,
                                               NodeId step);

/// Ranks the available hardware for a kernel by predicted time plus
/// reconfiguration penalty, best variant per hardware, ties broken by
/// (hardware id, variant id).
std::vector<HardwareRecommendation> recommend_hardware(
    const KnowledgeBase& kb, NodeId kernel, std::span<const double> metadata,
    std::optional<NodeId> current_config, std::span<const NodeId> available);

/// Estimates per-hardware execution time for an unknown step from its k
/// nearest known steps under cosine similarity (negative similarities clamp
/// to zero). A neighbor contributes on a hardware configuration when every
/// kernel of its lowest-numbered decomposition is mapped there; its time is
/// the sum of minimum-variant predictions fed with the neighbor's own
/// features. Results ascend by hardware id.
std::vector<StepCostEstimate> estimate_step_cost(const KnowledgeBase& kb,
                                                 std::span<const double> features,
                                                 std::size_t k);

/// Cosine similarity with negative values clamped to zero; zero when either
/// vector has zero norm.
double clamped_cosine(std::span<const double> a, std::span<const double> b);

} // namespace sdhkb::query

#endif
