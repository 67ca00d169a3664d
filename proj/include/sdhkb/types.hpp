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

#ifndef SDHKB_TYPES_HPP
#define SDHKB_TYPES_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace sdhkb {

// Vertex and edge identifiers share one id space each; ids are never reused.
using NodeId = std::uint64_t;
using EdgeId = std::uint64_t;

/// Sentinel for workflow states whose step is not (yet) in the knowledge base.
inline constexpr NodeId kUnknownStepId = std::numeric_limits<NodeId>::max();

/// A DSL-level computation pattern, characterized by a feature vector whose
/// dimensions follow the knowledge base's feature schema.
struct StepNode {
    NodeId id = 0;
    std::string name;
    std::vector<double> features;
};

/// A primitive task unit. `identified` marks kernels with a well-known
/// optimized hardware mapping; `frequency` counts recorded uses.
struct KernelNode {
    NodeId id = 0;
    std::string name;
    bool identified = false;
    std::uint64_t frequency = 0;
};

/// One hardware configuration (or building block). `reconfig_cost_ms` is the
/// penalty to switch the platform into this configuration.
struct HardwareNode {
    NodeId id = 0;
    std::string name;
    std::map<std::string, double> characteristics;
    double reconfig_cost_ms = 0.0;
};

/// Step->kernel edge: one position of one decomposition. For a fixed
/// (step, d_id) the seq_index values are contiguous from 0.
struct KernelMapEdge {
    EdgeId id = 0;
    NodeId step_id = 0;
    NodeId kernel_id = 0;
    std::uint32_t d_id = 0;
    std::uint32_t seq_index = 0;
    std::map<std::string, double> weight;
};

/// Linear predictor for execution time and energy. Parameter layout is
/// [intercept, c_0, ..., c_{d-1}] with d = feature schema dimensionality.
struct CostModel {
    std::vector<double> time_params;
    std::vector<double> energy_params;
    std::uint64_t update_count = 0;
};

struct MappingVariant {
    std::uint32_t variant_id = 0;
    CostModel model;
};

/// Kernel->hardware edge. All ways of mapping the kernel onto this hardware
/// live in `mappings`; there is at most one such edge per (kernel, hardware).
struct PerformanceModelEdge {
    EdgeId id = 0;
    NodeId kernel_id = 0;
    NodeId hardware_id = 0;
    std::vector<MappingVariant> mappings;
};

/// A workflow is a finite-state machine over steps. States hold step ids
/// (kUnknownStepId flags a state whose step is not in the KB yet).
struct Workflow {
    std::uint64_t id = 0;
    std::vector<NodeId> states;
    struct Transition {
        std::size_t from = 0;
        std::size_t to = 0;
        std::string label;
    };
    std::vector<Transition> transitions;
    std::size_t initial = 0;
    std::set<std::size_t> terminal;
};

/// One measured kernel execution, used to refine a cost model.
struct Observation {
    std::vector<double> metadata;
    double observed_time_ms = 0.0;
    double observed_energy_mj = 0.0;
};

} // namespace sdhkb

#endif
