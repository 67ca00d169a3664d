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

#include "sdhkb/fixtures.hpp"

namespace sdhkb::fixtures {

namespace {

std::vector<std::string> schema() {
    return {"access_irregularity", "precision_bits", "compute_comm_ratio"};
}

KnowledgeBase node_classification() {
    KnowledgeBase kb(schema());

    NodeId sampling = kb.add_step("sampling", {0.85, 32.0, 0.4});
    NodeId loss = kb.add_step("loss", {0.2, 32.0, 3.5});
    NodeId gradient = kb.add_step("gradient", {0.25, 32.0, 3.2});
    // inference tolerates low precision, which is what earns it the FPGA path
    NodeId inference = kb.add_step("inference", {0.2, 8.0, 5.0});

    NodeId bfs = kb.add_kernel("bfs-tree-sampling", true);
    NodeId forward = kb.add_kernel("forward-propagation", true);
    NodeId backward = kb.add_kernel("backward-propagation", true);

    NodeId cpu = kb.add_hardware(
        "cpu-multicore", {{"cores", 64.0}, {"mem_bw_gbps", 90.0}}, 0.0);
    NodeId fpga = kb.add_hardware(
        "fpga-dataflow", {{"luts", 600000.0}, {"dsp_slices", 3000.0}}, 120.0);

    kb.link_step_kernel(sampling, bfs, 0, 0, {{"fanout", 10.0}});
    kb.link_step_kernel(loss, forward, 0, 0, {{"batch", 256.0}});
    kb.link_step_kernel(gradient, backward, 0, 0, {{"batch", 256.0}});
    kb.link_step_kernel(inference, forward, 0, 0,
                        {{"batch", 1024.0}, {"quantized_bits", 8.0}});

    kb.link_kernel_hardware(bfs, cpu,
                            {CostModel{{4.0, 6.0, 0.0, 0.0},
                                       {2.0, 3.0, 0.0, 0.0},
                                       0}});
    kb.link_kernel_hardware(forward, cpu,
                            {CostModel{{6.0, 0.5, 0.05, 0.6},
                                       {3.0, 0.2, 0.02, 0.3},
                                       0}});
    // pipelined full-precision variant and a quantized variant
    kb.link_kernel_hardware(forward, fpga,
                            {CostModel{{2.5, 0.4, 0.08, 0.3},
                                       {0.8, 0.1, 0.03, 0.1},
                                       0},
                             CostModel{{1.2, 0.3, 0.02, 0.15},
                                       {0.4, 0.05, 0.01, 0.05},
                                       0}});
    kb.link_kernel_hardware(backward, cpu,
                            {CostModel{{8.0, 0.6, 0.05, 0.8},
                                       {4.0, 0.3, 0.02, 0.4},
                                       0}});

    // the recursive train loop followed by inference on test nodes
    Workflow workflow;
    workflow.id = 0;
    workflow.states = {sampling, loss, gradient, inference};
    workflow.transitions = {{0, 1, "sampled"},
                            {1, 2, "loss-evaluated"},
                            {2, 0, "next-iteration"},
                            {2, 3, "converged"}};
    workflow.initial = 0;
    workflow.terminal = {3};
    kb.record_execution(workflow, {bfs, forward, backward, bfs, forward,
                                   backward, forward});
    return kb;
}

KnowledgeBase convolution() {
    KnowledgeBase kb(schema());

    NodeId conv = kb.add_step("convolution", {0.2, 32.0, 1.4});

    NodeId fft = kb.add_kernel("fft", true);
    NodeId mult = kb.add_kernel("pointwise-multiply", true);
    NodeId ifft = kb.add_kernel("inverse-fft", true);
    NodeId slide = kb.add_kernel("sliding-window-dot-product", true);

    NodeId fpga = kb.add_hardware("fpga-a", {{"luts", 100000.0}}, 50.0);
    NodeId cpu = kb.add_hardware("cpu", {}, 0.0);

    // frequency-domain route
    kb.link_step_kernel(conv, fft, 0, 0, {{"length", 4096.0}});
    kb.link_step_kernel(conv, mult, 0, 1, {{"length", 4096.0}});
    kb.link_step_kernel(conv, ifft, 0, 2, {{"length", 4096.0}});
    // direct route
    kb.link_step_kernel(conv, slide, 1, 0, {{"window", 9.0}});

    kb.link_kernel_hardware(fft, fpga,
                            {CostModel{{0.8, 0.2, 0.01, 0.1},
                                       {0.3, 0.1, 0.005, 0.05},
                                       0},
                             CostModel{{1.4, 0.1, 0.005, 0.08},
                                       {0.2, 0.05, 0.002, 0.03},
                                       0}});
    kb.link_kernel_hardware(fft, cpu,
                            {CostModel{{2.0, 0.5, 0.02, 0.2},
                                       {1.0, 0.2, 0.01, 0.1},
                                       0}});
    kb.link_kernel_hardware(mult, cpu,
                            {CostModel{{0.5, 0.1, 0.005, 0.05},
                                       {0.2, 0.05, 0.002, 0.02},
                                       0}});
    kb.link_kernel_hardware(ifft, fpga,
                            {CostModel{{0.9, 0.2, 0.01, 0.1},
                                       {0.3, 0.1, 0.005, 0.05},
                                       0}});
    kb.link_kernel_hardware(ifft, cpu,
                            {CostModel{{2.1, 0.5, 0.02, 0.2},
                                       {1.0, 0.2, 0.01, 0.1},
                                       0}});
    kb.link_kernel_hardware(slide, cpu,
                            {CostModel{{3.0, 0.8, 0.03, 0.3},
                                       {1.5, 0.4, 0.01, 0.15},
                                       0}});
    return kb;
}

} // namespace

KnowledgeBase build_fixture(std::string_view name) {
    if (name == "node-classification") return node_classification();
    if (name == "convolution") return convolution();
    throw Error(ErrorCode::unknown_fixture,
                "unknown fixture '" + std::string(name) +
                    "' (expected node-classification or convolution)");
}

} // namespace sdhkb::fixtures
