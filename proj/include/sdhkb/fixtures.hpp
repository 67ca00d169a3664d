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

#ifndef SDHKB_FIXTURES_HPP
#define SDHKB_FIXTURES_HPP

#include <string_view>

#include "sdhkb/knowledge_base.hpp"

namespace sdhkb::fixtures {

/// Builds one of the named example knowledge bases:
///  - "node-classification": a GNN training workflow of four steps (sampling,
///    loss, gradient, inference) over three kernels, with the low-precision
///    inference path mapped onto the FPGA node.
///  - "convolution": one step with two decompositions (FFT pipeline and
///    sliding-window dot product).
/// Throws Error(unknown_fixture) for any other name.
KnowledgeBase build_fixture(std::string_view name);

} // namespace sdhkb::fixtures

#endif
