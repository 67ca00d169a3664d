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

#ifndef SDHKB_PERSISTENCE_HPP
#define SDHKB_PERSISTENCE_HPP

#include <string>
#include <string_view>

#include "sdhkb/knowledge_base.hpp"

namespace sdhkb::persistence {

/// Version string written into (and required from) every KB file. The format
/// itself is documented in docs/format.md.
inline constexpr std::string_view kFormatVersion = "1";

/// Serializes the whole KB: schema, all vertices, all edges with their model
/// parameters, and the id allocator watermarks. Reals are written in
/// shortest-round-trip form, so a save/load cycle is bit-exact.
std::string save_string(const KnowledgeBase& kb);
void save_file(const KnowledgeBase& kb, const std::string& path);

/// Rebuilds a KB from its serialized form, validating every structural
/// invariant. On any error nothing is returned (all-or-nothing).
KnowledgeBase load_string(std::string_view text);
KnowledgeBase load_file(const std::string& path);

} // namespace sdhkb::persistence

#endif
