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

#ifndef SDHKB_ERROR_HPP
#define SDHKB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sdhkb {

enum class ErrorCode {
    unknown_vertex,
    unknown_edge,
    unknown_decomposition,
    unknown_variant,
    unknown_fixture,
    dimension_mismatch,
    layer_violation,
    sequence_gap,
    duplicate_edge,
    duplicate_id,
    empty_variants,
    negative_cost,
    invalid_rate,
    invalid_parameter,
    no_mapping,
    zero_similarity,
    empty_kb,
    empty_links,
    io_error,
    parse_error,
    version_mismatch,
    invariant_violation,
};

const char* to_string(ErrorCode code);

/// All recoverable failures surface as this exception; the C boundary maps
/// code() onto a status enum.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace sdhkb

#endif
