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

// Minimal XML element tree for the knowledge-base file format: elements,
// attributes and nesting only (no text content, namespaces or CDATA). The
// parser tracks line numbers so format errors point at the offending element.

#ifndef SDHKB_XML_HPP
#define SDHKB_XML_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdhkb::xml {

struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Element> children;
    std::size_t line = 0;

    Element() = default;
    explicit Element(std::string n) : name(std::move(n)) {}

    Element& attr(std::string key, std::string value) {
        attributes.emplace_back(std::move(key), std::move(value));
        return *this;
    }

    Element& child(Element e) {
        children.push_back(std::move(e));
        return children.back();
    }

    /// nullptr when the attribute is missing.
    const std::string* find_attribute(std::string_view key) const;
};

/// Parses a document into its root element. Throws Error(parse_error) with
/// "line N" context on malformed input.
Element parse(std::string_view text);

/// Writes the document with an XML prolog and two-space indentation.
void write(const Element& root, std::ostream& out);

} // namespace sdhkb::xml

#endif
