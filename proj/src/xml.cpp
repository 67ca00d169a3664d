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

#include "xml.hpp"

#include <cctype>

#include "sdhkb/error.hpp"

namespace sdhkb::xml {

const std::string* Element::find_attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
        if (k == key) return &v;
    }
    return nullptr;
}

namespace {

bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == '.' || c == ':';
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Element parse_document() {
        skip_misc();
        if (eof()) fail("document has no root element");
        Element root = parse_element();
        skip_misc();
        if (!eof()) fail("trailing content after the root element");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::parse_error,
                    "line " + std::to_string(line_) + ": " + what);
    }

    bool eof() const { return pos_ >= text_.size(); }

    char peek() const { return text_[pos_]; }

    char take() {
        char c = text_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }

    bool consume(std::string_view token) {
        if (text_.substr(pos_).starts_with(token)) {
            for (std::size_t i = 0; i < token.size(); ++i) take();
            return true;
        }
        return false;
    }

    void skip_whitespace() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) take();
    }

    // whitespace, the prolog and comments; anything else must be an element
    void skip_misc() {
        for (;;) {
            skip_whitespace();
            if (consume("<?")) {
                while (!eof() && !consume("?>")) take();
            } else if (consume("<!--")) {
                while (!eof() && !consume("-->")) take();
            } else {
                return;
            }
        }
    }

    std::string parse_name() {
        std::string name;
        while (!eof() && name_char(peek())) name.push_back(take());
        if (name.empty()) fail("expected a name");
        return name;
    }

    std::string parse_attribute_value() {
        if (eof() || take() != '"') fail("expected '\"' before attribute value");
        std::string value;
        for (;;) {
            if (eof()) fail("unterminated attribute value");
            char c = take();
            if (c == '"') break;
            if (c == '<') fail("'<' inside attribute value");
            if (c == '&') {
                if (consume("amp;")) value.push_back('&');
                else if (consume("lt;")) value.push_back('<');
                else if (consume("gt;")) value.push_back('>');
                else if (consume("quot;")) value.push_back('"');
                else if (consume("apos;")) value.push_back('\'');
                else fail("unknown entity reference");
            } else {
                value.push_back(c);
            }
        }
        return value;
    }

    Element parse_element() {
        if (eof() || peek() != '<') fail("expected an element");
        std::size_t start_line = line_;
        take();
        Element e;
        e.line = start_line;
        e.name = parse_name();
        for (;;) {
            skip_whitespace();
            if (eof()) fail("unterminated element <" + e.name + ">");
            if (consume("/>")) return e;
            if (consume(">")) break;
            std::string key = parse_name();
            skip_whitespace();
            if (eof() || take() != '=') fail("expected '=' after attribute name");
            skip_whitespace();
            e.attributes.emplace_back(std::move(key), parse_attribute_value());
        }
        // children until the matching end tag; no text content allowed
        for (;;) {
            skip_misc();
            if (eof()) fail("missing </" + e.name + ">");
            if (peek() != '<') fail("unexpected text content inside <" + e.name + ">");
            if (consume("</")) {
                std::string closing = parse_name();
                if (closing != e.name) {
                    fail("</" + closing + "> does not match <" + e.name + ">");
                }
                skip_whitespace();
                if (eof() || take() != '>') fail("malformed end tag");
                return e;
            }
            e.children.push_back(parse_element());
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

void append_escaped(std::string& out, const std::string& value) {
    for (char c : value) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
}

void write_element(const Element& e, std::ostream& out, int depth) {
    std::string text(static_cast<std::size_t>(depth) * 2, ' ');
    text += '<';
    text += e.name;
    for (const auto& [k, v] : e.attributes) {
        text += ' ';
        text += k;
        text += "=\"";
        append_escaped(text, v);
        text += '"';
    }
    if (e.children.empty()) {
        text += "/>\n";
        out << text;
        return;
    }
    text += ">\n";
    out << text;
    for (const Element& child : e.children) {
        write_element(child, out, depth + 1);
    }
    out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "</" << e.name
        << ">\n";
}

} // namespace

Element parse(std::string_view text) { return Parser(text).parse_document(); }

void write(const Element& root, std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    write_element(root, out, 0);
}

} // namespace sdhkb::xml
