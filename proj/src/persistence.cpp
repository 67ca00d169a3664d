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

#include "sdhkb/persistence.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "xml.hpp"

namespace sdhkb::persistence {

namespace {

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

std::string format_u64(std::uint64_t value) { return std::to_string(value); }

[[noreturn]] void element_error(const xml::Element& e, const std::string& what) {
    throw Error(ErrorCode::parse_error,
                "line " + std::to_string(e.line) + ": <" + e.name + ">: " + what);
}

const std::string& required(const xml::Element& e, std::string_view key) {
    const std::string* v = e.find_attribute(key);
    if (v == nullptr) {
        element_error(e, "missing attribute '" + std::string(key) + "'");
    }
    return *v;
}

double parse_double(const xml::Element& e, std::string_view key) {
    const std::string& text = required(e, key);
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        element_error(e, "attribute '" + std::string(key) + "' is not a number");
    }
    return value;
}

std::uint64_t parse_u64(const xml::Element& e, std::string_view key) {
    const std::string& text = required(e, key);
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        element_error(e, "attribute '" + std::string(key) + "' is not an integer");
    }
    return value;
}

bool parse_bool(const xml::Element& e, std::string_view key) {
    const std::string& text = required(e, key);
    if (text == "true") return true;
    if (text == "false") return false;
    element_error(e, "attribute '" + std::string(key) + "' must be true or false");
}

const xml::Element& section(const xml::Element& root, std::string_view name) {
    for (const xml::Element& child : root.children) {
        if (child.name == name) return child;
    }
    element_error(root, "missing section <" + std::string(name) + ">");
}

std::map<std::string, double> parse_kv_children(const xml::Element& parent,
                                                std::string_view child_name) {
    std::map<std::string, double> out;
    for (const xml::Element& child : parent.children) {
        if (child.name != child_name) {
            element_error(child, "unexpected element");
        }
        if (!out.emplace(required(child, "key"), parse_double(child, "value")).second) {
            element_error(child, "duplicate key");
        }
    }
    return out;
}

xml::Element kv_element(std::string name, const std::string& key, double value) {
    xml::Element e(std::move(name));
    e.attr("key", key).attr("value", format_double(value));
    return e;
}

} // namespace

std::string save_string(const KnowledgeBase& kb) {
    xml::Element root("knowledge_base");
    root.attr("format_version", std::string(kFormatVersion))
        .attr("next_vertex_id", format_u64(kb.next_vertex_id()))
        .attr("next_edge_id", format_u64(kb.next_edge_id()));

    xml::Element schema("feature_schema");
    schema.attr("fixed", kb.schema_fixed() ? "true" : "false");
    for (const std::string& name : kb.feature_names()) {
        schema.child(xml::Element("dimension").attr("name", name));
    }
    root.child(std::move(schema));

    xml::Element steps("steps");
    for (NodeId id : kb.step_ids()) {
        const StepNode& s = kb.step(id);
        xml::Element e("step");
        e.attr("id", format_u64(s.id)).attr("name", s.name);
        for (double f : s.features) {
            e.child(xml::Element("feature").attr("value", format_double(f)));
        }
        steps.child(std::move(e));
    }
    root.child(std::move(steps));

    xml::Element kernels("kernels");
    for (NodeId id : kb.kernel_ids()) {
        const KernelNode& k = kb.kernel(id);
        kernels.child(xml::Element("kernel")
                          .attr("id", format_u64(k.id))
                          .attr("name", k.name)
                          .attr("identified", k.identified ? "true" : "false")
                          .attr("frequency", format_u64(k.frequency)));
    }
    root.child(std::move(kernels));

    xml::Element hardware("hardware_set");
    for (NodeId id : kb.hardware_ids()) {
        const HardwareNode& h = kb.hardware(id);
        xml::Element e("hardware");
        e.attr("id", format_u64(h.id))
            .attr("name", h.name)
            .attr("reconfig_cost_ms", format_double(h.reconfig_cost_ms));
        for (const auto& [key, value] : h.characteristics) {
            e.child(kv_element("characteristic", key, value));
        }
        hardware.child(std::move(e));
    }
    root.child(std::move(hardware));

    xml::Element kernel_maps("kernel_map_edges");
    for (EdgeId id : kb.kernel_map_ids()) {
        const KernelMapEdge& e = kb.kernel_map(id);
        xml::Element el("kernel_map");
        el.attr("id", format_u64(e.id))
            .attr("step", format_u64(e.step_id))
            .attr("kernel", format_u64(e.kernel_id))
            .attr("d_id", format_u64(e.d_id))
            .attr("seq_index", format_u64(e.seq_index));
        for (const auto& [key, value] : e.weight) {
            el.child(kv_element("weight", key, value));
        }
        kernel_maps.child(std::move(el));
    }
    root.child(std::move(kernel_maps));

    xml::Element perf("performance_model_edges");
    for (EdgeId id : kb.performance_model_ids()) {
        const PerformanceModelEdge& e = kb.performance_model(id);
        xml::Element el("performance_model");
        el.attr("id", format_u64(e.id))
            .attr("kernel", format_u64(e.kernel_id))
            .attr("hardware", format_u64(e.hardware_id));
        for (const MappingVariant& mv : e.mappings) {
            xml::Element ve("mapping_variant");
            ve.attr("variant_id", format_u64(mv.variant_id))
                .attr("update_count", format_u64(mv.model.update_count));
            for (double p : mv.model.time_params) {
                ve.child(xml::Element("time_param").attr("value", format_double(p)));
            }
            for (double p : mv.model.energy_params) {
                ve.child(
                    xml::Element("energy_param").attr("value", format_double(p)));
            }
            el.child(std::move(ve));
        }
        perf.child(std::move(el));
    }
    root.child(std::move(perf));

    std::ostringstream out;
    xml::write(root, out);
    return out.str();
}

void save_file(const KnowledgeBase& kb, const std::string& path) {
    std::string text = save_string(kb);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::io_error, path + ": cannot open for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) {
        throw Error(ErrorCode::io_error, path + ": write failed");
    }
}

KnowledgeBase load_string(std::string_view text) {
    xml::Element root = xml::parse(text);
    if (root.name != "knowledge_base") {
        element_error(root, "root element must be <knowledge_base>");
    }
    if (required(root, "format_version") != kFormatVersion) {
        throw Error(ErrorCode::version_mismatch,
                    "unsupported format version " +
                        required(root, "format_version") + " (expected " +
                        std::string(kFormatVersion) + ")");
    }

    KnowledgeBase::Parts parts;
    parts.next_vertex_id = parse_u64(root, "next_vertex_id");
    parts.next_edge_id = parse_u64(root, "next_edge_id");

    const xml::Element& schema = section(root, "feature_schema");
    parts.schema_fixed = parse_bool(schema, "fixed");
    for (const xml::Element& child : schema.children) {
        if (child.name != "dimension") element_error(child, "unexpected element");
        parts.feature_names.push_back(required(child, "name"));
    }

    for (const xml::Element& child : section(root, "steps").children) {
        if (child.name != "step") element_error(child, "unexpected element");
        StepNode s;
        s.id = parse_u64(child, "id");
        s.name = required(child, "name");
        for (const xml::Element& f : child.children) {
            if (f.name != "feature") element_error(f, "unexpected element");
            s.features.push_back(parse_double(f, "value"));
        }
        parts.steps.push_back(std::move(s));
    }

    for (const xml::Element& child : section(root, "kernels").children) {
        if (child.name != "kernel") element_error(child, "unexpected element");
        parts.kernels.push_back(KernelNode{
            parse_u64(child, "id"), required(child, "name"),
            parse_bool(child, "identified"), parse_u64(child, "frequency")});
    }

    for (const xml::Element& child : section(root, "hardware_set").children) {
        if (child.name != "hardware") element_error(child, "unexpected element");
        parts.hardware.push_back(HardwareNode{
            parse_u64(child, "id"), required(child, "name"),
            parse_kv_children(child, "characteristic"),
            parse_double(child, "reconfig_cost_ms")});
    }

    for (const xml::Element& child : section(root, "kernel_map_edges").children) {
        if (child.name != "kernel_map") element_error(child, "unexpected element");
        parts.kernel_maps.push_back(KernelMapEdge{
            parse_u64(child, "id"), parse_u64(child, "step"),
            parse_u64(child, "kernel"),
            static_cast<std::uint32_t>(parse_u64(child, "d_id")),
            static_cast<std::uint32_t>(parse_u64(child, "seq_index")),
            parse_kv_children(child, "weight")});
    }

    for (const xml::Element& child :
         section(root, "performance_model_edges").children) {
        if (child.name != "performance_model") {
            element_error(child, "unexpected element");
        }
        PerformanceModelEdge e;
        e.id = parse_u64(child, "id");
        e.kernel_id = parse_u64(child, "kernel");
        e.hardware_id = parse_u64(child, "hardware");
        for (const xml::Element& ve : child.children) {
            if (ve.name != "mapping_variant") element_error(ve, "unexpected element");
            MappingVariant mv;
            mv.variant_id = static_cast<std::uint32_t>(parse_u64(ve, "variant_id"));
            mv.model.update_count = parse_u64(ve, "update_count");
            for (const xml::Element& p : ve.children) {
                if (p.name == "time_param") {
                    mv.model.time_params.push_back(parse_double(p, "value"));
                } else if (p.name == "energy_param") {
                    mv.model.energy_params.push_back(parse_double(p, "value"));
                } else {
                    element_error(p, "unexpected element");
                }
            }
            e.mappings.push_back(std::move(mv));
        }
        parts.perf_models.push_back(std::move(e));
    }

    return KnowledgeBase::from_parts(std::move(parts));
}

KnowledgeBase load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, path + ": cannot open for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorCode::io_error, path + ": read failed");
    }
    try {
        return load_string(buf.str());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::parse_error ||
            e.code() == ErrorCode::invariant_violation ||
            e.code() == ErrorCode::version_mismatch) {
            throw Error(e.code(), path + ": " + e.what());
        }
        throw;
    }
}

} // namespace sdhkb::persistence
