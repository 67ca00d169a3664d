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

// Command-line front door for the knowledge base. Talks to the shared
// library exclusively through the C interface in sdhkb.h.
//
// Exit codes: 0 success, 2 usage, 3 unknown entity, 4 I/O or file parse
// error, 5 domain-rule or invariant violation.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdhkb.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnknownEntity = 3;
constexpr int kExitIo = 4;
constexpr int kExitViolation = 5;

int exit_code_for(sdhkb_status status) {
    switch (status) {
        case SDHKB_OK:
            return kExitOk;
        case SDHKB_ERR_UNKNOWN_VERTEX:
        case SDHKB_ERR_UNKNOWN_EDGE:
        case SDHKB_ERR_UNKNOWN_DECOMPOSITION:
        case SDHKB_ERR_UNKNOWN_VARIANT:
        case SDHKB_ERR_UNKNOWN_FIXTURE:
            return kExitUnknownEntity;
        case SDHKB_ERR_IO:
        case SDHKB_ERR_PARSE:
        case SDHKB_ERR_VERSION_MISMATCH:
            return kExitIo;
        default:
            return kExitViolation;
    }
}

struct CliError {
    int code;
    std::string message;
};

void require(sdhkb_status status) {
    if (status != SDHKB_OK) {
        throw CliError{exit_code_for(status), sdhkb_last_error_message()};
    }
}

struct KbDeleter {
    void operator()(sdhkb_kb* kb) const { sdhkb_destroy(kb); }
};
using KbHandle = std::unique_ptr<sdhkb_kb, KbDeleter>;

struct BufferDeleter {
    void operator()(void* p) const { sdhkb_free(p); }
};

std::string take_string(char* text) {
    std::unique_ptr<char, BufferDeleter> owned(text);
    return std::string(owned.get());
}

KbHandle open_kb(const std::string& path) {
    sdhkb_kb* kb = nullptr;
    require(sdhkb_load(path.c_str(), &kb));
    return KbHandle(kb);
}

void save_kb(const sdhkb_kb* kb, const std::string& path) {
    require(sdhkb_save(kb, path.c_str()));
}

// ---- small parsers for list-style flags ------------------------------------

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw CliError{kExitUsage, "not a number: '" + item + "'"};
        }
    }
    return out;
}

std::vector<uint64_t> parse_u64s(const std::string& text) {
    std::vector<uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw CliError{kExitUsage, "not an id: '" + item + "'"};
        }
    }
    return out;
}

// "key=value,key=value" pairs
void parse_kv(const std::string& text, std::vector<std::string>& keys,
              std::vector<double>& values) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw CliError{kExitUsage, "expected key=value, got '" + item + "'"};
        }
        keys.push_back(item.substr(0, eq));
        try {
            values.push_back(std::stod(item.substr(eq + 1)));
        } catch (const std::exception&) {
            throw CliError{kExitUsage, "not a number in '" + item + "'"};
        }
    }
}

std::vector<const char*> c_strings(const std::vector<std::string>& strings) {
    std::vector<const char*> out;
    out.reserve(strings.size());
    for (const auto& s : strings) out.push_back(s.c_str());
    return out;
}

void emit(const json& doc, bool machine) {
    std::cout << (machine ? doc.dump() : doc.dump(2)) << "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw CliError{kExitIo, path + ": cannot open for writing"};
    }
    out << text;
    out.flush();
    if (!out) {
        throw CliError{kExitIo, path + ": write failed"};
    }
}

std::vector<uint64_t> all_hardware_ids(const sdhkb_kb* kb) {
    uint64_t* ids = nullptr;
    size_t n = 0;
    require(sdhkb_list_hardware(kb, &ids, &n));
    std::unique_ptr<uint64_t, BufferDeleter> owned(ids);
    return std::vector<uint64_t>(ids, ids + n);
}

// ---- query subcommand -------------------------------------------------------

struct QueryArgs {
    std::string kb_path;
    bool machine = false;
    int type = 0;
    bool list_decompositions = false;
    bool recommend = false;
    bool estimate = false;
    std::optional<std::int64_t> decomposition_step;
    std::optional<std::uint64_t> step;
    std::optional<std::uint64_t> kernel;
    std::optional<std::uint64_t> hardware;
    std::uint32_t d_id = 0;
    std::string metadata;
    std::string features;
    std::uint64_t k = 3;
    std::optional<std::uint64_t> current;
    std::string available;
};

int run_query(const QueryArgs& args) {
    KbHandle kb = open_kb(args.kb_path);

    if (args.type == 1) {
        if (!args.step) throw CliError{kExitUsage, "--type 1 needs --step"};
        uint64_t* kernels = nullptr;
        size_t n = 0;
        require(sdhkb_query_type1(kb.get(), *args.step, &kernels, &n));
        std::unique_ptr<uint64_t, BufferDeleter> owned(kernels);
        emit(json{{"query", "type1"},
                  {"step", *args.step},
                  {"kernels", std::vector<uint64_t>(kernels, kernels + n)}},
             args.machine);
        return kExitOk;
    }
    if (args.type == 2) {
        if (!args.kernel || !args.hardware) {
            throw CliError{kExitUsage, "--type 2 needs --kernel and --hardware"};
        }
        char* text = nullptr;
        require(sdhkb_query_type2_json(kb.get(), *args.kernel, *args.hardware,
                                       &text));
        emit(json{{"query", "type2"},
                  {"kernel", *args.kernel},
                  {"hardware", *args.hardware},
                  {"model", json::parse(take_string(text))}},
             args.machine);
        return kExitOk;
    }
    if (args.type == 3) {
        if (!args.kernel) throw CliError{kExitUsage, "--type 3 needs --kernel"};
        char* text = nullptr;
        require(sdhkb_query_type3_json(kb.get(), *args.kernel, &text));
        emit(json{{"query", "type3"},
                  {"kernel", *args.kernel},
                  {"models", json::parse(take_string(text))}},
             args.machine);
        return kExitOk;
    }
    if (args.decomposition_step || (args.step && !args.list_decompositions &&
                                    !args.recommend && !args.estimate)) {
        uint64_t step = args.step
                            ? *args.step
                            : static_cast<uint64_t>(*args.decomposition_step);
        char* text = nullptr;
        require(
            sdhkb_resolve_decomposition_json(kb.get(), step, args.d_id, &text));
        emit(json{{"query", "decomposition"},
                  {"step", step},
                  {"d_id", args.d_id},
                  {"kernels", json::parse(take_string(text))}},
             args.machine);
        return kExitOk;
    }
    if (args.list_decompositions) {
        if (!args.step) {
            throw CliError{kExitUsage, "--list-decompositions needs --step"};
        }
        uint32_t* d_ids = nullptr;
        size_t n = 0;
        require(sdhkb_list_decompositions(kb.get(), *args.step, &d_ids, &n));
        std::unique_ptr<uint32_t, BufferDeleter> owned(d_ids);
        emit(json{{"query", "list-decompositions"},
                  {"step", *args.step},
                  {"d_ids", std::vector<uint32_t>(d_ids, d_ids + n)}},
             args.machine);
        return kExitOk;
    }
    if (args.recommend) {
        if (!args.kernel) throw CliError{kExitUsage, "--recommend needs --kernel"};
        std::vector<double> metadata = parse_doubles(args.metadata);
        std::vector<uint64_t> available = args.available.empty()
                                              ? all_hardware_ids(kb.get())
                                              : parse_u64s(args.available);
        char* text = nullptr;
        require(sdhkb_recommend_hardware_json(
            kb.get(), *args.kernel, metadata.data(), metadata.size(),
            args.current ? 1 : 0, args.current.value_or(0), available.data(),
            available.size(), &text));
        emit(json{{"query", "recommend"},
                  {"kernel", *args.kernel},
                  {"recommendations", json::parse(take_string(text))}},
             args.machine);
        return kExitOk;
    }
    if (args.estimate) {
        std::vector<double> features = parse_doubles(args.features);
        char* text = nullptr;
        require(sdhkb_estimate_step_cost_json(kb.get(), features.data(),
                                              features.size(), args.k, &text));
        emit(json{{"query", "estimate"},
                  {"k", args.k},
                  {"estimates", json::parse(take_string(text))}},
             args.machine);
        return kExitOk;
    }
    throw CliError{kExitUsage,
                   "specify --type 1|2|3, --decomposition, "
                   "--list-decompositions, --recommend or --estimate"};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"knowledge base for a reconfigurable-hardware compiler"};
    app.require_subcommand(1);

    std::string kb_path;
    bool machine = false;
    app.add_option("--kb", kb_path, "knowledge base file")
        ->envname("SDHKB_KB");
    app.add_flag("--json", machine, "machine-readable JSON-lines output");

    // query
    QueryArgs q;
    auto* query = app.add_subcommand("query", "run a read-only query");
    query->add_option("--type", q.type, "query type: 1, 2 or 3");
    std::int64_t decomposition_step = -1;
    auto* dec_opt = query->add_option(
        "--decomposition", decomposition_step,
        "resolve one decomposition of this step (with --d-id)");
    query->add_flag("--list-decompositions", q.list_decompositions,
                    "list a step's decomposition indices");
    query->add_flag("--recommend", q.recommend,
                    "rank hardware for a kernel by time plus reconfiguration");
    query->add_flag("--estimate", q.estimate,
                    "estimate per-hardware cost of an unknown step");
    std::uint64_t step_arg = 0, kernel_arg = 0, hardware_arg = 0, current_arg = 0;
    auto* step_opt = query->add_option("--step", step_arg, "step id");
    auto* kernel_opt = query->add_option("--kernel", kernel_arg, "kernel id");
    auto* hardware_opt =
        query->add_option("--hardware", hardware_arg, "hardware id");
    query->add_option("--d-id", q.d_id, "decomposition index");
    query->add_option("--metadata", q.metadata,
                      "comma-separated metadata features");
    query->add_option("--features", q.features,
                      "comma-separated step features");
    query->add_option("--k", q.k, "number of nearest steps for --estimate");
    auto* current_opt = query->add_option(
        "--current", current_arg, "current hardware configuration id");
    query->add_option("--available", q.available,
                      "comma-separated available hardware ids (default: all)");

    // add
    auto* add = app.add_subcommand("add", "add a vertex or an edge");
    add->require_subcommand(1);
    bool create = false;
    add->add_flag("--create", create,
                  "start from an empty knowledge base if --kb is missing");
    std::string add_name, add_features, add_characteristics, add_weight;
    double reconfig_cost = 0.0;
    bool identified = false;
    auto* add_step = add->add_subcommand("step", "add a step");
    add_step->add_option("--name", add_name)->required();
    add_step->add_option("--features", add_features,
                         "comma-separated feature values")
        ->required();
    auto* add_kernel = add->add_subcommand("kernel", "add a kernel");
    add_kernel->add_option("--name", add_name)->required();
    add_kernel->add_flag("--identified", identified,
                         "kernel has a well-known optimized mapping");
    auto* add_hardware =
        add->add_subcommand("hardware", "add a hardware configuration");
    add_hardware->add_option("--name", add_name)->required();
    add_hardware->add_option("--characteristics", add_characteristics,
                             "key=value,... characteristics");
    add_hardware->add_option("--reconfig-cost", reconfig_cost,
                             "reconfiguration cost in ms");
    std::uint64_t link_step = 0, link_kernel = 0, link_hardware = 0;
    std::uint32_t link_d_id = 0, link_seq = 0;
    auto* add_link =
        add->add_subcommand("link", "link a step to a kernel (one position)");
    add_link->add_option("--step", link_step)->required();
    add_link->add_option("--kernel", link_kernel)->required();
    add_link->add_option("--d-id", link_d_id, "decomposition index");
    add_link->add_option("--seq", link_seq, "position within the decomposition");
    add_link->add_option("--weight", add_weight, "key=value,... edge weight");
    std::vector<std::string> time_params_list, energy_params_list;
    auto* add_mapping = add->add_subcommand(
        "mapping", "link a kernel to a hardware configuration");
    add_mapping->add_option("--kernel", link_kernel)->required();
    add_mapping->add_option("--hardware", link_hardware)->required();
    add_mapping
        ->add_option("--time-params", time_params_list,
                     "comma-separated [intercept,coefficients...]; repeat per "
                     "variant")
        ->required();
    add_mapping->add_option("--energy-params", energy_params_list,
                            "comma-separated energy parameters; repeat per "
                            "variant (default: zeros)");

    // merge
    auto* merge = app.add_subcommand("merge", "merge kernels into one");
    std::string merge_kernels_arg, merge_name;
    merge->add_option("--kernels", merge_kernels_arg,
                      "comma-separated kernel ids")
        ->required();
    merge->add_option("--name", merge_name, "name of the merged kernel")
        ->required();

    // record
    auto* record = app.add_subcommand(
        "record", "record one workflow execution (kernel usage counts)");
    std::string trace_arg, workflow_arg;
    record->add_option("--trace", trace_arg, "comma-separated kernel ids")
        ->required();
    record->add_option("--workflow", workflow_arg,
                       "workflow JSON (inline or @file)");

    // update-model
    auto* update = app.add_subcommand(
        "update-model", "refine one mapping variant from an observation");
    std::uint64_t up_kernel = 0, up_hardware = 0;
    std::uint32_t up_variant = 0;
    std::string up_metadata;
    double observed_time = 0.0, observed_energy = 0.0, rate = 0.5;
    update->add_option("--kernel", up_kernel)->required();
    update->add_option("--hardware", up_hardware)->required();
    update->add_option("--variant", up_variant, "variant id");
    update->add_option("--metadata", up_metadata, "comma-separated features")
        ->required();
    update->add_option("--observed-time", observed_time, "milliseconds")
        ->required();
    update->add_option("--observed-energy", observed_energy, "millijoules");
    update->add_option("--rate", rate, "learning rate in (0,1]");

    // fixture
    auto* fixture =
        app.add_subcommand("fixture", "write a named example knowledge base");
    std::string fixture_name, fixture_out;
    fixture
        ->add_option("--name", fixture_name,
                     "node-classification or convolution")
        ->required();
    fixture->add_option("--out", fixture_out, "output file")->required();

    // bench
    auto* bench = app.add_subcommand(
        "bench", "measure query latency on generated knowledge bases");
    std::string sizes_arg = "100,1000,10000", types_arg = "1,2,3", bench_out;
    double bench_p = 2.0 / 3.0, bench_lambda = 2.5;
    std::uint64_t bench_h = 10, bench_trials = 10000, bench_seed = 42;
    bool disjoint = false;
    bench->add_option("--sizes", sizes_arg, "comma-separated step counts");
    bench->add_option("--p", bench_p, "geometric fan-out probability");
    bench->add_option("--hw", bench_h, "number of hardware configurations");
    bench->add_option("--lambda", bench_lambda,
                      "preferential-attachment smoothing");
    bench->add_option("--trials", bench_trials, "queries per measurement");
    bench->add_option("--seed", bench_seed, "topology seed");
    bench->add_option("--types", types_arg, "query types to measure");
    bench->add_flag("--disjoint", disjoint,
                    "fresh kernels per step instead of a shared pool");
    bench->add_option("--out", bench_out, "CSV output file (default: stdout)");

    // simulate
    auto* simulate = app.add_subcommand(
        "simulate", "uncoverage-versus-KB-size workload simulation");
    double sim_lambda = 2.5, sim_p = 2.0 / 3.0;
    std::uint64_t sim_workflows = 200, sim_steps = 4, sim_universe = 100,
                  sim_replicates = 50, sim_seed = 1;
    std::string sim_sizes, sim_out;
    simulate->add_option("--lambda", sim_lambda,
                         "preferential-attachment smoothing");
    simulate->add_option("--p", sim_p, "geometric fan-out probability");
    simulate->add_option("--workflows", sim_workflows, "workflows per replicate");
    simulate->add_option("--steps-per-workflow", sim_steps);
    simulate->add_option("--universe", sim_universe, "kernel universe size");
    simulate->add_option("--kb-sizes", sim_sizes,
                         "comma-separated ascending KB sizes (default: 21 "
                         "evenly spaced)");
    simulate->add_option("--replicates", sim_replicates);
    simulate->add_option("--seed", sim_seed);
    simulate->add_option("--out", sim_out, "CSV output file (default: stdout)");

    // info
    auto* info = app.add_subcommand("info", "counts and feature schema");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (query->parsed()) {
            q.kb_path = kb_path;
            q.machine = machine;
            if (dec_opt->count() > 0) q.decomposition_step = decomposition_step;
            if (step_opt->count() > 0) q.step = step_arg;
            if (kernel_opt->count() > 0) q.kernel = kernel_arg;
            if (hardware_opt->count() > 0) q.hardware = hardware_arg;
            if (current_opt->count() > 0) q.current = current_arg;
            return run_query(q);
        }

        if (add->parsed()) {
            KbHandle kb;
            if (create && !std::ifstream(kb_path).good()) {
                kb = KbHandle(sdhkb_create());
            } else {
                kb = open_kb(kb_path);
            }
            uint64_t id = 0;
            if (add_step->parsed()) {
                std::vector<double> features = parse_doubles(add_features);
                require(sdhkb_add_step(kb.get(), add_name.c_str(),
                                       features.data(), features.size(), &id));
                emit(json{{"added", "step"}, {"id", id}}, machine);
            } else if (add_kernel->parsed()) {
                require(sdhkb_add_kernel(kb.get(), add_name.c_str(),
                                         identified ? 1 : 0, &id));
                emit(json{{"added", "kernel"}, {"id", id}}, machine);
            } else if (add_hardware->parsed()) {
                std::vector<std::string> keys;
                std::vector<double> values;
                parse_kv(add_characteristics, keys, values);
                auto key_ptrs = c_strings(keys);
                require(sdhkb_add_hardware(kb.get(), add_name.c_str(),
                                           key_ptrs.data(), values.data(),
                                           keys.size(), reconfig_cost, &id));
                emit(json{{"added", "hardware"}, {"id", id}}, machine);
            } else if (add_link->parsed()) {
                std::vector<std::string> keys;
                std::vector<double> values;
                parse_kv(add_weight, keys, values);
                auto key_ptrs = c_strings(keys);
                require(sdhkb_link_step_kernel(
                    kb.get(), link_step, link_kernel, link_d_id, link_seq,
                    key_ptrs.data(), values.data(), keys.size(), &id));
                emit(json{{"added", "kernel-map"}, {"edge_id", id}}, machine);
            } else if (add_mapping->parsed()) {
                if (!energy_params_list.empty() &&
                    energy_params_list.size() != time_params_list.size()) {
                    throw CliError{kExitUsage,
                                   "--energy-params count must match "
                                   "--time-params count"};
                }
                std::vector<std::vector<double>> time_vecs, energy_vecs;
                for (size_t i = 0; i < time_params_list.size(); ++i) {
                    time_vecs.push_back(parse_doubles(time_params_list[i]));
                    energy_vecs.push_back(
                        energy_params_list.empty()
                            ? std::vector<double>(time_vecs.back().size(), 0.0)
                            : parse_doubles(energy_params_list[i]));
                }
                std::vector<sdhkb_cost_model_init> variants;
                for (size_t i = 0; i < time_vecs.size(); ++i) {
                    variants.push_back(sdhkb_cost_model_init{
                        time_vecs[i].data(), energy_vecs[i].data(),
                        time_vecs[i].size()});
                }
                require(sdhkb_link_kernel_hardware(kb.get(), link_kernel,
                                                   link_hardware,
                                                   variants.data(),
                                                   variants.size(), &id));
                emit(json{{"added", "performance-model"}, {"edge_id", id}},
                     machine);
            }
            save_kb(kb.get(), kb_path);
            return kExitOk;
        }

        if (merge->parsed()) {
            KbHandle kb = open_kb(kb_path);
            std::vector<uint64_t> ids = parse_u64s(merge_kernels_arg);
            uint64_t id = 0;
            require(sdhkb_merge_kernels(kb.get(), ids.data(), ids.size(),
                                        merge_name.c_str(), &id));
            save_kb(kb.get(), kb_path);
            emit(json{{"merged", ids}, {"id", id}}, machine);
            return kExitOk;
        }

        if (record->parsed()) {
            KbHandle kb = open_kb(kb_path);
            std::vector<uint64_t> trace = parse_u64s(trace_arg);
            std::string workflow_json = workflow_arg;
            if (!workflow_arg.empty() && workflow_arg.front() == '@') {
                std::ifstream in(workflow_arg.substr(1));
                if (!in) {
                    throw CliError{kExitIo,
                                   workflow_arg.substr(1) + ": cannot open"};
                }
                std::ostringstream buf;
                buf << in.rdbuf();
                workflow_json = buf.str();
            }
            require(sdhkb_record_execution(
                kb.get(), workflow_json.empty() ? nullptr : workflow_json.c_str(),
                trace.data(), trace.size()));
            save_kb(kb.get(), kb_path);
            emit(json{{"recorded", trace.size()}}, machine);
            return kExitOk;
        }

        if (update->parsed()) {
            KbHandle kb = open_kb(kb_path);
            std::vector<double> metadata = parse_doubles(up_metadata);
            require(sdhkb_update_model(kb.get(), up_kernel, up_hardware,
                                       up_variant, metadata.data(),
                                       metadata.size(), observed_time,
                                       observed_energy, rate));
            save_kb(kb.get(), kb_path);
            double time_ms = 0.0, energy_mj = 0.0;
            require(sdhkb_predict(kb.get(), up_kernel, up_hardware, up_variant,
                                  metadata.data(), metadata.size(), &time_ms,
                                  &energy_mj));
            emit(json{{"updated", {{"kernel", up_kernel},
                                   {"hardware", up_hardware},
                                   {"variant", up_variant}}},
                      {"predicted_time_ms", time_ms},
                      {"predicted_energy_mj", energy_mj}},
                 machine);
            return kExitOk;
        }

        if (fixture->parsed()) {
            sdhkb_kb* raw = nullptr;
            require(sdhkb_build_fixture(fixture_name.c_str(), &raw));
            KbHandle kb(raw);
            save_kb(kb.get(), fixture_out);
            emit(json{{"fixture", fixture_name}, {"path", fixture_out}},
                 machine);
            return kExitOk;
        }

        if (bench->parsed()) {
            std::vector<uint64_t> sizes = parse_u64s(sizes_arg);
            std::vector<uint64_t> types = parse_u64s(types_arg);
            if (sizes.empty() || types.empty()) {
                throw CliError{kExitUsage, "--sizes and --types must be non-empty"};
            }
            std::ostringstream csv;
            csv << "n_steps,query_type,trials,mean_ns,p50_ns,p95_ns\n";
            for (uint64_t n_steps : sizes) {
                sdhkb_kb* raw = nullptr;
                require(sdhkb_generate_random_kb(n_steps, bench_p, bench_h,
                                                 bench_lambda, disjoint ? 1 : 0,
                                                 bench_seed, &raw));
                KbHandle kb(raw);
                for (uint64_t type : types) {
                    sdhkb_bench_result r{};
                    require(sdhkb_time_queries(kb.get(),
                                               static_cast<int>(type),
                                               bench_trials, bench_seed, &r));
                    csv << r.n_steps << "," << r.query_type << "," << r.trials
                        << "," << r.mean_ns << "," << r.p50_ns << ","
                        << r.p95_ns << "\n";
                }
            }
            if (bench_out.empty()) {
                std::cout << csv.str();
            } else {
                write_text_file(bench_out, csv.str());
            }
            return kExitOk;
        }

        if (simulate->parsed()) {
            std::vector<uint64_t> sizes;
            if (sim_sizes.empty()) {
                uint64_t step = sim_universe >= 20 ? sim_universe / 20 : 1;
                for (uint64_t s = 0; s < sim_universe; s += step) {
                    sizes.push_back(s);
                }
                sizes.push_back(sim_universe);
            } else {
                sizes = parse_u64s(sim_sizes);
            }
            std::vector<sdhkb_uncoverage_point> points(sizes.size());
            require(sdhkb_simulate_uncoverage(
                sim_lambda, sim_p, sim_workflows, sim_steps, sim_universe,
                sizes.data(), sizes.size(), sim_seed, sim_replicates,
                points.data()));
            std::ostringstream csv;
            csv << "kb_size,mean_uncoverage,stddev_uncoverage\n";
            csv.precision(17);
            for (const auto& pt : points) {
                csv << pt.kb_kernel_count << "," << pt.mean_uncoverage << ","
                    << pt.stddev_uncoverage << "\n";
            }
            if (sim_out.empty()) {
                std::cout << csv.str();
            } else {
                write_text_file(sim_out, csv.str());
            }
            return kExitOk;
        }

        if (info->parsed()) {
            KbHandle kb = open_kb(kb_path);
            char* text = nullptr;
            require(sdhkb_stats_json(kb.get(), &text));
            emit(json::parse(take_string(text)), machine);
            return kExitOk;
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitUsage;
}
