// Copyright 2026 The anneal-rbm Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

// anneal-rbm: command line front end over the C API.
//
// Exit codes: 0 success, 1 internal error, 2 usage or invalid argument,
// 3 I/O or malformed input, 4 contract violation or infeasible embedding.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbm/rbm.h"

namespace {

using nlohmann::json;

struct Failure {
    rbm_status status;
    std::string message;
};

void check(rbm_status s) {
    if (s != RBM_OK) throw Failure{s, rbm_last_error()};
}

[[noreturn]] void usage_error(const std::string& msg) { throw Failure{RBM_ERR_INVALID_ARGUMENT, msg}; }

int exit_code(rbm_status s) {
    switch (s) {
        case RBM_OK: return 0;
        case RBM_ERR_INVALID_ARGUMENT:
        case RBM_ERR_NULL_POINTER: return 2;
        case RBM_ERR_IO:
        case RBM_ERR_FORMAT: return 3;
        case RBM_ERR_CONTRACT:
        case RBM_ERR_INFEASIBLE: return 4;
        default: return 1;
    }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using Graph = std::unique_ptr<rbm_graph, Deleter<rbm_graph, rbm_graph_free>>;
using Structure = std::unique_ptr<rbm_structure, Deleter<rbm_structure, rbm_structure_free>>;
using Problem = std::unique_ptr<rbm_problem, Deleter<rbm_problem, rbm_problem_free>>;
using Instance = std::unique_ptr<rbm_instance, Deleter<rbm_instance, rbm_instance_free>>;
using Samples = std::unique_ptr<rbm_samples, Deleter<rbm_samples, rbm_samples_free>>;

template <typename F>
std::string fetch(F&& call) {
    size_t len = 0;
    check(call(nullptr, &len));
    std::string out(len, '\0');
    check(call(out.data(), &len));
    out.resize(len - 1);
    return out;
}

Graph load_graph(const std::string& path) {
    rbm_graph* g = nullptr;
    check(rbm_graph_load(path.c_str(), &g));
    return Graph(g);
}

Structure load_structure(const std::string& path) {
    rbm_structure* s = nullptr;
    check(rbm_structure_load(path.c_str(), &s));
    return Structure(s);
}

Problem load_problem(const std::string& path) {
    rbm_problem* p = nullptr;
    check(rbm_problem_load(path.c_str(), &p));
    return Problem(p);
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure{RBM_ERR_IO, "cannot open '" + path + "'"};
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Failure{RBM_ERR_FORMAT, path + ": " + e.what()};
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{RBM_ERR_IO, "cannot open '" + path + "'"};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct Globals {
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out;
    std::string config_text;  // canonical arguments and input contents
};

std::string provenance(const Globals& g) {
    return json{{"tool", "anneal-rbm"},
                {"tool_version", rbm_version()},
                {"seed", g.seed},
                {"config_hash", hex(fnv1a64(g.config_text))}}
        .dump();
}

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream os(g.out, std::ios::binary);
    if (!os) throw Failure{RBM_ERR_IO, "cannot write '" + g.out + "'"};
    os << text << '\n';
    if (!os) throw Failure{RBM_ERR_IO, "write to '" + g.out + "' failed"};
}

void require_out(const Globals& g, const char* what) {
    if (g.out.empty()) usage_error(std::string(what) + " needs --out");
}

std::vector<double> parse_bias(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            usage_error("--bias expects two numbers like 9,2, got '" + s + "'");
        }
    }
    if (v.size() != 2) usage_error("--bias expects two numbers like 9,2, got '" + s + "'");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Replication-based mitigation workbench: topologies, embeddings, planted instances, sampling, "
                 "decoding and experiment reports.",
                 "anneal-rbm"};
    app.set_version_flag("--version", rbm_version());
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Seed for randomized stages")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (default: ANNEAL_RBM_THREADS or all cores)");
    app.add_option("--out", g.out, "Output file or directory");

    // topology
    auto* topo = app.add_subcommand("topology", "Hardware graphs")->require_subcommand(1);
    std::string family = "pegasus", defects_path, stats_path;
    std::uint32_t m = 16, rows = 1, cols = 1, shore = 4;
    auto* topo_build = topo->add_subcommand("build", "Build a Pegasus or Chimera graph");
    topo_build->add_option("--family", family, "pegasus or chimera")
        ->check(CLI::IsMember({"pegasus", "chimera"}))
        ->capture_default_str();
    topo_build->add_option("--m", m, "Pegasus size")->capture_default_str();
    topo_build->add_option("--rows", rows, "Chimera rows")->capture_default_str();
    topo_build->add_option("--cols", cols, "Chimera columns")->capture_default_str();
    topo_build->add_option("--shore", shore, "Chimera shore size")->capture_default_str();
    topo_build->add_option("--defects", defects_path, "Defect mask JSON {nodes, edges}");
    auto* topo_stats = topo->add_subcommand("stats", "Node, edge and degree statistics");
    topo_stats->add_option("graph", stats_path, "Graph file")->required();

    // embed
    auto* embed = app.add_subcommand("embed", "Replica partitions and QAC tilings")->require_subcommand(1);
    std::string graph_path;
    std::uint32_t k = 4;
    std::vector<CLI::App*> embed_cmds;
    for (const char* name : {"partition", "qac", "combined"}) {
        auto* c = embed->add_subcommand(name, std::string("Build a ") + name + " structure");
        c->add_option("--graph", graph_path, "Hardware graph file")->required();
        if (std::string(name) != "qac") c->add_option("--k", k, "Replica count")->capture_default_str();
        embed_cmds.push_back(c);
    }

    // generate
    auto* gen = app.add_subcommand("generate", "Planted frustrated-loop instances");
    std::string cover_from, bias = "10,2";
    double beta = 1.0, p_large = 0.08;
    std::uint32_t count = 1;
    gen->add_option("--cover-from", cover_from, "Graph or structure file whose logical graph is covered")->required();
    gen->add_option("--beta", beta, "Clause density in (0, 1]")->capture_default_str();
    gen->add_option("--bias", bias, "Large,small loop magnitudes")->capture_default_str();
    gen->add_option("--p", p_large, "Probability of the large magnitude")->capture_default_str();
    gen->add_option("--count", count, "Number of instances (seeds seed, seed+1, ...)")->capture_default_str();
    gen->add_option("--seed", g.seed, "Seed of the first instance");
    gen->add_option("--out", g.out, "Output directory");

    // sample
    auto* sample = app.add_subcommand("sample", "Simulated annealing with optional hardware noise");
    std::string problem_path, structure_path, noise_path, method = "rbm";
    double alpha = -1.0;
    rbm_anneal_params anneal{};
    rbm_anneal_defaults(&anneal);
    sample->add_option("--problem", problem_path, "Problem or instance file")->required();
    sample->add_option("--structure", structure_path, "Embed the problem on this structure first");
    sample->add_option("--graph", graph_path, "Host graph for coupler checks");
    sample->add_option("--method", method, "rbm, qac or sqa (with --structure)")
        ->check(CLI::IsMember({"rbm", "qac", "sqa"}))
        ->capture_default_str();
    sample->add_option("--alpha", alpha, "QAC penalty weight (<= 0)")->capture_default_str();
    sample->add_option("--reads", anneal.num_reads, "Reads per call")->capture_default_str();
    sample->add_option("--sweeps", anneal.sweeps, "Sweeps per read")->capture_default_str();
    sample->add_option("--t-hot", anneal.t_hot, "Initial temperature")->capture_default_str();
    sample->add_option("--t-cold", anneal.t_cold, "Final temperature")->capture_default_str();
    sample->add_option("--noise", noise_path, "Noise model JSON");
    sample->add_option("--seed", g.seed, "Sampler seed");
    sample->add_option("--out", g.out, "Sample file");

    // solve-exact
    auto* exact = app.add_subcommand("solve-exact", "Exhaustive ground state (n <= cap)");
    std::uint32_t cap = 24;
    exact->add_option("--problem", problem_path, "Problem file")->required();
    exact->add_option("--cap", cap, "Largest n searched")->capture_default_str();
    exact->add_option("--out", g.out, "Result file");

    // decode
    auto* dec = app.add_subcommand("decode", "Logical solutions from sample files")->require_subcommand(1);
    std::vector<std::string> sample_paths;
    bool include_penalty = false;
    std::vector<CLI::App*> dec_cmds;
    for (const char* name : {"rbm", "qac", "sqa"}) {
        auto* c = dec->add_subcommand(name, std::string("Decode ") + name + " samples");
        c->add_option("--samples", sample_paths, "Sample file (sqa accepts several)")->required();
        c->add_option("--structure", structure_path, "Structure the samples were embedded on")->required();
        c->add_option("--problem", problem_path, "Logical problem or instance")->required();
        c->add_option("--out", g.out, "Decoded solution file");
        if (std::string(name) != "rbm") c->add_flag("--include-penalty", include_penalty, "Let the penalty qubit vote");
        dec_cmds.push_back(c);
    }

    // experiment
    auto* exp = app.add_subcommand("experiment", "Run a study and write its report")->require_subcommand(1);
    std::string config_path, formats = "csv,json,svg";
    std::vector<CLI::App*> exp_cmds;
    for (const char* name : {"qac", "scaling"}) {
        auto* c = exp->add_subcommand(name, std::string(name) == "qac" ? "RBM vs QAC vs SQA" : "RBM vs SQA over k");
        c->add_option("--config", config_path, "Experiment config JSON")->required();
        c->add_option("--formats", formats, "Comma list of csv,json,svg")->capture_default_str();
        c->add_option("--out", g.out, "Report directory");
        exp_cmds.push_back(c);
    }

    // report
    auto* rep = app.add_subcommand("report", "Report sinks")->require_subcommand(1);
    auto* render = rep->add_subcommand("render", "CSV/JSON/SVG from a report or decoded results");
    std::string report_in;
    std::vector<std::string> decoded_paths, instance_paths;
    render->add_option("--in", report_in, "report.json to re-render");
    render->add_option("--decoded", decoded_paths, "Decoded solution files");
    render->add_option("--instance", instance_paths, "Instance file for each --decoded");
    render->add_option("--k", k, "Replica count recorded in the report")->capture_default_str();
    render->add_option("--formats", formats, "Comma list of csv,json,svg")->capture_default_str();
    render->add_option("--out", g.out, "Report directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n" << app.help() << std::flush;
        return 2;
    }

    // Everything that shapes the payload, except where it is written.
    {
        std::ostringstream os;
        for (int i = 1; i < argc; ++i) {
            const std::string a = argv[i];
            if (a == "--out" || a == "--threads") {
                ++i;
                continue;
            }
            if (a.rfind("--out=", 0) == 0 || a.rfind("--threads=", 0) == 0) continue;
            os << a << '\x1f';
        }
        g.config_text = os.str();
    }

    try {
        if (g.threads > 0) check(rbm_set_threads(g.threads));
        const std::string prov_text = provenance(g);

        if (topo_build->parsed()) {
            require_out(g, "topology build");
            rbm_graph* raw = nullptr;
            check(family == "pegasus" ? rbm_graph_pegasus(m, &raw) : rbm_graph_chimera(rows, cols, shore, &raw));
            Graph graph(raw);
            if (!defects_path.empty()) {
                g.config_text += read_file(defects_path);
                rbm_graph* masked = nullptr;
                check(rbm_graph_apply_defects_file(graph.get(), defects_path.c_str(), &masked));
                graph.reset(masked);
            }
            check(rbm_graph_save(graph.get(), g.out.c_str(), provenance(g).c_str()));
            size_t nodes = 0, edges = 0;
            check(rbm_graph_counts(graph.get(), &nodes, &edges));
            std::cerr << "graph: " << nodes << " nodes, " << edges << " edges\n";
        } else if (topo_stats->parsed()) {
            auto graph = load_graph(stats_path);
            emit(g, fetch([&](char* b, size_t* l) { return rbm_graph_stats_json(graph.get(), b, l); }));
        } else if (embed->parsed()) {
            require_out(g, "embed");
            auto graph = load_graph(graph_path);
            g.config_text += read_file(graph_path);
            rbm_structure* raw = nullptr;
            if (embed_cmds[0]->parsed())
                check(rbm_partition(graph.get(), k, &raw));
            else if (embed_cmds[1]->parsed())
                check(rbm_tile_qac(graph.get(), &raw));
            else
                check(rbm_combine(graph.get(), k, &raw));
            Structure s(raw);
            int pass = 0;
            const auto report = fetch([&](char* b, size_t* l) { return rbm_structure_verify(s.get(), graph.get(), &pass, b, l); });
            if (!pass) throw Failure{RBM_ERR_CONTRACT, "structure failed verification: " + report};
            check(rbm_structure_save(s.get(), g.out.c_str(), provenance(g).c_str()));
            size_t nodes = 0, edges = 0;
            check(rbm_structure_logical_size(s.get(), &nodes, &edges));
            std::cerr << "logical graph: " << nodes << " nodes, " << edges << " edges\n";
        } else if (gen->parsed()) {
            require_out(g, "generate");
            const auto bv = parse_bias(bias);
            const auto src = read_json(cover_from);
            g.config_text += read_file(cover_from);
            Structure s;
            Graph graph;
            if (src.contains("kind"))
                s = load_structure(cover_from);
            else
                graph = load_graph(cover_from);
            std::error_code ec;
            std::filesystem::create_directories(g.out, ec);
            if (ec) throw Failure{RBM_ERR_IO, "cannot create '" + g.out + "': " + ec.message()};
            for (std::uint32_t i = 0; i < count; ++i) {
                rbm_generator_params params{bv[0], bv[1], p_large, beta, g.seed + i};
                rbm_instance* raw = nullptr;
                check(s ? rbm_generate(s.get(), &params, &raw) : rbm_generate_on_graph(graph.get(), &params, &raw));
                Instance inst(raw);
                Globals gi = g;
                gi.seed = g.seed + i;
                char name[32];
                std::snprintf(name, sizeof name, "instance_%03u.json", i);
                const auto path = (std::filesystem::path(g.out) / name).string();
                check(rbm_instance_save(inst.get(), path.c_str(), provenance(gi).c_str()));
                std::cout << path << '\n';
            }
        } else if (sample->parsed()) {
            require_out(g, "sample");
            auto logical = load_problem(problem_path);
            g.config_text += read_file(problem_path);
            Problem target;
            if (!structure_path.empty()) {
                auto s = load_structure(structure_path);
                g.config_text += read_file(structure_path);
                Graph host;
                if (!graph_path.empty()) host = load_graph(graph_path);
                rbm_problem* raw = nullptr;
                check(rbm_problem_embed(logical.get(), s.get(), method.c_str(), alpha, host.get(), &raw));
                target.reset(raw);
            }
            const rbm_problem* p = target ? target.get() : logical.get();
            std::string noise_text;
            if (!noise_path.empty()) {
                noise_text = read_file(noise_path);
                g.config_text += noise_text;
            }
            anneal.seed = g.seed;
            rbm_samples* raw = nullptr;
            check(rbm_sample_sa(p, &anneal, noise_path.empty() ? nullptr : noise_text.c_str(), &raw));
            Samples set(raw);
            if (target) {
                const json meta = {{"embedding", {{"method", method}, {"alpha", method == "qac" ? alpha : 0.0}}}};
                check(rbm_samples_annotate(set.get(), meta.dump().c_str()));
            }
            check(rbm_samples_save(set.get(), g.out.c_str(), provenance(g).c_str()));
            double best = 0.0;
            check(rbm_samples_min_energy(set.get(), &best));
            std::cerr << "best physical energy: " << best << '\n';
        } else if (exact->parsed()) {
            auto p = load_problem(problem_path);
            double best = 0.0;
            auto text = fetch([&](char* b, size_t* l) { return rbm_solve_exact(p.get(), cap, &best, b, l); });
            emit(g, text);
        } else if (dec->parsed()) {
            auto logical = load_problem(problem_path);
            auto s = load_structure(structure_path);
            const std::string which = dec_cmds[0]->parsed() ? "rbm" : dec_cmds[1]->parsed() ? "qac" : "sqa";
            rbm_structure_kind kind{};
            check(rbm_structure_kind_of(s.get(), &kind));
            std::vector<Samples> sets;
            for (const auto& path : sample_paths) {
                const auto j = read_json(path);
                double a = which == "qac" ? -1.0 : 0.0;
                if (j.contains("params") && j["params"].contains("embedding"))
                    a = j["params"]["embedding"].value("alpha", a);
                rbm_problem* raw = nullptr;
                check(rbm_problem_embed(logical.get(), s.get(), which.c_str(), a, nullptr, &raw));
                Problem physical(raw);
                rbm_samples* sr = nullptr;
                check(rbm_samples_load(path.c_str(), physical.get(), &sr));
                sets.emplace_back(sr);
            }
            std::string text;
            if (which == "rbm") {
                if (sets.size() != 1) usage_error("decode rbm takes one --samples file");
                text = fetch([&](char* b, size_t* l) { return rbm_decode_rbm(sets[0].get(), s.get(), logical.get(), b, l); });
            } else if (which == "qac" || kind != RBM_STRUCTURE_PARTITION) {
                if (sets.size() != 1) usage_error("majority decoding takes one --samples file");
                text = fetch([&](char* b, size_t* l) {
                    return rbm_decode_qac(sets[0].get(), logical.get(), include_penalty ? 1 : 0, b, l);
                });
                if (which == "sqa") {
                    auto j = json::parse(text);
                    j["method"] = "sqa";
                    text = j.dump();
                }
            } else {
                std::vector<const rbm_samples*> ptrs;
                for (auto& x : sets) ptrs.push_back(x.get());
                text = fetch([&](char* b, size_t* l) {
                    return rbm_decode_sqa(ptrs.data(), ptrs.size(), logical.get(), b, l);
                });
            }
            auto j = json::parse(text);
            j["provenance_tool"] = json::parse(prov_text);
            emit(g, j.dump());
        } else if (exp->parsed()) {
            require_out(g, "experiment");
            const auto text = read_file(config_path);
            g.config_text += text;
            const char* study = exp_cmds[0]->parsed() ? "qac_comparison" : "scaling";
            check(rbm_experiment_run(text.c_str(), study, g.out.c_str(), formats.c_str(), provenance(g).c_str()));
            std::cout << g.out << '\n';
        } else if (render->parsed()) {
            require_out(g, "report render");
            if (!report_in.empty()) {
                check(rbm_report_render(report_in.c_str(), g.out.c_str(), formats.c_str()));
            } else {
                if (decoded_paths.empty() || decoded_paths.size() != instance_paths.size())
                    usage_error("report render needs --in, or matching --decoded and --instance lists");
                std::vector<const char*> d, i;
                for (const auto& x : decoded_paths) {
                    d.push_back(x.c_str());
                    g.config_text += read_file(x);
                }
                for (const auto& x : instance_paths) i.push_back(x.c_str());
                check(rbm_report_from_decoded(d.data(), i.data(), d.size(), k, g.out.c_str(), formats.c_str(),
                                              provenance(g).c_str()));
            }
            std::cout << g.out << '\n';
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << rbm_status_name(f.status) << ": " << f.message << '\n';
        return exit_code(f.status);
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
