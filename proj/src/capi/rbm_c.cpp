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

#include "rbm/rbm.h"

#include <cstring>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "rbm/common.hpp"
#include "rbm/decode.hpp"
#include "rbm/embedding.hpp"
#include "rbm/experiments.hpp"
#include "rbm/io.hpp"
#include "rbm/ising.hpp"
#include "rbm/planted.hpp"
#include "rbm/samplers.hpp"
#include "rbm/topology.hpp"

using nlohmann::json;
using namespace rbm;

struct rbm_graph {
    topology::HardwareGraph graph;
};

struct rbm_structure {
    std::variant<embedding::ReplicaPartition, embedding::QacEncoding, embedding::CombinedEmbedding> value;
};

// Problem plus the layout that produced it. placement is empty for logical
// problems; qac marks the 4-per-unit QAC layout.
struct rbm_problem {
    ising::IsingProblem problem;
    std::vector<topology::QubitId> placement;
    std::uint32_t replicas = 1;
    bool qac = false;
    double alpha = 0.0;
};

struct rbm_instance {
    planted::PlantedInstance instance;
};

struct rbm_samples {
    samplers::SampleSet set;
};

namespace {

thread_local std::string last_error;

rbm_status fail(rbm_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

rbm_status status_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::invalid_parameter: return RBM_ERR_INVALID_ARGUMENT;
        case ErrorKind::contract: return RBM_ERR_CONTRACT;
        case ErrorKind::infeasible: return RBM_ERR_INFEASIBLE;
        case ErrorKind::io: return RBM_ERR_IO;
        case ErrorKind::format: return RBM_ERR_FORMAT;
    }
    return RBM_ERR_UNKNOWN;
}

template <typename F>
rbm_status guarded(F&& body) {
    try {
        last_error.clear();
        return body();
    } catch (const Error& e) {
        return fail(status_of(e.kind()), e.what());
    } catch (const json::exception& e) {
        return fail(RBM_ERR_FORMAT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(RBM_ERR_UNKNOWN, "out of memory");
    } catch (const std::exception& e) {
        return fail(RBM_ERR_UNKNOWN, e.what());
    }
}

#define RBM_REQUIRE(ptr)                                                            \
    do {                                                                            \
        if ((ptr) == nullptr) return fail(RBM_ERR_NULL_POINTER, #ptr " is NULL");   \
    } while (0)

rbm_status copy_out(const std::string& text, char* buf, size_t* len) {
    RBM_REQUIRE(len);
    const size_t need = text.size() + 1;
    if (buf == nullptr) {
        *len = need;
        return RBM_OK;
    }
    if (*len < need) {
        *len = need;
        return fail(RBM_ERR_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(*len) + " bytes, need " +
                                                  std::to_string(need));
    }
    std::memcpy(buf, text.c_str(), need);
    *len = need;
    return RBM_OK;
}

json parse(const char* text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string(what) + " is not valid JSON: " + e.what());
    }
}

void save_with_provenance(const std::string& path, json payload, const char* provenance) {
    if (provenance != nullptr) payload["provenance"] = parse(provenance, "provenance");
    io::write_json_file(path, std::move(payload));
}

json structure_json(const rbm_structure& s) {
    return std::visit([](const auto& v) { return embedding::to_json(v); }, s.value);
}

const embedding::ReplicaPartition* replica_partition(const rbm_structure& s) {
    if (auto p = std::get_if<embedding::ReplicaPartition>(&s.value)) return p;
    if (auto c = std::get_if<embedding::CombinedEmbedding>(&s.value)) return &c->logical;
    return nullptr;
}

const embedding::QacEncoding* qac_encoding(const rbm_structure& s) {
    if (auto e = std::get_if<embedding::QacEncoding>(&s.value)) return e;
    if (auto c = std::get_if<embedding::CombinedEmbedding>(&s.value)) return &c->encodings.front();
    return nullptr;
}

SimpleGraph structure_logical_graph(const rbm_structure& s) {
    if (auto e = std::get_if<embedding::QacEncoding>(&s.value)) return embedding::logical_graph(*e);
    return replica_partition(s)->logical_graph;
}

json problem_json(const rbm_problem& p) {
    json j = ising::to_json(p.problem);
    if (!p.placement.empty()) {
        std::vector<std::uint32_t> q;
        for (auto id : p.placement) q.push_back(id.value);
        j["placement"] = q;
        j["replicas"] = p.replicas;
    }
    if (p.qac) {
        j["qac"] = true;
        j["alpha"] = p.alpha;
    }
    return j;
}

rbm_problem* new_logical(ising::IsingProblem p) {
    auto* out = new rbm_problem;
    out->problem = std::move(p);
    return out;
}

rbm_problem problem_of_json(const json& j) {
    rbm_problem p;
    p.problem = ising::problem_from_json(j);
    if (j.contains("placement")) {
        for (auto v : io::required<std::vector<std::uint32_t>>(j, "placement")) p.placement.push_back({v});
        if (p.placement.size() != p.problem.variable_count())
            throw FormatError("placement length differs from the variable count");
        p.replicas = j.value("replicas", 1u);
    }
    p.qac = j.value("qac", false);
    p.alpha = j.value("alpha", 0.0);
    return p;
}

std::vector<std::string> split_formats(const char* formats) {
    if (formats == nullptr) return {"csv", "json", "svg"};
    std::vector<std::string> out;
    std::stringstream ss(formats);
    std::string f;
    while (std::getline(ss, f, ','))
        if (!f.empty()) out.push_back(f);
    return out;
}

planted::GeneratorParams gen_params(const rbm_generator_params* p) {
    planted::GeneratorParams g{p->large, p->small, p->p_large, p->beta, p->seed};
    g.validate();
    return g;
}

rbm_status verify_out(const embedding::PartitionReport& rep, int* pass, char* buf, size_t* len) {
    *pass = rep.pass ? 1 : 0;
    if (len == nullptr) return RBM_OK;
    return copy_out(embedding::to_json(rep).dump(), buf, len);
}

}  // namespace

extern "C" {

const char* rbm_version(void) { return version_string(); }

const char* rbm_last_error(void) { return last_error.c_str(); }

const char* rbm_status_name(rbm_status status) {
    switch (status) {
        case RBM_OK: return "ok";
        case RBM_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case RBM_ERR_NULL_POINTER: return "null-pointer";
        case RBM_ERR_IO: return "io";
        case RBM_ERR_FORMAT: return "format";
        case RBM_ERR_CONTRACT: return "contract";
        case RBM_ERR_INFEASIBLE: return "embedding-infeasible";
        case RBM_ERR_BUFFER_TOO_SMALL: return "buffer-too-small";
        case RBM_ERR_UNKNOWN: return "internal";
    }
    return "internal";
}

rbm_status rbm_set_threads(unsigned threads) {
    set_thread_count(threads);
    return RBM_OK;
}

// Graphs

rbm_status rbm_graph_pegasus(uint32_t m, rbm_graph** out) {
    RBM_REQUIRE(out);
    return guarded([&] {
        *out = new rbm_graph{topology::build_pegasus(m)};
        return RBM_OK;
    });
}

rbm_status rbm_graph_chimera(uint32_t rows, uint32_t cols, uint32_t shore, rbm_graph** out) {
    RBM_REQUIRE(out);
    return guarded([&] {
        *out = new rbm_graph{topology::build_chimera(rows, cols, shore)};
        return RBM_OK;
    });
}

rbm_status rbm_graph_load(const char* path, rbm_graph** out) {
    RBM_REQUIRE(path);
    RBM_REQUIRE(out);
    return guarded([&] {
        *out = new rbm_graph{topology::graph_from_json(io::read_json_file(path))};
        return RBM_OK;
    });
}

rbm_status rbm_graph_from_json(const char* text, rbm_graph** out) {
    RBM_REQUIRE(text);
    RBM_REQUIRE(out);
    return guarded([&] {
        *out = new rbm_graph{topology::graph_from_json(parse(text, "graph"))};
        return RBM_OK;
    });
}

rbm_status rbm_graph_apply_defects(const rbm_graph* g, const char* defects_json, rbm_graph** out) {
    RBM_REQUIRE(g);
    RBM_REQUIRE(defects_json);
    RBM_REQUIRE(out);
    return guarded([&] {
        auto mask = topology::defects_from_json(parse(defects_json, "defect mask"));
        *out = new rbm_graph{topology::apply_defects(g->graph, mask)};
        return RBM_OK;
    });
}

rbm_status rbm_graph_apply_defects_file(const rbm_graph* g, const char* path, rbm_graph** out) {
    RBM_REQUIRE(g);
    RBM_REQUIRE(path);
    RBM_REQUIRE(out);
    return guarded([&] {
        auto j = io::read_json_file(path);
        // Accept a bare mask or a graph file carrying one.
        auto mask = topology::defects_from_json(j.contains("defects") ? j.at("defects") : j);
        *out = new rbm_graph{topology::apply_defects(g->graph, mask)};
        return RBM_OK;
    });
}

rbm_status rbm_graph_counts(const rbm_graph* g, size_t* nodes, size_t* edges) {
    RBM_REQUIRE(g);
    if (nodes) *nodes = g->graph.nodes().size();
    if (edges) *edges = g->graph.edges().size();
    return RBM_OK;
}

rbm_status rbm_graph_stats_json(const rbm_graph* g, char* buf, size_t* len) {
    RBM_REQUIRE(g);
    return guarded([&] { return copy_out(topology::to_json(topology::graph_stats(g->graph)).dump(), buf, len); });
}

rbm_status rbm_graph_to_json(const rbm_graph* g, char* buf, size_t* len) {
    RBM_REQUIRE(g);
    return guarded([&] { return copy_out(topology::to_json(g->graph).dump(), buf, len); });
}

rbm_status rbm_graph_save(const rbm_graph* g, const char* path, const char* provenance_json) {
    RBM_REQUIRE(g);
    RBM_REQUIRE(path);
    return guarded([&] {
        save_with_provenance(path, topology::to_json(g->graph), provenance_json);
        return RBM_OK;
    });
}

void rbm_graph_free(rbm_graph* g) { delete g; }

// Structures

rbm_status rbm_partition(const rbm_graph* g, uint32_t k, rbm_structure** out) {
    RBM_REQUIRE(g);
    RBM_REQUIRE(out);
    return guarded([&] {
        auto p = k == 1 ? embedding::whole_graph_partition(g->graph) : embedding::partition_replicas(g->graph, k);
        *out = new rbm_structure{std::move(p)};
        return RBM_OK;
    });
}

rbm_status rbm_tile_qac(const rbm_graph* g, rbm_structure** out) {
    RBM_REQUIRE(g);
    RBM_REQUIRE(out);
    return guarded([&] {
        *out = new rbm_structure{embedding::tile_qac(g->graph)};
        return RBM_OK;
    });
}

rbm_status rbm_combine(const rbm_graph* g, uint32_t k, rbm_structure** out) {
    RBM_REQUIRE(g);
    RBM_REQUIRE(out);
    return guarded([&] {
        *out = new rbm_structure{embedding::combine_qac_rbm(g->graph, k)};
        return RBM_OK;
    });
}

rbm_status rbm_structure_load(const char* path, rbm_structure** out) {
    RBM_REQUIRE(path);
    RBM_REQUIRE(out);
    return guarded([&] {
        const auto j = io::read_json_file(path);
        const auto kind = io::required<std::string>(j, "kind");
        if (kind == "partition")
            *out = new rbm_structure{embedding::partition_from_json(j)};
        else if (kind == "qac")
            *out = new rbm_structure{embedding::encoding_from_json(j)};
        else if (kind == "combined")
            *out = new rbm_structure{embedding::combined_from_json(j)};
        else
            throw FormatError("unknown structure kind '" + kind + "'");
        return RBM_OK;
    });
}

rbm_status rbm_structure_save(const rbm_structure* s, const char* path, const char* provenance_json) {
    RBM_REQUIRE(s);
    RBM_REQUIRE(path);
    return guarded([&] {
        save_with_provenance(path, structure_json(*s), provenance_json);
        return RBM_OK;
    });
}

rbm_status rbm_structure_to_json(const rbm_structure* s, char* buf, size_t* len) {
    RBM_REQUIRE(s);
    return guarded([&] { return copy_out(structure_json(*s).dump(), buf, len); });
}

rbm_status rbm_structure_kind_of(const rbm_structure* s, rbm_structure_kind* kind) {
    RBM_REQUIRE(s);
    RBM_REQUIRE(kind);
    *kind = static_cast<rbm_structure_kind>(s->value.index());
    return RBM_OK;
}

rbm_status rbm_structure_replicas(const rbm_structure* s, uint32_t* replicas) {
    RBM_REQUIRE(s);
    RBM_REQUIRE(replicas);
    auto p = replica_partition(*s);
    *replicas = p ? p->replica_count() : 1;
    return RBM_OK;
}

rbm_status rbm_structure_logical_size(const rbm_structure* s, size_t* nodes, size_t* edges) {
    RBM_REQUIRE(s);
    return guarded([&] {
        const auto lg = structure_logical_graph(*s);
        if (nodes) *nodes = lg.vertex_count();
        if (edges) *edges = lg.edge_count();
        return RBM_OK;
    });
}

rbm_status rbm_structure_verify(const rbm_structure* s, const rbm_graph* g, int* pass, char* buf, size_t* len) {
    RBM_REQUIRE(s);
    RBM_REQUIRE(g);
    RBM_REQUIRE(pass);
    return guarded([&] {
        if (auto p = std::get_if<embedding::ReplicaPartition>(&s->value))
            return verify_out(embedding::verify_partition(*p, g->graph), pass, buf, len);
        if (auto e = std::get_if<embedding::QacEncoding>(&s->value))
            return verify_out(embedding::verify_qac(*e, g->graph), pass, buf, len);
        const auto& c = std::get<embedding::CombinedEmbedding>(s->value);
        auto rep = embedding::verify_partition(c.regions, g->graph);
        auto logical = embedding::verify_partition(c.logical, g->graph);
        for (const auto& enc : c.encodings) {
            auto q = embedding::verify_qac(enc, g->graph);
            logical.pass = logical.pass && q.pass;
            for (auto& f : q.failures) logical.failures.push_back("qac: " + f);
        }
        for (auto& f : logical.failures) rep.failures.push_back("logical: " + f);
        rep.pass = rep.pass && logical.pass;
        return verify_out(rep, pass, buf, len);
    });
}

void rbm_structure_free(rbm_structure* s) { delete s; }

// Problems

rbm_status rbm_problem_load(const char* path, rbm_problem** out) {
    RBM_REQUIRE(path);
    RBM_REQUIRE(out);
    return guarded([&] {
        const std::string p(path);
        if (p.size() >= 4 && p.compare(p.size() - 4, 4, ".txt") == 0)
            *out = new_logical(ising::problem_from_text(io::read_text_file(p)));
        else
            *out = new rbm_problem{problem_of_json(io::read_json_file(p))};
        return RBM_OK;
    });
}

rbm_status rbm_problem_from_json(const char* text, rbm_problem** out) {
    RBM_REQUIRE(text);
    RBM_REQUIRE(out);
    return guarded([&] {
        *out = new rbm_problem{problem_of_json(parse(text, "problem"))};
        return RBM_OK;
    });
}

rbm_status rbm_problem_save(const rbm_problem* p, const char* path, const char* provenance_json) {
    RBM_REQUIRE(p);
    RBM_REQUIRE(path);
    return guarded([&] {
        const std::string s(path);
        if (s.size() >= 4 && s.compare(s.size() - 4, 4, ".txt") == 0)
            io::write_text_file(s, ising::to_text(p->problem));
        else
            save_with_provenance(s, problem_json(*p), provenance_json);
        return RBM_OK;
    });
}

rbm_status rbm_problem_to_json(const rbm_problem* p, char* buf, size_t* len) {
    RBM_REQUIRE(p);
    return guarded([&] { return copy_out(problem_json(*p).dump(), buf, len); });
}

rbm_status rbm_problem_variables(const rbm_problem* p, uint32_t* n) {
    RBM_REQUIRE(p);
    RBM_REQUIRE(n);
    *n = p->problem.variable_count();
    return RBM_OK;
}

rbm_status rbm_problem_energy(const rbm_problem* p, const int8_t* spins, size_t n, double* energy) {
    RBM_REQUIRE(p);
    RBM_REQUIRE(spins);
    RBM_REQUIRE(energy);
    return guarded([&] {
        ising::SpinConfig s(std::vector<ising::Spin>(spins, spins + n));
        *energy = ising::energy(p->problem, s);
        return RBM_OK;
    });
}

rbm_status rbm_problem_hash(const rbm_problem* p, char* buf, size_t* len) {
    RBM_REQUIRE(p);
    return guarded([&] { return copy_out(samplers::problem_hash(p->problem), buf, len); });
}

rbm_status rbm_problem_embed(const rbm_problem* logical, const rbm_structure* s, const char* method, double alpha,
                             const rbm_graph* host, rbm_problem** out) {
    RBM_REQUIRE(logical);
    RBM_REQUIRE(s);
    RBM_REQUIRE(method);
    RBM_REQUIRE(out);
    return guarded([&] {
        const std::string m(method);
        const auto* hg = host ? &host->graph : nullptr;
        const auto* part = replica_partition(*s);
        const auto* enc = qac_encoding(*s);
        auto result = std::make_unique<rbm_problem>();
        if (m == "rbm" || (m == "sqa" && enc == nullptr)) {
            if (part == nullptr) throw InvalidParameter("method '" + m + "' needs a partition or combined structure");
            auto rp = m == "rbm" ? ising::replicate(logical->problem, *part, hg)
                                 : ising::replicate(logical->problem,
                                                    embedding::ReplicaPartition{part->logical_graph, {part->iso_maps.front()}}, hg);
            result->problem = std::move(rp.problem);
            result->placement = std::move(rp.placement);
            result->replicas = rp.replicas;
        } else if (m == "qac" || m == "sqa") {
            auto q = decode::build_qac_problem(logical->problem, *enc, m == "qac" ? alpha : 0.0);
            result->problem = std::move(q.problem);
            result->placement = std::move(q.placement);
            result->qac = true;
            result->alpha = q.alpha;
        } else {
            throw InvalidParameter("unknown method '" + m + "' (expected rbm, qac or sqa)");
        }
        *out = result.release();
        return RBM_OK;
    });
}

void rbm_problem_free(rbm_problem* p) { delete p; }

// Instances

rbm_status rbm_generator_defaults(rbm_generator_params* params) {
    RBM_REQUIRE(params);
    const planted::GeneratorParams d;
    *params = {d.large, d.small, d.p_large, d.beta, d.seed};
    return RBM_OK;
}

rbm_status rbm_generate(const rbm_structure* s, const rbm_generator_params* params, rbm_instance** out) {
    RBM_REQUIRE(s);
    RBM_REQUIRE(params);
    RBM_REQUIRE(out);
    return guarded([&] {
        const auto cover = planted::build_loop_cover(structure_logical_graph(*s));
        *out = new rbm_instance{planted::generate_instance(cover, gen_params(params))};
        return RBM_OK;
    });
}

rbm_status rbm_generate_on_graph(const rbm_graph* g, const rbm_generator_params* params, rbm_instance** out) {
    RBM_REQUIRE(g);
    RBM_REQUIRE(params);
    RBM_REQUIRE(out);
    return guarded([&] {
        const auto cover = planted::build_loop_cover(embedding::whole_graph_partition(g->graph).logical_graph);
        *out = new rbm_instance{planted::generate_instance(cover, gen_params(params))};
        return RBM_OK;
    });
}

rbm_status rbm_instance_load(const char* path, rbm_instance** out) {
    RBM_REQUIRE(path);
    RBM_REQUIRE(out);
    return guarded([&] {
        *out = new rbm_instance{planted::instance_from_json(io::read_json_file(path))};
        return RBM_OK;
    });
}

rbm_status rbm_instance_save(const rbm_instance* inst, const char* path, const char* provenance_json) {
    RBM_REQUIRE(inst);
    RBM_REQUIRE(path);
    return guarded([&] {
        save_with_provenance(path, planted::to_json(inst->instance), provenance_json);
        return RBM_OK;
    });
}

rbm_status rbm_instance_to_json(const rbm_instance* inst, char* buf, size_t* len) {
    RBM_REQUIRE(inst);
    return guarded([&] { return copy_out(planted::to_json(inst->instance).dump(), buf, len); });
}

rbm_status rbm_instance_problem(const rbm_instance* inst, rbm_problem** out) {
    RBM_REQUIRE(inst);
    RBM_REQUIRE(out);
    return guarded([&] {
        *out = new_logical(inst->instance.problem);
        return RBM_OK;
    });
}

rbm_status rbm_instance_planted_energy(const rbm_instance* inst, double* energy) {
    RBM_REQUIRE(inst);
    RBM_REQUIRE(energy);
    *energy = inst->instance.planted_energy();
    return RBM_OK;
}

rbm_status rbm_instance_verify(const rbm_instance* inst, uint32_t cap, int* pass, char* buf, size_t* len) {
    RBM_REQUIRE(inst);
    RBM_REQUIRE(pass);
    return guarded([&] {
        const auto rep = planted::verify_planted(inst->instance, cap);
        *pass = rep.pass ? 1 : 0;
        if (len == nullptr) return RBM_OK;
        return copy_out(planted::to_json(rep).dump(), buf, len);
    });
}

void rbm_instance_free(rbm_instance* inst) { delete inst; }

// Samplers

rbm_status rbm_anneal_defaults(rbm_anneal_params* params) {
    RBM_REQUIRE(params);
    const samplers::AnnealParams d;
    *params = {d.num_reads, d.sweeps, d.seed, d.t_hot, d.t_cold};
    return RBM_OK;
}

rbm_status rbm_sample_sa(const rbm_problem* p, const rbm_anneal_params* params, const char* noise_json,
                         rbm_samples** out) {
    RBM_REQUIRE(p);
    RBM_REQUIRE(params);
    RBM_REQUIRE(out);
    return guarded([&] {
        samplers::AnnealParams a{params->num_reads, params->sweeps, params->seed, params->t_hot, params->t_cold};
        std::optional<samplers::NoiseModel> noise;
        if (noise_json != nullptr) noise = samplers::noise_from_json(parse(noise_json, "noise model"));
        const auto* placement = p->placement.empty() ? nullptr : &p->placement;
        *out = new rbm_samples{samplers::sample_sa(p->problem, a, noise ? &*noise : nullptr, placement)};
        return RBM_OK;
    });
}

rbm_status rbm_samples_load(const char* path, const rbm_problem* p, rbm_samples** out) {
    RBM_REQUIRE(path);
    RBM_REQUIRE(p);
    RBM_REQUIRE(out);
    return guarded([&] {
        *out = new rbm_samples{samplers::import_samples(path, p->problem)};
        return RBM_OK;
    });
}

rbm_status rbm_samples_from_json(const char* text, const rbm_problem* p, rbm_samples** out) {
    RBM_REQUIRE(text);
    RBM_REQUIRE(p);
    RBM_REQUIRE(out);
    return guarded([&] {
        *out = new rbm_samples{samplers::samples_from_json(parse(text, "sample set"), p->problem)};
        return RBM_OK;
    });
}

rbm_status rbm_samples_save(const rbm_samples* s, const char* path, const char* provenance_json) {
    RBM_REQUIRE(s);
    RBM_REQUIRE(path);
    return guarded([&] {
        save_with_provenance(path, samplers::to_json(s->set), provenance_json);
        return RBM_OK;
    });
}

rbm_status rbm_samples_to_json(const rbm_samples* s, char* buf, size_t* len) {
    RBM_REQUIRE(s);
    return guarded([&] { return copy_out(samplers::to_json(s->set).dump(), buf, len); });
}

rbm_status rbm_samples_size(const rbm_samples* s, size_t* reads, size_t* variables) {
    RBM_REQUIRE(s);
    if (reads) *reads = s->set.reads.size();
    if (variables) *variables = s->set.reads.empty() ? 0 : s->set.reads.front().size();
    return RBM_OK;
}

rbm_status rbm_samples_read(const rbm_samples* s, size_t index, int8_t* spins, size_t n, double* energy) {
    RBM_REQUIRE(s);
    if (index >= s->set.reads.size())
        return fail(RBM_ERR_INVALID_ARGUMENT, "read index " + std::to_string(index) + " out of range");
    const auto& r = s->set.reads[index];
    if (spins != nullptr) {
        if (n < r.size()) return fail(RBM_ERR_BUFFER_TOO_SMALL, "spin buffer too small");
        std::copy(r.spins().begin(), r.spins().end(), spins);
    }
    if (energy) *energy = s->set.energies[index];
    return RBM_OK;
}

rbm_status rbm_samples_min_energy(const rbm_samples* s, double* energy) {
    RBM_REQUIRE(s);
    RBM_REQUIRE(energy);
    return guarded([&] {
        *energy = s->set.min_energy();
        return RBM_OK;
    });
}

rbm_status rbm_samples_annotate(rbm_samples* s, const char* params_json) {
    RBM_REQUIRE(s);
    RBM_REQUIRE(params_json);
    return guarded([&] {
        const auto extra = parse(params_json, "params");
        if (!extra.is_object()) throw InvalidParameter("params must be a JSON object");
        s->set.params.update(extra);
        return RBM_OK;
    });
}

void rbm_samples_free(rbm_samples* s) { delete s; }

rbm_status rbm_solve_exact(const rbm_problem* p, uint32_t cap, double* min_energy, char* buf, size_t* len) {
    RBM_REQUIRE(p);
    return guarded([&] {
        const auto res = samplers::solve_exact(p->problem, cap);
        if (min_energy) *min_energy = res.min_energy;
        if (len == nullptr) return RBM_OK;
        return copy_out(samplers::to_json(res).dump(), buf, len);
    });
}

// Decoding

rbm_status rbm_decode_rbm(const rbm_samples* s, const rbm_structure* structure, const rbm_problem* logical, char* buf,
                          size_t* len) {
    RBM_REQUIRE(s);
    RBM_REQUIRE(structure);
    RBM_REQUIRE(logical);
    return guarded([&] {
        const auto* part = replica_partition(*structure);
        if (part == nullptr) throw InvalidParameter("rbm decoding needs a partition or combined structure");
        return copy_out(decode::to_json(decode::decode_rbm(s->set, *part, logical->problem)).dump(), buf, len);
    });
}

rbm_status rbm_decode_qac(const rbm_samples* s, const rbm_problem* logical, int include_penalty, char* buf,
                          size_t* len) {
    RBM_REQUIRE(s);
    RBM_REQUIRE(logical);
    return guarded([&] {
        const auto res = decode::decode_majority(s->set, logical->problem, include_penalty != 0);
        return copy_out(decode::to_json(res.best).dump(), buf, len);
    });
}

rbm_status rbm_decode_sqa(const rbm_samples* const* sets, size_t count, const rbm_problem* logical, char* buf,
                          size_t* len) {
    RBM_REQUIRE(sets);
    RBM_REQUIRE(logical);
    return guarded([&] {
        std::vector<samplers::SampleSet> v;
        for (size_t i = 0; i < count; ++i) {
            if (sets[i] == nullptr) throw InvalidParameter("sample set " + std::to_string(i) + " is NULL");
            v.push_back(sets[i]->set);
        }
        return copy_out(decode::to_json(decode::decode_sqa_repeat(v, logical->problem)).dump(), buf, len);
    });
}

// Experiments

rbm_status rbm_experiment_run(const char* config_json, const char* study, const char* out_dir, const char* formats,
                              const char* provenance_json) {
    RBM_REQUIRE(config_json);
    RBM_REQUIRE(out_dir);
    return guarded([&] {
        auto j = parse(config_json, "experiment config");
        if (study != nullptr) {
            const std::string name = study;
            if (name != "qac_comparison" && name != "scaling")
                throw InvalidParameter("unknown study '" + name + "' (expected qac_comparison or scaling)");
            j["study"] = name;
        }
        const auto cfg = experiments::config_from_json(j);
        const auto rep = experiments::run_study(cfg);
        const json prov = provenance_json ? parse(provenance_json, "provenance") : json(nullptr);
        experiments::emit_report(rep, out_dir, split_formats(formats), prov);
        return RBM_OK;
    });
}

rbm_status rbm_report_render(const char* report_path, const char* out_dir, const char* formats) {
    RBM_REQUIRE(report_path);
    RBM_REQUIRE(out_dir);
    return guarded([&] {
        const auto j = io::read_json_file(report_path);
        const auto rep = experiments::report_from_json(j);
        experiments::emit_report(rep, out_dir, split_formats(formats), j.value("provenance", json(nullptr)));
        return RBM_OK;
    });
}

rbm_status rbm_report_from_decoded(const char* const* decoded_paths, const char* const* instance_paths, size_t count,
                                   uint32_t k, const char* out_dir, const char* formats, const char* provenance_json) {
    RBM_REQUIRE(decoded_paths);
    RBM_REQUIRE(instance_paths);
    RBM_REQUIRE(out_dir);
    return guarded([&] {
        std::vector<experiments::InstanceRecord> records;
        std::optional<planted::GeneratorParams> params;
        std::map<std::string, std::uint32_t> next_instance;
        bool qac = false;
        for (size_t i = 0; i < count; ++i) {
            const auto d = decode::solution_from_json(io::read_json_file(decoded_paths[i]));
            const auto inst = planted::instance_from_json(io::read_json_file(instance_paths[i]));
            if (d.assignment.size() != inst.problem.variable_count())
                throw InvalidParameter(std::string(decoded_paths[i]) + " does not decode " + instance_paths[i]);
            if (!params) params = inst.params;
            qac = qac || d.method == "qac";
            experiments::InstanceRecord r;
            r.instance = next_instance[d.method]++;
            r.method = d.method;
            r.best_energy = ising::energy(inst.problem, d.assignment);
            r.planted_energy = inst.planted_energy();
            r.variables = inst.problem.variable_count();
            r.couplers = static_cast<std::uint32_t>(inst.problem.quadratic().size());
            records.push_back(r);
        }
        if (!params) throw InvalidParameter("report needs at least one decoded result");
        const auto rep = experiments::single_cell_report(
            qac ? experiments::Study::qac_comparison : experiments::Study::scaling, k,
            {params->large, params->small}, params->beta, std::move(records));
        const json prov = provenance_json ? parse(provenance_json, "provenance") : json(nullptr);
        experiments::emit_report(rep, out_dir, split_formats(formats), prov);
        return RBM_OK;
    });
}

}  // extern "C"
