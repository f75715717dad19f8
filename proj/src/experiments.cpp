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

#include "rbm/experiments.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "rbm/common.hpp"
#include "rbm/decode.hpp"
#include "rbm/embedding.hpp"
#include "rbm/io.hpp"
#include "rbm/ising.hpp"
#include "rbm/planted.hpp"

namespace rbm::experiments {

using embedding::ReplicaPartition;
using topology::HardwareGraph;

const char* study_name(Study s) { return s == Study::qac_comparison ? "qac_comparison" : "scaling"; }

void ExperimentConfig::validate() const {
    if (k_values.empty() || bias_sets.empty() || beta_grid.empty()) throw InvalidParameter("experiment grids must be nonempty");
    if (instances_per_cell < 1) throw InvalidParameter("instances_per_cell must be >= 1");
    for (const auto& b : bias_sets) planted::GeneratorParams{b.large, b.small, p_large, 1.0, 0}.validate();
    for (double beta : beta_grid) planted::GeneratorParams{10.0, 2.0, p_large, beta, 0}.validate();
    for (auto k : k_values)
        if (k != 1 && k != 2 && k != 4 && k != 8) throw InvalidParameter("k must be one of 1, 2, 4, 8");
    if (alpha > 0.0) throw InvalidParameter("alpha must be <= 0");
    anneal.validate();
    if (noise) samplers::NoiseModel{noise->sigma_h, noise->sigma_J, {}, noise->chip_seed}.validate();
}

ExperimentConfig qac_comparison_defaults() {
    ExperimentConfig c;
    c.study = Study::qac_comparison;
    c.pegasus_m = 8;
    c.k_values = {4};
    c.bias_sets = {{9.0, 2.0}, {10.0, 2.0}, {11.0, 2.0}};
    c.beta_grid = {1.0};
    return c;
}

ExperimentConfig scaling_defaults() { return ExperimentConfig{}; }

double gsp(const std::vector<std::pair<double, double>>& best_and_planted) {
    if (best_and_planted.empty()) throw InvalidParameter("gsp of an empty result list");
    std::size_t hits = 0;
    for (const auto& [best, planted] : best_and_planted)
        if (best == planted) ++hits;
    return static_cast<double>(hits) / static_cast<double>(best_and_planted.size());
}

topology::HardwareGraph load_host(const ExperimentConfig& cfg) {
    if (!cfg.graph_file.empty()) return topology::graph_from_json(io::read_json_file(cfg.graph_file));
    return topology::build_pegasus(cfg.pegasus_m);
}

namespace {

struct Cell {
    std::uint32_t k;
    BiasSet bias;
    double beta;
};

// Physical-region noise for one run.
std::optional<samplers::NoiseModel> region_noise(const ExperimentConfig& cfg, const ReplicaPartition& regions) {
    if (!cfg.noise) return std::nullopt;
    samplers::NoiseModel nm;
    nm.sigma_h = cfg.noise->sigma_h;
    nm.sigma_J = cfg.noise->sigma_J;
    nm.chip_seed = cfg.noise->chip_seed;
    if (!cfg.noise->region_deltas.empty())
        for (std::uint32_t r = 0; r < regions.replica_count(); ++r)
            nm.region_bias.push_back({regions.region(r), cfg.noise->region_deltas[r % cfg.noise->region_deltas.size()]});
    return nm;
}

samplers::AnnealParams call_params(const ExperimentConfig& cfg, std::uint64_t instance_seed, std::uint64_t method,
                                   std::uint64_t call) {
    auto a = cfg.anneal;
    a.seed = derive_seed(instance_seed, {tag::sampler, method, call});
    return a;
}

std::uint64_t instance_seed(const ExperimentConfig& cfg, std::uint32_t cell, std::uint32_t i) {
    return derive_seed(cfg.seed, {tag::cell, cell, tag::instance, i});
}

ExperimentReport assemble(const ExperimentConfig& cfg, Study study, std::vector<std::string> methods,
                          const std::vector<Cell>& cells, std::vector<InstanceRecord> records) {
    ExperimentReport rep;
    rep.study = study;
    rep.methods = std::move(methods);
    rep.config = to_json(cfg);
    std::sort(records.begin(), records.end(), [&](const InstanceRecord& a, const InstanceRecord& b) {
        const auto ma = std::find(rep.methods.begin(), rep.methods.end(), a.method) - rep.methods.begin();
        const auto mb = std::find(rep.methods.begin(), rep.methods.end(), b.method) - rep.methods.begin();
        return std::tie(a.cell, a.instance, ma) < std::tie(b.cell, b.instance, mb);
    });
    for (std::uint32_t c = 0; c < cells.size(); ++c) {
        for (const auto& m : rep.methods) {
            CellSummary s;
            s.cell = c;
            s.k = cells[c].k;
            s.bias = cells[c].bias;
            s.beta = cells[c].beta;
            s.method = m;
            std::vector<std::pair<double, double>> pairs;
            for (const auto& r : records)
                if (r.cell == c && r.method == m) pairs.emplace_back(r.best_energy, r.planted_energy);
            for (const auto& [b, p] : pairs) {
                s.mean_best += b;
                s.mean_planted += p;
            }
            s.instances = static_cast<std::uint32_t>(pairs.size());
            s.mean_best /= static_cast<double>(pairs.size());
            s.mean_planted /= static_cast<double>(pairs.size());
            s.normalized_mean = s.mean_best / s.mean_planted;
            s.gsp = gsp(pairs);
            rep.cells.push_back(s);
        }
    }
    rep.records = std::move(records);
    return rep;
}

// Instance sizes from the hardware runs, keyed by (k, qac).
std::optional<std::pair<double, double>> reference_size(std::uint32_t k, bool qac) {
    if (qac) return k == 4 ? std::optional(std::pair{95.0, 125.0}) : std::nullopt;
    switch (k) {
        case 2: return std::pair{2652.0, 15349.0};
        case 4: return std::pair{1219.0, 6914.0};
        case 8: return std::pair{526.0, 2826.0};
        default: return std::nullopt;
    }
}

void add_sizes(ExperimentReport& rep, bool qac) {
    std::map<std::uint32_t, std::pair<double, double>> sum;
    std::map<std::uint32_t, std::uint32_t> count;
    for (const auto& r : rep.records) {
        if (r.method != rep.methods.front()) continue;
        const auto k = rep.cells[r.cell * rep.methods.size()].k;
        sum[k].first += r.variables;
        sum[k].second += r.couplers;
        ++count[k];
    }
    for (const auto& [k, s] : sum) {
        SizeRow row;
        row.k = k;
        row.qac = qac;
        row.linear = s.first / count[k];
        row.quadratic = s.second / count[k];
        if (auto ref = reference_size(k, qac)) {
            row.reference_linear = ref->first;
            row.reference_quadratic = ref->second;
        }
        rep.sizes.push_back(row);
    }
}

planted::GeneratorParams gen_params(const ExperimentConfig& cfg, const Cell& cell, std::uint64_t seed) {
    return {cell.bias.large, cell.bias.small, cfg.p_large, cell.beta, seed};
}

}  // namespace

ExperimentReport run_qac_comparison(const ExperimentConfig& cfg) { return run_qac_comparison(cfg, load_host(cfg)); }

ExperimentReport run_qac_comparison(const ExperimentConfig& cfg, const HardwareGraph& host) {
    cfg.validate();
    const std::uint32_t k = cfg.k_values.front();
    const auto combined = embedding::combine_qac_rbm(host, k);
    const auto cover = planted::build_loop_cover(combined.logical.logical_graph);
    const auto noise = region_noise(cfg, combined.regions);

    std::vector<Cell> cells;
    for (const auto& bias : cfg.bias_sets)
        for (double beta : cfg.beta_grid) cells.push_back({k, bias, beta});

    const std::size_t jobs = cells.size() * cfg.instances_per_cell;
    std::vector<std::vector<InstanceRecord>> out(jobs);
    parallel_for(jobs, [&](std::size_t job) {
        const auto c = static_cast<std::uint32_t>(job / cfg.instances_per_cell);
        const auto i = static_cast<std::uint32_t>(job % cfg.instances_per_cell);
        const auto seed = instance_seed(cfg, c, i);
        const auto inst = planted::generate_instance(cover, gen_params(cfg, cells[c], seed));
        const double planted_e = inst.planted_energy();
        const auto n = inst.problem.variable_count();
        const auto couplers = static_cast<std::uint32_t>(inst.problem.quadratic().size());
        const auto nm = noise ? &*noise : nullptr;

        const auto rp = ising::replicate(inst.problem, combined.logical, &host);
        const auto rbm_set = samplers::sample_sa(rp.problem, call_params(cfg, seed, 0, 0), nm, &rp.placement);
        const auto rbm = decode::decode_rbm(rbm_set, rp.replicas, inst.problem);
        out[job].push_back({c, i, "rbm", rbm.energy, planted_e, n, couplers, k * cfg.anneal.num_reads});

        for (const auto& [method, alpha, tag_m] :
             {std::tuple{"qac", cfg.alpha, 1}, std::tuple{"sqa", 0.0, 2}}) {
            const auto qp = decode::build_qac_problem(inst.problem, combined.encodings.front(), alpha);
            const auto set = samplers::sample_sa(qp.problem, call_params(cfg, seed, tag_m, 0), nm, &qp.placement);
            const auto dec = decode::decode_majority(set, inst.problem);
            out[job].push_back({c, i, method, dec.best.energy, planted_e, n, couplers, cfg.anneal.num_reads});
        }
    });

    std::vector<InstanceRecord> records;
    for (auto& v : out) records.insert(records.end(), v.begin(), v.end());
    auto rep = assemble(cfg, Study::qac_comparison, {"rbm", "qac", "sqa"}, cells, std::move(records));
    add_sizes(rep, true);
    return rep;
}

ExperimentReport run_scaling(const ExperimentConfig& cfg) { return run_scaling(cfg, load_host(cfg)); }

ExperimentReport run_scaling(const ExperimentConfig& cfg, const HardwareGraph& host) {
    cfg.validate();
    struct Prepared {
        ReplicaPartition partition;
        ReplicaPartition single;
        planted::LoopCover cover;
        std::optional<samplers::NoiseModel> noise;
    };
    std::map<std::uint32_t, Prepared> prep;
    for (auto k : cfg.k_values) {
        if (prep.count(k)) continue;
        Prepared p;
        p.partition = k == 1 ? embedding::whole_graph_partition(host) : embedding::partition_replicas(host, k);
        p.single = ReplicaPartition{p.partition.logical_graph, {p.partition.iso_maps.front()}};
        p.cover = planted::build_loop_cover(p.partition.logical_graph);
        p.noise = region_noise(cfg, p.partition);
        prep.emplace(k, std::move(p));
    }

    std::vector<Cell> cells;
    for (auto k : cfg.k_values)
        for (double beta : cfg.beta_grid)
            for (const auto& bias : cfg.bias_sets) cells.push_back({k, bias, beta});

    const std::size_t jobs = cells.size() * cfg.instances_per_cell;
    std::vector<std::vector<InstanceRecord>> out(jobs);
    parallel_for(jobs, [&](std::size_t job) {
        const auto c = static_cast<std::uint32_t>(job / cfg.instances_per_cell);
        const auto i = static_cast<std::uint32_t>(job % cfg.instances_per_cell);
        const auto& p = prep.at(cells[c].k);
        const auto k = cells[c].k;
        const auto seed = instance_seed(cfg, c, i);
        const auto inst = planted::generate_instance(p.cover, gen_params(cfg, cells[c], seed));
        const double planted_e = inst.planted_energy();
        const auto n = inst.problem.variable_count();
        const auto couplers = static_cast<std::uint32_t>(inst.problem.quadratic().size());
        const auto nm = p.noise ? &*p.noise : nullptr;
        const std::uint32_t subsamples = k * cfg.anneal.num_reads;

        const auto rp = ising::replicate(inst.problem, p.partition, &host);
        const auto rbm_set = samplers::sample_sa(rp.problem, call_params(cfg, seed, 0, 0), nm, &rp.placement);
        const auto rbm = decode::decode_rbm(rbm_set, k, inst.problem);
        out[job].push_back({c, i, "rbm", rbm.energy, planted_e, n, couplers, subsamples});

        const auto r0 = ising::replicate(inst.problem, p.single, &host);
        std::vector<samplers::SampleSet> sets;
        for (std::uint32_t call = 0; call < k; ++call)
            sets.push_back(samplers::sample_sa(r0.problem, call_params(cfg, seed, 2, call), nm, &r0.placement));
        const auto sqa = decode::decode_sqa_repeat(sets, inst.problem);
        out[job].push_back({c, i, "sqa", sqa.energy, planted_e, n, couplers, subsamples});
    });

    std::vector<InstanceRecord> records;
    for (auto& v : out) records.insert(records.end(), v.begin(), v.end());
    auto rep = assemble(cfg, Study::scaling, {"rbm", "sqa"}, cells, std::move(records));
    add_sizes(rep, false);
    return rep;
}

ExperimentReport run_study(const ExperimentConfig& cfg) {
    return cfg.study == Study::qac_comparison ? run_qac_comparison(cfg) : run_scaling(cfg);
}

ExperimentReport single_cell_report(Study study, std::uint32_t k, BiasSet bias, double beta,
                                    std::vector<InstanceRecord> records) {
    if (records.empty()) throw InvalidParameter("report needs at least one decoded result");
    std::vector<std::string> methods;
    for (auto& r : records) {
        r.cell = 0;
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
    }
    ExperimentConfig cfg;
    cfg.study = study;
    cfg.k_values = {k};
    cfg.bias_sets = {bias};
    cfg.beta_grid = {beta};
    auto rep = assemble(cfg, study, methods, {Cell{k, bias, beta}}, std::move(records));
    add_sizes(rep, study == Study::qac_comparison);
    return rep;
}

nlohmann::json to_json(const ExperimentConfig& c) {
    auto bias = nlohmann::json::array();
    for (const auto& b : c.bias_sets) bias.push_back({b.large, b.small});
    nlohmann::json j = {{"study", study_name(c.study)},
                        {"k_values", c.k_values},
                        {"bias_sets", std::move(bias)},
                        {"p_large", c.p_large},
                        {"beta_grid", c.beta_grid},
                        {"instances_per_cell", c.instances_per_cell},
                        {"anneal",
                         {{"num_reads", c.anneal.num_reads},
                          {"sweeps", c.anneal.sweeps},
                          {"t_hot", c.anneal.t_hot},
                          {"t_cold", c.anneal.t_cold}}},
                        {"alpha", c.alpha},
                        {"seed", c.seed}};
    if (c.graph_file.empty())
        j["graph"] = {{"family", "pegasus"}, {"m", c.pegasus_m}};
    else
        j["graph_file"] = c.graph_file;
    if (c.noise)
        j["noise"] = {{"sigma_h", c.noise->sigma_h},
                      {"sigma_J", c.noise->sigma_J},
                      {"region_deltas", c.noise->region_deltas},
                      {"chip_seed", c.noise->chip_seed}};
    else
        j["noise"] = nullptr;
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw FormatError("experiment config must be a JSON object");
    const auto study = io::required<std::string>(j, "study");
    ExperimentConfig c;
    if (study == "qac_comparison" || study == "qac")
        c = qac_comparison_defaults();
    else if (study == "scaling")
        c = scaling_defaults();
    else
        throw FormatError("unknown study '" + study + "'");
    if (j.contains("graph")) {
        const auto& g = j.at("graph");
        if (g.value("family", std::string("pegasus")) != "pegasus")
            throw FormatError("experiment graphs must be pegasus (use graph_file for others)");
        c.pegasus_m = io::required<std::uint32_t>(g, "m");
    }
    if (j.contains("graph_file")) c.graph_file = io::required<std::string>(j, "graph_file");
    if (j.contains("k_values")) c.k_values = io::required<std::vector<std::uint32_t>>(j, "k_values");
    if (j.contains("bias_sets")) {
        c.bias_sets.clear();
        for (const auto& b : j.at("bias_sets")) {
            const auto v = b.get<std::vector<double>>();
            if (v.size() != 2) throw FormatError("bias sets are [large, small] pairs");
            c.bias_sets.push_back({v[0], v[1]});
        }
    }
    c.p_large = j.value("p_large", c.p_large);
    if (j.contains("beta_grid")) c.beta_grid = io::required<std::vector<double>>(j, "beta_grid");
    c.instances_per_cell = j.value("instances_per_cell", c.instances_per_cell);
    if (j.contains("anneal")) c.anneal = samplers::anneal_from_json(j.at("anneal"));
    if (j.contains("noise") && !j.at("noise").is_null()) {
        const auto& n = j.at("noise");
        NoiseConfig nc;
        nc.sigma_h = n.value("sigma_h", 0.0);
        nc.sigma_J = n.value("sigma_J", 0.0);
        nc.chip_seed = n.value("chip_seed", std::uint64_t{0});
        if (n.contains("region_deltas")) nc.region_deltas = n.at("region_deltas").get<std::vector<double>>();
        c.noise = nc;
    }
    c.alpha = j.value("alpha", c.alpha);
    c.seed = j.value("seed", c.seed);
    c.validate();
    return c;
}

nlohmann::json to_json(const ExperimentReport& r) {
    auto cells = nlohmann::json::array();
    for (const auto& s : r.cells)
        cells.push_back({{"cell", s.cell},
                         {"k", s.k},
                         {"bias", {s.bias.large, s.bias.small}},
                         {"beta", s.beta},
                         {"method", s.method},
                         {"mean_best", s.mean_best},
                         {"mean_planted", s.mean_planted},
                         {"normalized_mean", s.normalized_mean},
                         {"gsp", s.gsp},
                         {"instances", s.instances}});
    auto records = nlohmann::json::array();
    for (const auto& x : r.records)
        records.push_back({{"cell", x.cell},
                           {"instance", x.instance},
                           {"method", x.method},
                           {"best_energy", x.best_energy},
                           {"planted_energy", x.planted_energy},
                           {"variables", x.variables},
                           {"couplers", x.couplers},
                           {"subsamples", x.subsamples}});
    auto sizes = nlohmann::json::array();
    for (const auto& s : r.sizes) {
        auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
        sizes.push_back({{"k", s.k},
                         {"qac", s.qac},
                         {"linear", s.linear},
                         {"quadratic", s.quadratic},
                         {"reference_linear", opt(s.reference_linear)},
                         {"reference_quadratic", opt(s.reference_quadratic)}});
    }
    return {{"study", study_name(r.study)}, {"methods", r.methods}, {"cells", std::move(cells)},
            {"records", std::move(records)}, {"sizes", std::move(sizes)}, {"config", r.config}};
}

ExperimentReport report_from_json(const nlohmann::json& j) {
    ExperimentReport r;
    const auto study = io::required<std::string>(j, "study");
    if (study == "qac_comparison")
        r.study = Study::qac_comparison;
    else if (study == "scaling")
        r.study = Study::scaling;
    else
        throw FormatError("unknown study '" + study + "'");
    r.methods = io::required<std::vector<std::string>>(j, "methods");
    for (const auto& s : io::required<nlohmann::json>(j, "cells")) {
        CellSummary c;
        c.cell = io::required<std::uint32_t>(s, "cell");
        c.k = io::required<std::uint32_t>(s, "k");
        const auto bias = io::required<std::vector<double>>(s, "bias");
        if (bias.size() != 2) throw FormatError("bias must be [large, small]");
        c.bias = {bias[0], bias[1]};
        c.beta = io::required<double>(s, "beta");
        c.method = io::required<std::string>(s, "method");
        c.mean_best = io::required<double>(s, "mean_best");
        c.mean_planted = io::required<double>(s, "mean_planted");
        c.normalized_mean = io::required<double>(s, "normalized_mean");
        c.gsp = io::required<double>(s, "gsp");
        c.instances = io::required<std::uint32_t>(s, "instances");
        r.cells.push_back(c);
    }
    for (const auto& x : io::required<nlohmann::json>(j, "records")) {
        InstanceRecord rec;
        rec.cell = io::required<std::uint32_t>(x, "cell");
        rec.instance = io::required<std::uint32_t>(x, "instance");
        rec.method = io::required<std::string>(x, "method");
        rec.best_energy = io::required<double>(x, "best_energy");
        rec.planted_energy = io::required<double>(x, "planted_energy");
        rec.variables = io::required<std::uint32_t>(x, "variables");
        rec.couplers = io::required<std::uint32_t>(x, "couplers");
        rec.subsamples = io::required<std::uint32_t>(x, "subsamples");
        r.records.push_back(rec);
    }
    if (j.contains("sizes")) {
        for (const auto& s : j.at("sizes")) {
            SizeRow row;
            row.k = io::required<std::uint32_t>(s, "k");
            row.qac = io::required<bool>(s, "qac");
            row.linear = io::required<double>(s, "linear");
            row.quadratic = io::required<double>(s, "quadratic");
            if (s.contains("reference_linear") && !s.at("reference_linear").is_null())
                row.reference_linear = s.at("reference_linear").get<double>();
            if (s.contains("reference_quadratic") && !s.at("reference_quadratic").is_null())
                row.reference_quadratic = s.at("reference_quadratic").get<double>();
            r.sizes.push_back(row);
        }
    }
    r.config = j.value("config", nlohmann::json::object());
    return r;
}

}  // namespace rbm::experiments
