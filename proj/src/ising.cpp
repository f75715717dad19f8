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

#include "rbm/ising.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "rbm/common.hpp"
#include "rbm/embedding.hpp"
#include "rbm/io.hpp"

namespace rbm::ising {

SpinConfig::SpinConfig(std::vector<Spin> spins) : spins_(std::move(spins)) {
    for (std::size_t i = 0; i < spins_.size(); ++i)
        if (spins_[i] != 1 && spins_[i] != -1)
            throw InvalidParameter("spin " + std::to_string(i) + " is " + std::to_string(spins_[i]) +
                                   ", expected -1 or +1");
}

SpinConfig SpinConfig::filled(std::size_t n, Spin value) {
    return SpinConfig(std::vector<Spin>(n, value));
}

SpinConfig SpinConfig::flipped(std::size_t i) const {
    SpinConfig out = *this;
    out.spins_.at(i) = static_cast<Spin>(-out.spins_[i]);
    return out;
}

IsingProblem::IsingProblem(std::uint32_t n, LinearTerms h, QuadraticTerms j)
    : n_(n), h_(std::move(h)), j_(std::move(j)) {
    for (const auto& [i, v] : h_) {
        if (i >= n_) throw InvalidParameter("linear term index " + std::to_string(i) + " >= n");
        if (v == 0.0) throw InvalidParameter("stored zero linear coefficient at " + std::to_string(i));
    }
    for (const auto& [e, v] : j_) {
        if (e.first >= e.second)
            throw InvalidParameter("quadratic key (" + std::to_string(e.first) + "," +
                                   std::to_string(e.second) + ") is not a canonical pair");
        if (e.second >= n_) throw InvalidParameter("quadratic term index " + std::to_string(e.second) + " >= n");
        if (v == 0.0) throw InvalidParameter("stored zero quadratic coefficient");
    }
}

double IsingProblem::linear(std::uint32_t i) const {
    auto it = h_.find(i);
    return it == h_.end() ? 0.0 : it->second;
}

double IsingProblem::quadratic(std::uint32_t a, std::uint32_t b) const {
    auto it = j_.find(canonical_pair(a, b));
    return it == j_.end() ? 0.0 : it->second;
}

SimpleGraph IsingProblem::ising_graph() const {
    std::vector<VertexPair> edges;
    edges.reserve(j_.size());
    for (const auto& [e, v] : j_) edges.push_back(e);
    return SimpleGraph(n_, std::move(edges));
}

void ProblemBuilder::add_linear(std::uint32_t i, double v) {
    if (i >= n_) throw InvalidParameter("linear term index " + std::to_string(i) + " >= n");
    h_[i] += v;
}

void ProblemBuilder::add_quadratic(std::uint32_t a, std::uint32_t b, double v) {
    if (a == b) throw InvalidParameter("quadratic self-pair on " + std::to_string(a));
    if (a >= n_ || b >= n_) throw InvalidParameter("quadratic term index out of range");
    j_[canonical_pair(a, b)] += v;
}

IsingProblem ProblemBuilder::build() const {
    LinearTerms h;
    QuadraticTerms j;
    for (const auto& [i, v] : h_)
        if (v != 0.0) h.emplace_hint(h.end(), i, v);
    for (const auto& [e, v] : j_)
        if (v != 0.0) j.emplace_hint(j.end(), e, v);
    return IsingProblem(n_, std::move(h), std::move(j));
}

double energy(const IsingProblem& p, std::span<const Spin> s) {
    if (s.size() != p.variable_count())
        throw InvalidParameter("spin configuration has " + std::to_string(s.size()) + " entries, problem has " +
                               std::to_string(p.variable_count()) + " variables");
    double e = 0.0;
    for (const auto& [pair, v] : p.quadratic()) e += v * s[pair.first] * s[pair.second];
    for (const auto& [i, v] : p.linear()) e += v * s[i];
    return e;
}

double energy(const IsingProblem& p, const SpinConfig& s) { return energy(p, s.spins()); }

IsingProblem gauge_transform(const IsingProblem& p, const SpinConfig& t) {
    if (t.size() != p.variable_count()) throw InvalidParameter("gauge length mismatch");
    LinearTerms h;
    QuadraticTerms j;
    for (const auto& [i, v] : p.linear()) h.emplace_hint(h.end(), i, v * t[i]);
    for (const auto& [e, v] : p.quadratic()) j.emplace_hint(j.end(), e, v * t[e.first] * t[e.second]);
    return IsingProblem(p.variable_count(), std::move(h), std::move(j));
}

SpinConfig gauge_spins(const SpinConfig& s, const SpinConfig& t) {
    if (s.size() != t.size()) throw InvalidParameter("gauge length mismatch");
    std::vector<Spin> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = static_cast<Spin>(s[i] * t[i]);
    return SpinConfig(std::move(out));
}

ReplicatedProblem replicate(const IsingProblem& p, const embedding::ReplicaPartition& partition,
                            const topology::HardwareGraph* host) {
    const std::uint32_t n = p.variable_count();
    const std::uint32_t k = partition.replica_count();
    const auto& lg = partition.logical_graph;
    if (n > lg.vertex_count())
        throw EmbeddingInfeasible("replica regions hold " + std::to_string(lg.vertex_count()) +
                                  " qubits, problem needs " + std::to_string(n) + " (replica 0 too small)");
    for (const auto& [e, v] : p.quadratic()) {
        if (!lg.has_edge(e.first, e.second))
            throw EmbeddingInfeasible("replica 0 lacks logical coupler (" + std::to_string(e.first) + "," +
                                      std::to_string(e.second) + ")");
        if (host == nullptr) continue;
        for (std::uint32_t r = 0; r < k; ++r) {
            const auto qa = partition.iso_maps[r][e.first];
            const auto qb = partition.iso_maps[r][e.second];
            if (!host->has_edge(qa, qb))
                throw EmbeddingInfeasible("replica " + std::to_string(r) + " is missing coupler (" +
                                          std::to_string(qa.value) + "," + std::to_string(qb.value) +
                                          ") for logical edge (" + std::to_string(e.first) + "," +
                                          std::to_string(e.second) + ")");
        }
    }
    if (host != nullptr)
        for (std::uint32_t r = 0; r < k; ++r)
            for (std::uint32_t i = 0; i < n; ++i)
                if (!host->is_active(partition.iso_maps[r][i]))
                    throw EmbeddingInfeasible("replica " + std::to_string(r) + " maps variable " +
                                              std::to_string(i) + " to inactive qubit " +
                                              std::to_string(partition.iso_maps[r][i].value));

    ReplicatedProblem out;
    out.replicas = k;
    out.logical_n = n;
    out.placement.reserve(static_cast<std::size_t>(k) * n);
    LinearTerms h;
    QuadraticTerms j;
    for (std::uint32_t r = 0; r < k; ++r) {
        for (std::uint32_t i = 0; i < n; ++i) out.placement.push_back(partition.iso_maps[r][i]);
        const std::uint32_t base = r * n;
        for (const auto& [i, v] : p.linear()) h.emplace_hint(h.end(), base + i, v);
        for (const auto& [e, v] : p.quadratic())
            j.emplace_hint(j.end(), VertexPair{base + e.first, base + e.second}, v);
    }
    out.problem = IsingProblem(k * n, std::move(h), std::move(j));
    return out;
}

IsingProblem replica_problem(const ReplicatedProblem& rp, std::uint32_t replica) {
    if (replica >= rp.replicas) throw InvalidParameter("replica index out of range");
    const std::uint32_t lo = replica * rp.logical_n;
    const std::uint32_t hi = lo + rp.logical_n;
    LinearTerms h;
    QuadraticTerms j;
    for (const auto& [i, v] : rp.problem.linear())
        if (i >= lo && i < hi) h.emplace(i - lo, v);
    for (const auto& [e, v] : rp.problem.quadratic())
        if (e.first >= lo && e.second < hi) j.emplace(VertexPair{e.first - lo, e.second - lo}, v);
    return IsingProblem(rp.logical_n, std::move(h), std::move(j));
}

nlohmann::json to_json(const IsingProblem& p) {
    nlohmann::json h = nlohmann::json::object();
    for (const auto& [i, v] : p.linear()) h[std::to_string(i)] = v;
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [e, v] : p.quadratic()) j[std::to_string(e.first) + "," + std::to_string(e.second)] = v;
    return {{"n", p.variable_count()}, {"h", std::move(h)}, {"J", std::move(j)}};
}

namespace {

std::uint32_t parse_index(std::string_view s, const char* what) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw FormatError(std::string("bad ") + what + " index '" + std::string(s) + "'");
    return v;
}

}  // namespace

IsingProblem problem_from_json(const nlohmann::json& j) {
    const auto n = io::required<std::uint32_t>(j, "n");
    ProblemBuilder b(n);
    try {
        if (j.contains("h")) {
            if (!j.at("h").is_object()) throw FormatError("'h' must be an object");
            for (const auto& [key, v] : j.at("h").items()) {
                if (!v.is_number()) throw FormatError("linear coefficient for '" + key + "' is not a number");
                b.add_linear(parse_index(key, "linear"), v.get<double>());
            }
        }
        if (j.contains("J")) {
            if (!j.at("J").is_object()) throw FormatError("'J' must be an object");
            for (const auto& [key, v] : j.at("J").items()) {
                const auto comma = key.find(',');
                if (comma == std::string::npos) throw FormatError("quadratic key '" + key + "' is not 'i,j'");
                if (!v.is_number()) throw FormatError("quadratic coefficient for '" + key + "' is not a number");
                b.add_quadratic(parse_index(std::string_view(key).substr(0, comma), "quadratic"),
                                parse_index(std::string_view(key).substr(comma + 1), "quadratic"),
                                v.get<double>());
            }
        }
    } catch (const InvalidParameter& e) {
        throw FormatError(std::string("invalid problem: ") + e.what());
    }
    return b.build();
}

nlohmann::json to_json(const SpinConfig& s) {
    auto a = nlohmann::json::array();
    for (auto v : s.spins()) a.push_back(static_cast<int>(v));
    return a;
}

SpinConfig spins_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw FormatError("spin configuration must be an array");
    std::vector<Spin> v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer() || (j[i].get<int>() != 1 && j[i].get<int>() != -1))
            throw FormatError("entry " + std::to_string(i) + " is " + j[i].dump() + ", expected -1 or +1");
        v.push_back(static_cast<Spin>(j[i].get<int>()));
    }
    return SpinConfig(std::move(v));
}

std::string to_text(const IsingProblem& p) {
    std::string out = "# n=" + std::to_string(p.variable_count()) + "\n";
    char buf[64];
    for (const auto& [i, v] : p.linear()) {
        std::snprintf(buf, sizeof buf, "%u %u %.17g\n", i, i, v);
        out += buf;
    }
    for (const auto& [e, v] : p.quadratic()) {
        std::snprintf(buf, sizeof buf, "%u %u %.17g\n", e.first, e.second, v);
        out += buf;
    }
    return out;
}

IsingProblem problem_from_text(const std::string& text) {
    struct Triple {
        std::uint32_t i, j;
        double v;
    };
    std::vector<Triple> triples;
    std::int64_t declared_n = -1;
    std::uint32_t max_index = 0;
    bool any = false;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line[0] == '#') {
            if (auto pos = line.find("n="); pos != std::string::npos) declared_n = std::stoll(line.substr(pos + 2));
            continue;
        }
        std::istringstream ls(line);
        long long i = -1, j = -1;
        double v = 0.0;
        if (!(ls >> i >> j >> v) || i < 0 || j < 0)
            throw FormatError("line " + std::to_string(line_no) + ": expected 'i j value'");
        std::string rest;
        if (ls >> rest) throw FormatError("line " + std::to_string(line_no) + ": trailing content");
        triples.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), v});
        max_index = std::max({max_index, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
        any = true;
    }
    const std::uint32_t n = declared_n >= 0 ? static_cast<std::uint32_t>(declared_n) : (any ? max_index + 1 : 0);
    ProblemBuilder b(n);
    try {
        for (const auto& t : triples) {
            if (t.i == t.j) b.add_linear(t.i, t.v);
            else b.add_quadratic(t.i, t.j, t.v);
        }
    } catch (const InvalidParameter& e) {
        throw FormatError(std::string("invalid problem: ") + e.what());
    }
    return b.build();
}

}  // namespace rbm::ising
