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

#include "rbm/decode.hpp"

#include <unordered_map>

#include "rbm/common.hpp"
#include "rbm/io.hpp"

namespace rbm::decode {

using ising::IsingProblem;
using ising::Spin;
using ising::SpinConfig;
using samplers::SampleSet;

DecodedSolution decode_rbm(const SampleSet& samples, std::uint32_t replicas, const IsingProblem& p) {
    const std::size_t n = p.variable_count();
    if (replicas == 0) throw InvalidParameter("replica count must be >= 1");
    if (samples.reads.empty()) throw ContractViolation("sample set is empty");
    DecodedSolution best;
    best.method = "rbm";
    bool found = false;
    std::vector<Spin> sub(n);
    for (std::size_t r = 0; r < samples.reads.size(); ++r) {
        const auto spins = samples.reads[r].spins();
        if (spins.size() != n * replicas)
            throw InvalidParameter("read " + std::to_string(r) + " has " + std::to_string(spins.size()) +
                                   " spins, expected " + std::to_string(replicas) + " x " + std::to_string(n));
        for (std::uint32_t k = 0; k < replicas; ++k) {
            const auto piece = spins.subspan(k * n, n);
            const double e = ising::energy(p, piece);
            if (found && !(e < best.energy)) continue;
            found = true;
            best.energy = e;
            best.read = r;
            best.replica = k;
            sub.assign(piece.begin(), piece.end());
        }
    }
    best.assignment = SpinConfig(sub);
    return best;
}

DecodedSolution decode_rbm(const SampleSet& samples, const embedding::ReplicaPartition& partition,
                           const IsingProblem& p) {
    return decode_rbm(samples, partition.replica_count(), p);
}

QacProblem build_qac_problem(const IsingProblem& logical, const embedding::QacEncoding& enc, double alpha) {
    if (alpha > 0.0) throw InvalidParameter("penalty weight must be <= 0");
    const std::uint32_t n = logical.variable_count();
    if (n > enc.units.size())
        throw EmbeddingInfeasible("encoding has " + std::to_string(enc.units.size()) + " logical qubits, problem needs " +
                                  std::to_string(n));
    QacProblem out;
    out.logical_n = n;
    out.alpha = alpha;
    std::unordered_map<std::uint32_t, std::uint32_t> var_of;
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto& u = enc.units[i];
        for (std::uint32_t t = 0; t < 3; ++t) {
            out.placement.push_back(u.problem[t]);
            var_of[u.problem[t].value] = 4 * i + t;
        }
        out.placement.push_back(u.penalty);
    }

    ising::ProblemBuilder b(4 * n);
    for (const auto& [i, h] : logical.linear())
        for (std::uint32_t t = 0; t < 3; ++t) b.add_linear(4 * i + t, h);
    for (const auto& [e, j] : logical.quadratic()) {
        auto it = enc.logical_edges.find(e);
        if (it == enc.logical_edges.end() || it->second.empty())
            throw EmbeddingInfeasible("encoding has no coupler for logical edge (" + std::to_string(e.first) + "," +
                                      std::to_string(e.second) + ")");
        const double share = 3.0 * j / static_cast<double>(it->second.size());
        for (const auto& c : it->second) b.add_quadratic(var_of.at(c.a.value), var_of.at(c.b.value), share);
    }
    if (alpha != 0.0)
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t t = 0; t < 3; ++t) b.add_quadratic(4 * i + t, 4 * i + 3, alpha);
    out.problem = b.build();
    return out;
}

MajorityResult decode_majority(const SampleSet& samples, const IsingProblem& logical, bool include_penalty) {
    const std::size_t n = logical.variable_count();
    if (samples.reads.empty()) throw ContractViolation("sample set is empty");
    MajorityResult out;
    std::vector<std::vector<std::uint8_t>> votes(samples.reads.size());
    for (std::size_t r = 0; r < samples.reads.size(); ++r) {
        const auto s = samples.reads[r].spins();
        if (s.size() != 4 * n)
            throw InvalidParameter("read " + std::to_string(r) + " has " + std::to_string(s.size()) +
                                   " spins, QAC layout needs " + std::to_string(4 * n));
        std::vector<Spin> x(n);
        votes[r].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            int sum = s[4 * i] + s[4 * i + 1] + s[4 * i + 2];
            if (include_penalty) sum += s[4 * i + 3];
            x[i] = sum > 0 ? 1 : sum < 0 ? -1 : s[4 * i];
            votes[r][i] = static_cast<std::uint8_t>((s[4 * i] > 0) + (s[4 * i + 1] > 0) + (s[4 * i + 2] > 0));
        }
        out.logical_reads.emplace_back(std::move(x));
        out.energies.push_back(ising::energy(logical, out.logical_reads.back()));
    }
    std::size_t b = 0;
    for (std::size_t r = 1; r < out.energies.size(); ++r)
        if (out.energies[r] < out.energies[b]) b = r;
    out.best.method = "qac";
    out.best.assignment = out.logical_reads[b];
    out.best.energy = out.energies[b];
    out.best.read = b;
    out.best.votes = votes[b];
    return out;
}

DecodedSolution decode_sqa_repeat(const std::vector<SampleSet>& sets, const IsingProblem& p) {
    if (sets.empty()) throw InvalidParameter("decode_sqa_repeat needs at least one sample set");
    DecodedSolution best;
    best.method = "sqa";
    bool found = false;
    for (std::uint32_t k = 0; k < sets.size(); ++k) {
        if (sets[k].reads.empty()) throw ContractViolation("sample set " + std::to_string(k) + " is empty");
        for (std::size_t r = 0; r < sets[k].reads.size(); ++r) {
            const auto& read = sets[k].reads[r];
            if (read.size() != p.variable_count())
                throw InvalidParameter("sample set " + std::to_string(k) + " read " + std::to_string(r) + " has " +
                                       std::to_string(read.size()) + " spins, problem has " +
                                       std::to_string(p.variable_count()));
            const double e = ising::energy(p, read);
            if (found && !(e < best.energy)) continue;
            found = true;
            best.energy = e;
            best.read = r;
            best.replica = k;
            best.assignment = read;
        }
    }
    return best;
}

nlohmann::json to_json(const DecodedSolution& d) {
    nlohmann::json prov = {{"read", d.read}};
    if (d.method == "qac")
        prov["votes"] = d.votes;
    else
        prov[d.method == "sqa" ? "set" : "replica"] = d.replica;
    return {{"method", d.method}, {"assignment", ising::to_json(d.assignment)}, {"energy", d.energy}, {"provenance", prov}};
}

DecodedSolution solution_from_json(const nlohmann::json& j) {
    DecodedSolution d;
    d.method = io::required<std::string>(j, "method");
    d.assignment = ising::spins_from_json(io::required<nlohmann::json>(j, "assignment"));
    d.energy = io::required<double>(j, "energy");
    const auto prov = io::required<nlohmann::json>(j, "provenance");
    d.read = io::required<std::size_t>(prov, "read");
    if (prov.contains("votes")) d.votes = prov.at("votes").get<std::vector<std::uint8_t>>();
    if (prov.contains("replica")) d.replica = prov.at("replica").get<std::uint32_t>();
    if (prov.contains("set")) d.replica = prov.at("set").get<std::uint32_t>();
    return d;
}

nlohmann::json to_json(const QacProblem& q) {
    nlohmann::json j = ising::to_json(q.problem);
    std::vector<std::uint32_t> placement;
    for (auto id : q.placement) placement.push_back(id.value);
    j["placement"] = placement;
    j["logical_n"] = q.logical_n;
    j["alpha"] = q.alpha;
    return j;
}

QacProblem qac_problem_from_json(const nlohmann::json& j) {
    QacProblem q;
    q.problem = ising::problem_from_json(j);
    for (auto v : io::required<std::vector<std::uint32_t>>(j, "placement")) q.placement.push_back(topology::QubitId{v});
    q.logical_n = io::required<std::uint32_t>(j, "logical_n");
    q.alpha = io::required<double>(j, "alpha");
    if (q.problem.variable_count() != 4 * q.logical_n || q.placement.size() != q.problem.variable_count())
        throw FormatError("QAC problem layout does not match 4 x logical_n");
    return q;
}

}  // namespace rbm::decode
