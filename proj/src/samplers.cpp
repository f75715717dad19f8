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

#include "rbm/samplers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "rbm/common.hpp"
#include "rbm/io.hpp"

namespace rbm::samplers {

using ising::IsingProblem;
using ising::Spin;
using ising::SpinConfig;

void AnnealParams::validate() const {
    if (num_reads < 1) throw InvalidParameter("num_reads must be >= 1");
    if (sweeps < 1) throw InvalidParameter("sweeps must be >= 1");
    if (!(t_cold > 0.0) || !(t_hot > t_cold))
        throw InvalidParameter("schedule needs t_hot > t_cold > 0");
}

void NoiseModel::validate() const {
    if (!(sigma_h >= 0.0) || !(sigma_J >= 0.0)) throw InvalidParameter("noise sigmas must be >= 0");
    for (const auto& rb : region_bias)
        if (!std::isfinite(rb.delta)) throw InvalidParameter("region bias delta must be finite");
}

IsingProblem perturb(const IsingProblem& p, const NoiseModel& noise, const std::vector<QubitId>* placement) {
    noise.validate();
    const std::uint32_t n = p.variable_count();
    if (placement && placement->size() != n)
        throw InvalidParameter("placement has " + std::to_string(placement->size()) + " entries, problem has " +
                               std::to_string(n) + " variables");
    if (!placement && !noise.region_bias.empty())
        throw InvalidParameter("region_bias needs a hardware placement for the problem variables");
    auto qubit = [&](std::uint32_t v) -> std::uint64_t { return placement ? (*placement)[v].value : v; };

    std::unordered_map<std::uint32_t, double> delta;
    for (const auto& rb : noise.region_bias)
        for (auto q : rb.qubits) delta[q.value] += rb.delta;

    ising::ProblemBuilder b(n);
    for (const auto& [i, v] : p.linear()) b.add_linear(i, v);
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto q = qubit(v);
        if (noise.sigma_h > 0.0) {
            Rng rng(derive_seed(noise.chip_seed, {tag::noise_h, q}));
            b.add_linear(v, noise.sigma_h * rng.normal());
        }
        if (auto it = delta.find(static_cast<std::uint32_t>(q)); it != delta.end()) b.add_linear(v, it->second);
    }
    for (const auto& [e, val] : p.quadratic()) {
        double scale = 1.0;
        if (noise.sigma_J > 0.0) {
            const auto qa = qubit(e.first), qb = qubit(e.second);
            Rng rng(derive_seed(noise.chip_seed, {tag::noise_j, std::min(qa, qb), std::max(qa, qb)}));
            scale += noise.sigma_J * rng.normal();
        }
        b.add_quadratic(e.first, e.second, val * scale);
    }
    return b.build();
}

std::size_t SampleSet::best_index() const {
    if (energies.empty()) throw ContractViolation("sample set is empty");
    return static_cast<std::size_t>(std::min_element(energies.begin(), energies.end()) - energies.begin());
}

std::string problem_hash(const IsingProblem& p) { return hex64(fnv1a64(ising::to_json(p).dump())); }

namespace {

// Adjacency in CSR form for the inner Metropolis loop.
struct Dense {
    std::vector<double> h;
    std::vector<std::uint32_t> offset, nbr;
    std::vector<double> w;

    explicit Dense(const IsingProblem& p) : h(p.variable_count(), 0.0), offset(p.variable_count() + 1, 0) {
        for (const auto& [i, v] : p.linear()) h[i] = v;
        for (const auto& [e, v] : p.quadratic()) {
            ++offset[e.first + 1];
            ++offset[e.second + 1];
        }
        for (std::size_t i = 1; i < offset.size(); ++i) offset[i] += offset[i - 1];
        nbr.resize(offset.back());
        w.resize(offset.back());
        auto fill = offset;
        for (const auto& [e, v] : p.quadratic()) {
            nbr[fill[e.first]] = e.second;
            w[fill[e.first]++] = v;
            nbr[fill[e.second]] = e.first;
            w[fill[e.second]++] = v;
        }
    }

    double field(std::uint32_t i, const std::vector<Spin>& s) const {
        double f = h[i];
        for (auto t = offset[i]; t < offset[i + 1]; ++t) f += w[t] * s[nbr[t]];
        return f;
    }
};

}  // namespace

SampleSet sample_sa(const IsingProblem& p, const AnnealParams& params, const NoiseModel* noise,
                    const std::vector<QubitId>* placement) {
    params.validate();
    const std::uint32_t n = p.variable_count();
    if (n == 0) throw InvalidParameter("cannot sample an empty problem");
    if (placement && placement->size() != n) throw InvalidParameter("placement length differs from problem size");
    const Dense dense(noise ? perturb(p, *noise, placement) : p);

    std::vector<double> beta(params.sweeps);
    for (std::uint32_t t = 0; t < params.sweeps; ++t) {
        const double frac = params.sweeps == 1 ? 1.0 : static_cast<double>(t) / (params.sweeps - 1);
        beta[t] = 1.0 / (params.t_hot * std::pow(params.t_cold / params.t_hot, frac));
    }

    std::vector<std::vector<Spin>> states(params.num_reads);
    parallel_for(params.num_reads, [&](std::size_t r) {
        Rng rng(derive_seed(params.seed, {tag::read, r}));
        std::vector<Spin> s(n);
        for (auto& v : s) v = rng.below(2) ? 1 : -1;
        for (double b : beta) {
            for (std::uint32_t i = 0; i < n; ++i) {
                const double de = -2.0 * s[i] * dense.field(i, s);
                if (de <= 0.0 || rng.uniform() < std::exp(-b * de)) s[i] = static_cast<Spin>(-s[i]);
            }
        }
        states[r] = std::move(s);
    });

    SampleSet out;
    out.sampler = "simulated_annealing";
    out.params = to_json(params);
    if (noise) out.params["noise"] = to_json(*noise);
    out.problem_hash = problem_hash(p);
    for (auto& s : states) {
        out.reads.emplace_back(std::move(s));
        out.energies.push_back(ising::energy(p, out.reads.back()));
    }
    return out;
}

ExactResult solve_exact(const IsingProblem& p, std::uint32_t cap, std::size_t max_minimizers) {
    const std::uint32_t n = p.variable_count();
    if (n > cap)
        throw InvalidParameter("exhaustive search refused: n=" + std::to_string(n) + " exceeds the cap of " +
                               std::to_string(cap) + " variables");
    ExactResult res;
    if (n == 0) {
        res.minimizers.push_back(SpinConfig{});
        return res;
    }
    const Dense dense(p);
    std::vector<Spin> s(n, 1);
    double e = ising::energy(p, std::span<const Spin>(s));
    double scale = 1.0;
    for (const auto& [i, v] : p.linear()) scale += std::abs(v);
    for (const auto& [k, v] : p.quadratic()) scale += std::abs(v);
    const double tol = 1e-9 * scale;

    // Incremental energies are only used to shortlist candidates; each one is
    // re-evaluated exactly before it counts.
    double best = e;
    std::vector<std::vector<Spin>> cand{s};
    bool dropped = false;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t g = 1; g < total; ++g) {
        const auto i = static_cast<std::uint32_t>(std::countr_zero(g));
        e -= 2.0 * s[i] * dense.field(i, s);
        s[i] = static_cast<Spin>(-s[i]);
        if (e < best - tol) {
            best = e;
            cand.clear();
            dropped = false;
        }
        if (e <= best + tol) {
            if (cand.size() < max_minimizers + 1) cand.push_back(s);
            else dropped = true;
        }
    }
    std::vector<double> exact(cand.size());
    for (std::size_t c = 0; c < cand.size(); ++c) exact[c] = ising::energy(p, std::span<const Spin>(cand[c]));
    res.min_energy = *std::min_element(exact.begin(), exact.end());
    for (std::size_t c = 0; c < cand.size(); ++c) {
        if (exact[c] != res.min_energy) continue;
        if (res.minimizers.size() == max_minimizers) {
            res.truncated = true;
            break;
        }
        res.minimizers.emplace_back(cand[c]);
    }
    res.truncated = res.truncated || dropped;
    return res;
}

void export_problem(const IsingProblem& p, const std::string& path) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".txt") == 0)
        io::write_text_file(path, ising::to_text(p));
    else
        io::write_json_file(path, ising::to_json(p));
}

IsingProblem import_problem(const std::string& path) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".txt") == 0)
        return ising::problem_from_text(io::read_text_file(path));
    return ising::problem_from_json(io::read_json_file(path));
}

nlohmann::json to_json(const SampleSet& s) {
    auto reads = nlohmann::json::array();
    for (const auto& r : s.reads) reads.push_back(ising::to_json(r));
    return {{"problem_hash", s.problem_hash},
            {"reads", std::move(reads)},
            {"energies", s.energies},
            {"sampler", s.sampler},
            {"params", s.params}};
}

SampleSet samples_from_json(const nlohmann::json& j, const IsingProblem& p) {
    SampleSet s;
    const auto expected = problem_hash(p);
    if (j.contains("problem_hash") && !j.at("problem_hash").is_null()) {
        s.problem_hash = io::required<std::string>(j, "problem_hash");
        if (s.problem_hash != expected)
            throw FormatError("sample file was taken on problem " + s.problem_hash + ", not " + expected);
    } else {
        s.problem_hash = expected;
    }
    s.sampler = j.value("sampler", std::string("external"));
    s.params = j.value("params", nlohmann::json::object());
    const auto reads = io::required<nlohmann::json>(j, "reads");
    if (!reads.is_array()) throw FormatError("reads must be an array");
    std::vector<double> stored;
    if (j.contains("energies")) stored = io::required<std::vector<double>>(j, "energies");
    std::size_t corrected = 0;
    for (std::size_t r = 0; r < reads.size(); ++r) {
        const auto& row = reads[r];
        if (!row.is_array() || row.size() != p.variable_count())
            throw FormatError("read " + std::to_string(r) + " has " + std::to_string(row.is_array() ? row.size() : 0) +
                              " entries, problem has " + std::to_string(p.variable_count()) + " variables");
        std::vector<Spin> v;
        v.reserve(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (!row[i].is_number_integer() || (row[i].get<int>() != 1 && row[i].get<int>() != -1))
                throw FormatError("read " + std::to_string(r) + " entry " + std::to_string(i) + " is " +
                                  row[i].dump() + ", expected -1 or +1");
            v.push_back(static_cast<Spin>(row[i].get<int>()));
        }
        s.reads.emplace_back(std::move(v));
        s.energies.push_back(ising::energy(p, s.reads.back()));
        if (r < stored.size() && stored[r] != s.energies.back()) ++corrected;
    }
    if (!stored.empty() && stored.size() != reads.size())
        log_warning("sample file lists " + std::to_string(stored.size()) + " energies for " +
                    std::to_string(reads.size()) + " reads; energies recomputed");
    if (corrected)
        log_warning(std::to_string(corrected) + " stored energies disagreed with the problem and were recomputed");
    return s;
}

SampleSet import_samples(const std::string& path, const IsingProblem& p) {
    return samples_from_json(io::read_json_file(path), p);
}

nlohmann::json to_json(const AnnealParams& a) {
    return {{"num_reads", a.num_reads}, {"sweeps", a.sweeps}, {"seed", a.seed}, {"t_hot", a.t_hot}, {"t_cold", a.t_cold}};
}

AnnealParams anneal_from_json(const nlohmann::json& j) {
    AnnealParams a;
    a.num_reads = j.value("num_reads", a.num_reads);
    a.sweeps = j.value("sweeps", a.sweeps);
    a.seed = j.value("seed", a.seed);
    a.t_hot = j.value("t_hot", a.t_hot);
    a.t_cold = j.value("t_cold", a.t_cold);
    a.validate();
    return a;
}

nlohmann::json to_json(const NoiseModel& n) {
    auto regions = nlohmann::json::array();
    for (const auto& rb : n.region_bias) {
        std::vector<std::uint32_t> q;
        for (auto id : rb.qubits) q.push_back(id.value);
        regions.push_back({{"qubits", q}, {"delta", rb.delta}});
    }
    return {{"sigma_h", n.sigma_h}, {"sigma_J", n.sigma_J}, {"region_bias", std::move(regions)}, {"chip_seed", n.chip_seed}};
}

NoiseModel noise_from_json(const nlohmann::json& j) {
    NoiseModel n;
    n.sigma_h = j.value("sigma_h", 0.0);
    n.sigma_J = j.value("sigma_J", 0.0);
    n.chip_seed = j.value("chip_seed", std::uint64_t{0});
    if (j.contains("region_bias")) {
        for (const auto& r : j.at("region_bias")) {
            RegionBias rb;
            rb.delta = io::required<double>(r, "delta");
            for (auto q : io::required<std::vector<std::uint32_t>>(r, "qubits")) rb.qubits.push_back(QubitId{q});
            n.region_bias.push_back(std::move(rb));
        }
    }
    n.validate();
    return n;
}

nlohmann::json to_json(const ExactResult& r) {
    auto mins = nlohmann::json::array();
    for (const auto& m : r.minimizers) mins.push_back(ising::to_json(m));
    return {{"min_energy", r.min_energy}, {"minimizers", std::move(mins)}, {"truncated", r.truncated}};
}

}  // namespace rbm::samplers
