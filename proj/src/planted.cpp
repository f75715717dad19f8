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

#include "rbm/planted.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

#include "rbm/common.hpp"
#include "rbm/io.hpp"
#include "rbm/samplers.hpp"

namespace rbm::planted {

namespace {

constexpr std::uint32_t kUnreached = ~0u;

// BFS over sorted adjacency; parent is the first discoverer.
void bfs(const SimpleGraph& g, std::uint32_t src, std::vector<std::uint32_t>& dist,
         std::vector<std::uint32_t>* parent) {
    dist.assign(g.vertex_count(), kUnreached);
    if (parent) parent->assign(g.vertex_count(), kUnreached);
    std::queue<std::uint32_t> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        const auto v = q.front();
        q.pop();
        for (auto nb : g.neighbors(v)) {
            if (dist[nb] != kUnreached) continue;
            dist[nb] = dist[v] + 1;
            if (parent) (*parent)[nb] = v;
            q.push(nb);
        }
    }
}

}  // namespace

std::vector<std::uint32_t> Multigraph::degrees() const {
    std::vector<std::uint32_t> d(vertex_count, 0);
    for (const auto& e : edges) {
        ++d[e.u];
        ++d[e.v];
    }
    return d;
}

std::size_t Multigraph::added_count() const {
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [](const MultiEdge& e) { return e.added; }));
}

Multigraph eulerian_augment(const SimpleGraph& g) {
    Multigraph mg;
    mg.vertex_count = g.vertex_count();
    for (const auto& [a, b] : g.edges()) mg.edges.push_back({a, b, false});

    std::vector<std::uint32_t> odd;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) % 2 == 1) odd.push_back(v);
    if (odd.empty()) return mg;

    // Greedy nearest-pair matching on BFS distance, ties by vertex ids.
    std::vector<std::uint8_t> is_odd(g.vertex_count(), 0);
    for (auto v : odd) is_odd[v] = 1;
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> pairs;
    std::vector<std::uint32_t> dist;
    for (auto a : odd) {
        bfs(g, a, dist, nullptr);
        for (auto b : odd)
            if (b > a && dist[b] != kUnreached) pairs.emplace_back(dist[b], a, b);
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::uint8_t> matched(g.vertex_count(), 0);
    std::map<VertexPair, std::uint8_t> parity;
    std::vector<std::uint32_t> parent;
    for (const auto& [d, a, b] : pairs) {
        if (matched[a] || matched[b]) continue;
        matched[a] = matched[b] = 1;
        bfs(g, a, dist, &parent);
        for (std::uint32_t v = b; v != a; v = parent[v]) parity[canonical_pair(v, parent[v])] ^= 1;
    }
    // Paths that overlap cancel pairwise, so each edge is duplicated at most
    // once and every degree still ends up even.
    for (const auto& [e, bit] : parity)
        if (bit) mg.edges.push_back({e.first, e.second, true});
    return mg;
}

LoopCover decompose_loops(const Multigraph& mg) {
    const auto deg = mg.degrees();
    for (std::uint32_t v = 0; v < mg.vertex_count; ++v)
        if (deg[v] % 2 != 0)
            throw ContractViolation("vertex " + std::to_string(v) + " has odd degree " + std::to_string(deg[v]) +
                                    "; loop decomposition needs an Eulerian multigraph");

    // incidence[v] = (neighbor, edge id), sorted for a deterministic walk.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> incidence(mg.vertex_count);
    for (std::uint32_t id = 0; id < mg.edges.size(); ++id) {
        const auto& e = mg.edges[id];
        if (e.u == e.v) throw ContractViolation("self-loop in multigraph");
        incidence[e.u].emplace_back(e.v, id);
        incidence[e.v].emplace_back(e.u, id);
    }
    for (auto& inc : incidence) std::sort(inc.begin(), inc.end());

    LoopCover cover;
    cover.vertex_count = mg.vertex_count;
    std::vector<std::uint8_t> used(mg.edges.size(), 0);
    std::vector<std::size_t> cursor(mg.vertex_count, 0);
    std::vector<std::int64_t> pos(mg.vertex_count, -1);

    for (std::uint32_t start = 0; start < mg.vertex_count; ++start) {
        // Hierholzer: closed walk through every unused edge of this component.
        std::vector<std::uint32_t> stack{start}, circuit;
        while (!stack.empty()) {
            const auto v = stack.back();
            auto& c = cursor[v];
            while (c < incidence[v].size() && used[incidence[v][c].second]) ++c;
            if (c == incidence[v].size()) {
                circuit.push_back(v);
                stack.pop_back();
            } else {
                used[incidence[v][c].second] = 1;
                stack.push_back(incidence[v][c].first);
            }
        }
        if (circuit.size() < 2) continue;

        // Cut the circuit into simple cycles at repeated vertices.
        std::vector<std::uint32_t> path;
        for (auto x : circuit) {
            if (pos[x] >= 0) {
                const auto p = static_cast<std::size_t>(pos[x]);
                Loop loop;
                loop.vertices.assign(path.begin() + static_cast<std::ptrdiff_t>(p), path.end());
                cover.loops.push_back(std::move(loop));
                for (std::size_t t = p + 1; t < path.size(); ++t) pos[path[t]] = -1;
                path.resize(p + 1);
            } else {
                pos[x] = static_cast<std::int64_t>(path.size());
                path.push_back(x);
            }
        }
        for (auto v : path) pos[v] = -1;
    }
    return cover;
}

std::map<VertexPair, std::uint32_t> LoopCover::multiplicity() const {
    std::map<VertexPair, std::uint32_t> m;
    for (const auto& loop : loops) {
        std::set<VertexPair> seen;
        for (std::size_t t = 0; t < loop.length(); ++t) seen.insert(loop.edge(t));
        for (const auto& e : seen) ++m[e];
    }
    return m;
}

void GeneratorParams::validate() const {
    if (!(small > 0.0) || !(large > small))
        throw InvalidParameter("bias values must satisfy large > small > 0");
    if (!(p_large >= 0.0 && p_large <= 1.0)) throw InvalidParameter("p_large must lie in [0, 1]");
    if (!(beta > 0.0 && beta <= 1.0)) throw InvalidParameter("beta must lie in (0, 1]");
}

double clause_minimum(std::size_t length, double magnitude) {
    if (length == 2) return -2.0 * magnitude;
    return -static_cast<double>(length - 2) * magnitude;
}

PlantedInstance generate_instance(const LoopCover& cover, const GeneratorParams& params,
                                  std::optional<ising::SpinConfig> planted) {
    params.validate();
    const std::size_t total = cover.loops.size();
    // The epsilon keeps beta * total from rounding up past an exact integer.
    const auto selected = static_cast<std::size_t>(
        std::min<double>(static_cast<double>(total), std::ceil(params.beta * static_cast<double>(total) - 1e-9)));
    if (selected == 0)
        throw ContractViolation("loop selection is empty (cover has " + std::to_string(total) + " loops)");

    PlantedInstance inst;
    inst.cover = cover;
    inst.params = params;
    if (planted) {
        if (planted->size() != cover.vertex_count)
            throw InvalidParameter("planted configuration has " + std::to_string(planted->size()) +
                                   " spins, cover has " + std::to_string(cover.vertex_count) + " vertices");
        inst.planted = std::move(*planted);
    } else {
        Rng rng(derive_seed(params.seed, {tag::planted}));
        std::vector<ising::Spin> s(cover.vertex_count);
        for (auto& v : s) v = rng.below(2) ? 1 : -1;
        inst.planted = ising::SpinConfig(std::move(s));
    }

    std::vector<std::uint32_t> order(total);
    std::iota(order.begin(), order.end(), 0u);
    Rng select(derive_seed(params.seed, {tag::select}));
    for (std::size_t i = 0; i < selected; ++i) {
        const auto j = i + static_cast<std::size_t>(select.below(total - i));
        std::swap(order[i], order[j]);
    }
    order.resize(selected);
    std::sort(order.begin(), order.end());

    ising::ProblemBuilder builder(cover.vertex_count);
    const auto& s = inst.planted;
    for (auto idx : order) {
        const Loop& loop = cover.loops[idx];
        Rng rng(derive_seed(params.seed, {tag::loop, idx}));
        LoopClause clause;
        clause.loop = idx;
        clause.magnitude = rng.bernoulli(params.p_large) ? params.large : params.small;
        if (loop.length() >= 3) clause.flipped = static_cast<std::uint32_t>(rng.below(loop.length()));
        for (std::uint32_t t = 0; t < loop.length(); ++t) {
            const auto a = loop.vertices[t];
            const auto b = loop.vertices[(t + 1) % loop.length()];
            const double sign = clause.flipped == t ? 1.0 : -1.0;
            builder.add_quadratic(a, b, sign * clause.magnitude * s[a] * s[b]);
        }
        inst.clauses.push_back(clause);
    }
    inst.problem = builder.build();
    return inst;
}

PlantedReport verify_planted(const PlantedInstance& inst, std::uint32_t brute_force_cap) {
    PlantedReport rep;
    const auto& s = inst.planted;
    const std::uint32_t n = inst.cover.vertex_count;
    auto fail = [&](std::string msg) {
        rep.clauses_ok = false;
        rep.failures.push_back(std::move(msg));
    };
    if (s.size() != n || inst.problem.variable_count() != n) {
        fail("planted/problem/cover dimensions disagree");
        return rep;
    }

    ising::ProblemBuilder rebuilt(n);
    std::map<VertexPair, std::vector<std::uint32_t>> loops_on;
    for (const auto& clause : inst.clauses) {
        if (clause.loop >= inst.cover.loops.size()) {
            fail("clause references missing loop " + std::to_string(clause.loop));
            continue;
        }
        const Loop& loop = inst.cover.loops[clause.loop];
        const std::size_t len = loop.length();
        if ((len >= 3) != clause.flipped.has_value()) fail("loop " + std::to_string(clause.loop) + " has a misplaced flip");
        double clause_energy = 0.0;
        std::size_t violated = 0;
        for (std::uint32_t t = 0; t < len; ++t) {
            const auto a = loop.vertices[t];
            const auto b = loop.vertices[(t + 1) % len];
            const double sign = clause.flipped == t ? 1.0 : -1.0;
            const double coupling = sign * clause.magnitude * s[a] * s[b];
            rebuilt.add_quadratic(a, b, coupling);
            loops_on[canonical_pair(a, b)].push_back(clause.loop);
            const double term = coupling * s[a] * s[b];
            clause_energy += term;
            if (term > 0.0) ++violated;
        }
        if (violated != (len >= 3 ? 1u : 0u))
            fail("planted violates " + std::to_string(violated) + " edges of loop " + std::to_string(clause.loop));
        if (clause_energy != clause_minimum(len, clause.magnitude))
            fail("loop " + std::to_string(clause.loop) + " planted energy " + std::to_string(clause_energy) +
                 " is not its minimum " + std::to_string(clause_minimum(len, clause.magnitude)));
        rep.clause_sum += clause_energy;
    }

    const auto expected = rebuilt.build();
    std::set<VertexPair> keys;
    for (const auto& [e, v] : expected.quadratic()) keys.insert(e);
    for (const auto& [e, v] : inst.problem.quadratic()) keys.insert(e);
    for (const auto& e : keys) {
        if (expected.quadratic(e.first, e.second) == inst.problem.quadratic(e.first, e.second)) continue;
        std::string owners;
        for (auto l : loops_on[e]) owners += (owners.empty() ? "" : ",") + std::to_string(l);
        fail("coupler (" + std::to_string(e.first) + "," + std::to_string(e.second) + ") differs from its clauses" +
             (owners.empty() ? std::string(" (no loop covers it)") : " (loops " + owners + ")"));
    }
    if (!inst.problem.linear().empty()) fail("planted instances carry no linear terms");

    rep.planted_energy = inst.planted_energy();
    if (rep.clauses_ok && rep.planted_energy != rep.clause_sum)
        fail("planted energy is not the sum of its clause energies");

    if (n <= brute_force_cap) {
        rep.brute_forced = true;
        const auto exact = samplers::solve_exact(inst.problem, brute_force_cap, 1);
        rep.exact_minimum = exact.min_energy;
        if (exact.min_energy != rep.planted_energy)
            rep.failures.push_back("exhaustive minimum " + std::to_string(exact.min_energy) +
                                   " is below planted energy " + std::to_string(rep.planted_energy));
    }
    rep.pass = rep.failures.empty();
    return rep;
}

nlohmann::json to_json(const GeneratorParams& p) {
    return {{"bias", {p.large, p.small}}, {"p_large", p.p_large}, {"beta", p.beta}, {"seed", p.seed}};
}

GeneratorParams params_from_json(const nlohmann::json& j) {
    GeneratorParams p;
    const auto bias = io::required<std::vector<double>>(j, "bias");
    if (bias.size() != 2) throw FormatError("bias must be [large, small]");
    p.large = bias[0];
    p.small = bias[1];
    p.p_large = io::required<double>(j, "p_large");
    p.beta = io::required<double>(j, "beta");
    p.seed = io::required<std::uint64_t>(j, "seed");
    return p;
}

nlohmann::json to_json(const LoopCover& c) {
    auto loops = nlohmann::json::array();
    for (const auto& l : c.loops) loops.push_back(l.vertices);
    return {{"vertex_count", c.vertex_count}, {"loops", std::move(loops)}};
}

LoopCover cover_from_json(const nlohmann::json& j) {
    LoopCover c;
    c.vertex_count = io::required<std::uint32_t>(j, "vertex_count");
    for (const auto& l : io::required<nlohmann::json>(j, "loops")) {
        Loop loop;
        loop.vertices = l.get<std::vector<std::uint32_t>>();
        if (loop.length() < 2) throw FormatError("loops need at least 2 vertices");
        for (auto v : loop.vertices)
            if (v >= c.vertex_count) throw FormatError("loop vertex out of range");
        c.loops.push_back(std::move(loop));
    }
    return c;
}

nlohmann::json to_json(const PlantedInstance& inst) {
    nlohmann::json j = ising::to_json(inst.problem);
    j["planted"] = ising::to_json(inst.planted);
    j["planted_energy"] = inst.planted_energy();
    j["params"] = to_json(inst.params);
    j["loop_count"] = inst.cover.loops.size();
    j["cover"] = to_json(inst.cover);
    auto clauses = nlohmann::json::array();
    for (const auto& c : inst.clauses)
        clauses.push_back({{"loop", c.loop},
                           {"magnitude", c.magnitude},
                           {"flipped", c.flipped ? nlohmann::json(*c.flipped) : nlohmann::json(nullptr)}});
    j["clauses"] = std::move(clauses);
    return j;
}

PlantedInstance instance_from_json(const nlohmann::json& j) {
    PlantedInstance inst;
    inst.problem = ising::problem_from_json(j);
    inst.planted = ising::spins_from_json(io::required<nlohmann::json>(j, "planted"));
    inst.params = params_from_json(io::required<nlohmann::json>(j, "params"));
    inst.cover = cover_from_json(io::required<nlohmann::json>(j, "cover"));
    for (const auto& c : io::required<nlohmann::json>(j, "clauses")) {
        LoopClause clause;
        clause.loop = io::required<std::uint32_t>(c, "loop");
        clause.magnitude = io::required<double>(c, "magnitude");
        if (c.contains("flipped") && !c.at("flipped").is_null()) clause.flipped = c.at("flipped").get<std::uint32_t>();
        inst.clauses.push_back(clause);
    }
    if (inst.planted.size() != inst.problem.variable_count())
        throw FormatError("planted configuration length differs from n");
    return inst;
}

nlohmann::json to_json(const PlantedReport& r) {
    return {{"pass", r.pass},
            {"clauses_ok", r.clauses_ok},
            {"brute_forced", r.brute_forced},
            {"planted_energy", r.planted_energy},
            {"clause_sum", r.clause_sum},
            {"exact_minimum", r.exact_minimum ? nlohmann::json(*r.exact_minimum) : nlohmann::json(nullptr)},
            {"failures", r.failures}};
}

}  // namespace rbm::planted
