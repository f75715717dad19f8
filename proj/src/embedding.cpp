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

#include "rbm/embedding.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

#include "rbm/common.hpp"
#include "rbm/io.hpp"

namespace rbm::embedding {

using topology::PegasusCoord;
using topology::PegasusShape;

std::vector<QubitId> ReplicaPartition::region(std::uint32_t r) const {
    std::vector<QubitId> out = iso_maps.at(r);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct BlockGrid {
    std::uint32_t gx, gy;
};

BlockGrid grid_for(std::uint32_t k) {
    switch (k) {
        case 2: return {2, 1};
        case 4: return {2, 2};
        case 8: return {4, 2};
        default:
            throw InvalidParameter("unsupported replica count " + std::to_string(k) + " (expected 2, 4 or 8)");
    }
}

// Vertical qubits (u = 0) sit at x = w, y = z; horizontal ones (u = 1) at
// x = z, y = w. Shifting every qubit by whole tiles is a graph automorphism
// wherever the shifted coordinates exist.
std::optional<QubitId> translate(std::uint32_t m, const PegasusCoord& c, std::uint32_t sx, std::uint32_t sy) {
    PegasusCoord t = c;
    if (c.u == 0) {
        t.w += sx;
        t.z += sy;
    } else {
        t.z += sx;
        t.w += sy;
    }
    return topology::pegasus_linear(m, t);
}

}  // namespace

ReplicaPartition partition_replicas(const HardwareGraph& g, std::uint32_t k) {
    const auto* shape = std::get_if<PegasusShape>(&g.family());
    if (shape == nullptr)
        throw InvalidParameter("partition_replicas needs a pegasus graph, got " + topology::family_name(g.family()));
    const BlockGrid grid = grid_for(k);
    const std::uint32_t m = shape->m;
    const std::uint32_t dx = m / grid.gx;
    const std::uint32_t dy = m / grid.gy;
    if (dx == 0 || dy == 0)
        throw EmbeddingInfeasible("pegasus m=" + std::to_string(m) + " is too small for " + std::to_string(k) +
                                  " replicas");

    // Canonical block (0, 0): keep qubits whose every translate is active.
    std::vector<QubitId> canonical;
    std::vector<std::vector<QubitId>> images;
    for (auto q : g.ideal_nodes()) {
        const PegasusCoord c = topology::pegasus_coordinates(m, q);
        const std::uint32_t x = c.u == 0 ? c.w : c.z;
        const std::uint32_t y = c.u == 0 ? c.z : c.w;
        if (x >= dx || y >= dy) continue;
        std::vector<QubitId> img;
        img.reserve(k);
        bool ok = true;
        for (std::uint32_t by = 0; by < grid.gy && ok; ++by)
            for (std::uint32_t bx = 0; bx < grid.gx && ok; ++bx) {
                auto t = translate(m, c, bx * dx, by * dy);
                if (!t || !g.is_active(*t)) ok = false;
                else img.push_back(*t);
            }
        if (!ok) continue;
        canonical.push_back(q);
        images.push_back(std::move(img));
    }
    if (canonical.empty())
        throw EmbeddingInfeasible("no qubit survives in all " + std::to_string(k) + " replica blocks");

    std::unordered_map<QubitId, std::uint32_t> logical_of;
    for (std::uint32_t i = 0; i < canonical.size(); ++i) logical_of.emplace(canonical[i], i);

    std::vector<VertexPair> edges;
    for (std::uint32_t i = 0; i < canonical.size(); ++i)
        for (auto nb : g.neighbors(canonical[i])) {
            auto it = logical_of.find(nb);
            if (it == logical_of.end() || it->second <= i) continue;
            const std::uint32_t j = it->second;
            bool everywhere = true;
            for (std::uint32_t r = 0; r < k && everywhere; ++r)
                everywhere = g.has_edge(images[i][r], images[j][r]);
            if (everywhere) edges.emplace_back(i, j);
        }

    ReplicaPartition p;
    p.logical_graph = SimpleGraph(static_cast<std::uint32_t>(canonical.size()), std::move(edges));
    p.iso_maps.assign(k, std::vector<QubitId>(canonical.size()));
    for (std::uint32_t i = 0; i < canonical.size(); ++i)
        for (std::uint32_t r = 0; r < k; ++r) p.iso_maps[r][i] = images[i][r];
    return p;
}

ReplicaPartition whole_graph_partition(const HardwareGraph& g) {
    const auto& nodes = g.nodes();
    std::unordered_map<QubitId, std::uint32_t> logical_of;
    for (std::uint32_t i = 0; i < nodes.size(); ++i) logical_of.emplace(nodes[i], i);
    std::vector<VertexPair> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) edges.emplace_back(logical_of.at(e.a), logical_of.at(e.b));
    ReplicaPartition p;
    p.logical_graph = SimpleGraph(static_cast<std::uint32_t>(nodes.size()), std::move(edges));
    p.iso_maps.push_back(nodes);
    return p;
}

PartitionReport verify_partition(const ReplicaPartition& p, const HardwareGraph& g) {
    PartitionReport rep;
    const std::uint32_t n = p.logical_graph.vertex_count();
    const std::uint32_t k = p.replica_count();
    auto fail = [&](bool& flag, std::string msg) {
        flag = false;
        rep.failures.push_back(std::move(msg));
    };

    for (std::uint32_t r = 0; r < k; ++r)
        if (p.iso_maps[r].size() != n)
            fail(rep.bijective, "replica " + std::to_string(r) + " maps " + std::to_string(p.iso_maps[r].size()) +
                                    " vertices, logical graph has " + std::to_string(n));
    if (!rep.bijective) {
        rep.pass = false;
        return rep;
    }

    std::unordered_map<QubitId, std::pair<std::uint32_t, std::uint32_t>> owner;
    for (std::uint32_t r = 0; r < k; ++r)
        for (std::uint32_t i = 0; i < n; ++i) {
            const QubitId q = p.iso_maps[r][i];
            if (!g.is_active(q))
                fail(rep.all_active, "replica " + std::to_string(r) + " uses inactive qubit " + std::to_string(q.value));
            auto [it, inserted] = owner.emplace(q, std::pair{r, i});
            if (inserted) continue;
            if (it->second.first == r)
                fail(rep.bijective, "replica " + std::to_string(r) + " maps logical " +
                                        std::to_string(it->second.second) + " and " + std::to_string(i) +
                                        " to qubit " + std::to_string(q.value));
            else
                fail(rep.disjoint, "qubit " + std::to_string(q.value) + " is shared by replica " +
                                       std::to_string(it->second.first) + " and replica " + std::to_string(r));
        }

    for (const auto& [a, b] : p.logical_graph.edges())
        for (std::uint32_t r = 0; r < k; ++r) {
            const QubitId qa = p.iso_maps[r][a], qb = p.iso_maps[r][b];
            if (!g.has_edge(qa, qb))
                fail(rep.edges_preserved, "replica " + std::to_string(r) + " lacks logical edge (" +
                                              std::to_string(a) + "," + std::to_string(b) + ") on coupler (" +
                                              std::to_string(qa.value) + "," + std::to_string(qb.value) + ")");
        }

    rep.regions.resize(k);
    for (std::uint32_t r = 0; r < k; ++r) {
        rep.regions[r].nodes = n;
        for (std::uint32_t i = 0; i < n; ++i)
            for (auto nb : g.neighbors(p.iso_maps[r][i])) {
                auto it = owner.find(nb);
                if (it == owner.end() || it->second.first != r || it->second.second <= i) continue;
                ++rep.regions[r].induced_edges;
                const std::uint32_t j = it->second.second;
                for (std::uint32_t s = 0; s < k && rep.induced_isomorphic; ++s)
                    if (!g.has_edge(p.iso_maps[s][i], p.iso_maps[s][j])) rep.induced_isomorphic = false;
            }
    }
    rep.pass = rep.disjoint && rep.bijective && rep.all_active && rep.edges_preserved;
    return rep;
}

PartitionReport verify_qac(const QacEncoding& e, const HardwareGraph& g) {
    PartitionReport rep;
    auto fail = [&](bool& flag, std::string msg) {
        flag = false;
        rep.failures.push_back(std::move(msg));
    };
    std::unordered_map<QubitId, std::pair<std::uint32_t, bool>> owner;  // unit, is problem qubit
    for (std::uint32_t u = 0; u < e.units.size(); ++u) {
        const auto& unit = e.units[u];
        std::array<std::pair<QubitId, bool>, 4> members{
            {{unit.problem[0], true}, {unit.problem[1], true}, {unit.problem[2], true}, {unit.penalty, false}}};
        for (const auto& [q, is_problem] : members) {
            if (!g.is_active(q))
                fail(rep.all_active, "unit " + std::to_string(u) + " uses inactive qubit " + std::to_string(q.value));
            auto [it, inserted] = owner.emplace(q, std::pair{u, is_problem});
            if (!inserted)
                fail(rep.disjoint, "qubit " + std::to_string(q.value) + " is shared by unit " +
                                       std::to_string(it->second.first) + " and unit " + std::to_string(u));
        }
        for (auto q : unit.problem)
            if (!g.has_edge(unit.penalty, q))
                fail(rep.edges_preserved, "unit " + std::to_string(u) + " lacks penalty coupler (" +
                                              std::to_string(unit.penalty.value) + "," + std::to_string(q.value) + ")");
    }
    for (const auto& [le, couplers] : e.logical_edges) {
        const std::string name = "(" + std::to_string(le.first) + "," + std::to_string(le.second) + ")";
        if (couplers.empty()) fail(rep.edges_preserved, "logical edge " + name + " has no coupler");
        for (const auto& c : couplers) {
            auto a = owner.find(c.a), b = owner.find(c.b);
            const bool ok = a != owner.end() && b != owner.end() && a->second.second && b->second.second &&
                            canonical_pair(a->second.first, b->second.first) == le;
            if (!ok || !g.has_edge(c.a, c.b))
                fail(rep.edges_preserved, "logical edge " + name + " lists bad coupler (" + std::to_string(c.a.value) +
                                              "," + std::to_string(c.b.value) + ")");
        }
    }
    rep.regions.push_back({e.units.size(), e.logical_edges.size()});
    rep.pass = rep.disjoint && rep.bijective && rep.all_active && rep.edges_preserved;
    return rep;
}

namespace {

struct RawUnit {
    std::array<std::uint32_t, 3> problem;
    std::uint32_t penalty;
};

struct RawTiling {
    std::vector<RawUnit> units;
    std::map<VertexPair, std::vector<VertexPair>> logical_edges;
};

RawTiling tile_graph(const SimpleGraph& g, const std::vector<std::uint32_t>& candidates) {
    RawTiling t;
    std::vector<std::uint8_t> claimed(g.vertex_count(), 0);
    for (auto v : candidates) {
        if (claimed[v]) continue;
        std::array<std::uint32_t, 3> leaves{};
        std::size_t found = 0;
        for (auto nb : g.neighbors(v)) {
            if (claimed[nb]) continue;
            leaves[found++] = nb;
            if (found == 3) break;
        }
        if (found < 3) continue;
        claimed[v] = 1;
        for (auto l : leaves) claimed[l] = 1;
        t.units.push_back({leaves, v});
    }

    constexpr std::uint32_t none = ~0u;
    std::vector<std::uint32_t> unit_of(g.vertex_count(), none);
    for (std::uint32_t u = 0; u < t.units.size(); ++u)
        for (auto q : t.units[u].problem) unit_of[q] = u;
    for (std::uint32_t u = 0; u < t.units.size(); ++u)
        for (auto q : t.units[u].problem)
            for (auto nb : g.neighbors(q)) {
                const std::uint32_t w = unit_of[nb];
                if (w == none || w <= u) continue;
                t.logical_edges[{u, w}].push_back(canonical_pair(q, nb));
            }
    for (auto& [key, couplers] : t.logical_edges) std::sort(couplers.begin(), couplers.end());
    return t;
}

template <typename MapFn>
QacEncoding materialize(const RawTiling& t, MapFn to_qubit) {
    QacEncoding e;
    e.units.reserve(t.units.size());
    for (const auto& u : t.units)
        e.units.push_back({{to_qubit(u.problem[0]), to_qubit(u.problem[1]), to_qubit(u.problem[2])},
                           to_qubit(u.penalty)});
    for (const auto& [key, couplers] : t.logical_edges) {
        auto& out = e.logical_edges[key];
        for (const auto& [a, b] : couplers) out.push_back(Coupler::make(to_qubit(a), to_qubit(b)));
        std::sort(out.begin(), out.end());
    }
    return e;
}

SimpleGraph active_simple_graph(const HardwareGraph& g) {
    std::vector<VertexPair> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) edges.emplace_back(e.a.value, e.b.value);
    return SimpleGraph(g.id_bound(), std::move(edges));
}

}  // namespace

QacEncoding tile_qac(const HardwareGraph& g) {
    std::vector<std::uint32_t> candidates;
    candidates.reserve(g.node_count());
    for (auto q : g.nodes()) candidates.push_back(q.value);
    const RawTiling t = tile_graph(active_simple_graph(g), candidates);
    return materialize(t, [](std::uint32_t v) { return QubitId{v}; });
}

SimpleGraph logical_graph(const QacEncoding& e) {
    std::vector<VertexPair> edges;
    edges.reserve(e.logical_edges.size());
    for (const auto& [key, couplers] : e.logical_edges) edges.push_back(key);
    return SimpleGraph(static_cast<std::uint32_t>(e.units.size()), std::move(edges));
}

CombinedEmbedding combine_qac_rbm(const HardwareGraph& g, std::uint32_t k) {
    CombinedEmbedding c;
    c.regions = k == 1 ? whole_graph_partition(g) : partition_replicas(g, k);
    const SimpleGraph& region_graph = c.regions.logical_graph;

    std::vector<std::uint32_t> candidates(region_graph.vertex_count());
    for (std::uint32_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
    const RawTiling t = tile_graph(region_graph, candidates);
    if (t.units.empty())
        throw EmbeddingInfeasible("replica region 0 (" + std::to_string(region_graph.vertex_count()) +
                                  " qubits) admits no K_{1,3} unit");

    for (std::uint32_t r = 0; r < k; ++r) {
        const auto& map = c.regions.iso_maps[r];
        c.encodings.push_back(materialize(t, [&](std::uint32_t v) { return map[v]; }));
    }

    // One representative problem qubit per unit; units are visited in order
    // and each picks the candidate adjacent to the most earlier picks.
    const auto units = static_cast<std::uint32_t>(t.units.size());
    std::vector<std::uint32_t> rep(units);
    for (std::uint32_t u = 0; u < units; ++u) {
        std::size_t best_links = 0;
        rep[u] = t.units[u].problem[0];
        for (auto cand : t.units[u].problem) {
            std::size_t links = 0;
            for (std::uint32_t w = 0; w < u; ++w)
                if (region_graph.has_edge(cand, rep[w])) ++links;
            if (links > best_links) {
                best_links = links;
                rep[u] = cand;
            }
        }
    }
    std::vector<VertexPair> edges;
    for (const auto& [key, couplers] : t.logical_edges)
        if (region_graph.has_edge(rep[key.first], rep[key.second])) edges.push_back(key);

    c.logical.logical_graph = SimpleGraph(units, std::move(edges));
    c.logical.iso_maps.assign(k, std::vector<QubitId>(units));
    for (std::uint32_t r = 0; r < k; ++r)
        for (std::uint32_t u = 0; u < units; ++u) c.logical.iso_maps[r][u] = c.regions.iso_maps[r][rep[u]];
    return c;
}

namespace {

nlohmann::json qubits_json(const std::vector<QubitId>& v) {
    auto a = nlohmann::json::array();
    for (auto q : v) a.push_back(q.value);
    return a;
}

std::vector<QubitId> qubits_from(const nlohmann::json& a) {
    if (!a.is_array()) throw FormatError("qubit list must be an array");
    std::vector<QubitId> out;
    out.reserve(a.size());
    for (const auto& v : a) {
        if (!v.is_number_unsigned()) throw FormatError("qubit ids must be non-negative integers");
        out.push_back(QubitId{v.get<std::uint32_t>()});
    }
    return out;
}

nlohmann::json graph_json(const SimpleGraph& g) {
    auto edges = nlohmann::json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
    return {{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

SimpleGraph graph_from(const nlohmann::json& j) {
    const auto n = io::required<std::uint32_t>(j, "n");
    std::vector<VertexPair> edges;
    for (const auto& e : io::required<nlohmann::json>(j, "edges")) {
        if (!e.is_array() || e.size() != 2) throw FormatError("logical edges must be [i, j] pairs");
        edges.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>());
    }
    try {
        return SimpleGraph(n, std::move(edges));
    } catch (const InvalidParameter& e) {
        throw FormatError(std::string("invalid logical graph: ") + e.what());
    }
}

}  // namespace

nlohmann::json to_json(const ReplicaPartition& p) {
    auto maps = nlohmann::json::array();
    auto regions = nlohmann::json::array();
    for (std::uint32_t r = 0; r < p.replica_count(); ++r) {
        maps.push_back(qubits_json(p.iso_maps[r]));
        regions.push_back(qubits_json(p.region(r)));
    }
    return {{"kind", "partition"},
            {"k", p.replica_count()},
            {"logical_graph", graph_json(p.logical_graph)},
            {"iso_maps", std::move(maps)},
            {"regions", std::move(regions)}};
}

ReplicaPartition partition_from_json(const nlohmann::json& j) {
    ReplicaPartition p;
    p.logical_graph = graph_from(io::required<nlohmann::json>(j, "logical_graph"));
    const auto k = io::required<std::uint32_t>(j, "k");
    const auto maps = io::required<nlohmann::json>(j, "iso_maps");
    if (!maps.is_array() || maps.size() != k) throw FormatError("iso_maps must hold k arrays");
    for (const auto& m : maps) {
        p.iso_maps.push_back(qubits_from(m));
        if (p.iso_maps.back().size() != p.logical_graph.vertex_count())
            throw FormatError("iso_map size differs from the logical vertex count");
    }
    return p;
}

nlohmann::json to_json(const QacEncoding& e) {
    auto units = nlohmann::json::array();
    for (const auto& u : e.units)
        units.push_back({{"problem", {u.problem[0].value, u.problem[1].value, u.problem[2].value}},
                         {"penalty", u.penalty.value}});
    auto edges = nlohmann::json::array();
    for (const auto& [key, couplers] : e.logical_edges) {
        auto cs = nlohmann::json::array();
        for (const auto& c : couplers) cs.push_back({c.a.value, c.b.value});
        edges.push_back({{"pair", {key.first, key.second}}, {"couplers", std::move(cs)}});
    }
    return {{"kind", "qac"}, {"units", std::move(units)}, {"logical_edges", std::move(edges)},
            {"penalty_weight", e.penalty_weight}};
}

QacEncoding encoding_from_json(const nlohmann::json& j) {
    QacEncoding e;
    for (const auto& u : io::required<nlohmann::json>(j, "units")) {
        const auto prob = qubits_from(io::required<nlohmann::json>(u, "problem"));
        if (prob.size() != 3) throw FormatError("a QAC unit needs exactly 3 problem qubits");
        e.units.push_back({{prob[0], prob[1], prob[2]}, QubitId{io::required<std::uint32_t>(u, "penalty")}});
    }
    for (const auto& le : io::required<nlohmann::json>(j, "logical_edges")) {
        const auto pair = io::required<std::vector<std::uint32_t>>(le, "pair");
        if (pair.size() != 2 || pair[0] >= pair[1] || pair[1] >= e.units.size())
            throw FormatError("logical edge pair must be canonical unit indices");
        auto& out = e.logical_edges[{pair[0], pair[1]}];
        for (const auto& c : io::required<nlohmann::json>(le, "couplers")) {
            const auto q = qubits_from(c);
            if (q.size() != 2) throw FormatError("couplers must be [a, b] pairs");
            out.push_back(Coupler::make(q[0], q[1]));
        }
        if (out.empty()) throw FormatError("logical edge without couplers");
    }
    e.penalty_weight = j.value("penalty_weight", -1.0);
    return e;
}

nlohmann::json to_json(const CombinedEmbedding& c) {
    auto encs = nlohmann::json::array();
    for (const auto& e : c.encodings) encs.push_back(to_json(e));
    return {{"kind", "combined"},
            {"k", c.regions.replica_count()},
            {"regions", to_json(c.regions)},
            {"encodings", std::move(encs)},
            {"logical", to_json(c.logical)}};
}

CombinedEmbedding combined_from_json(const nlohmann::json& j) {
    CombinedEmbedding c;
    c.regions = partition_from_json(io::required<nlohmann::json>(j, "regions"));
    c.logical = partition_from_json(io::required<nlohmann::json>(j, "logical"));
    for (const auto& e : io::required<nlohmann::json>(j, "encodings")) c.encodings.push_back(encoding_from_json(e));
    if (c.encodings.size() != c.regions.replica_count() || c.logical.replica_count() != c.regions.replica_count())
        throw FormatError("combined structure replica counts disagree");
    return c;
}

nlohmann::json to_json(const PartitionReport& r) {
    auto regions = nlohmann::json::array();
    for (const auto& reg : r.regions) regions.push_back({{"nodes", reg.nodes}, {"induced_edges", reg.induced_edges}});
    return {{"pass", r.pass},
            {"disjoint", r.disjoint},
            {"bijective", r.bijective},
            {"all_active", r.all_active},
            {"edges_preserved", r.edges_preserved},
            {"induced_isomorphic", r.induced_isomorphic},
            {"regions", std::move(regions)},
            {"failures", r.failures}};
}

}  // namespace rbm::embedding
