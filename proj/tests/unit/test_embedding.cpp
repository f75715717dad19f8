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

#include <algorithm>
#include <set>

#include <doctest.h>

#include "rbm/common.hpp"
#include "rbm/embedding.hpp"
#include "rbm/topology.hpp"

namespace rbm::embedding {

using topology::build_chimera;
using topology::build_pegasus;
using topology::CustomShape;

namespace {

bool mentions(const PartitionReport& r, const std::string& needle) {
    return std::any_of(r.failures.begin(), r.failures.end(),
                       [&](const std::string& f) { return f.find(needle) != std::string::npos; });
}

// Brute-force edge comparison between every pair of regions.
void check_isomorphic(const ReplicaPartition& p, const HardwareGraph& g) {
    const auto n = p.logical_graph.vertex_count();
    for (std::uint32_t r = 1; r < p.replica_count(); ++r)
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j)
                CHECK(g.has_edge(p.iso_maps[0][i], p.iso_maps[0][j]) == g.has_edge(p.iso_maps[r][i], p.iso_maps[r][j]));
}

HardwareGraph star_pair(bool joined) {
    // Hubs 0 and 4, leaves 1-3 and 5-7, optional leaf-leaf coupler 3-5.
    std::vector<QubitId> nodes;
    for (std::uint32_t i = 0; i < 8; ++i) nodes.push_back(QubitId{i});
    std::vector<Coupler> edges;
    for (std::uint32_t l : {1u, 2u, 3u}) edges.push_back(Coupler::make(QubitId{0}, QubitId{l}));
    for (std::uint32_t l : {5u, 6u, 7u}) edges.push_back(Coupler::make(QubitId{4}, QubitId{l}));
    if (joined) edges.push_back(Coupler::make(QubitId{3}, QubitId{5}));
    return HardwareGraph(CustomShape{}, nodes, edges);
}

}  // namespace

TEST_CASE("pegasus m=2, k=2 gives two isomorphic regions") {
    const auto g = build_pegasus(2);
    const auto p = partition_replicas(g, 2);
    CHECK(p.replica_count() == 2);
    CHECK(p.logical_graph.vertex_count() == 12);
    CHECK(p.logical_graph.edge_count() == 6);
    const auto rep = verify_partition(p, g);
    CHECK(rep.pass);
    CHECK(rep.induced_isomorphic);
    check_isomorphic(p, g);
}

TEST_CASE("partition sizes on pegasus") {
    struct Row {
        std::uint32_t m, k;
        std::uint32_t nodes;
        std::size_t edges;
    };
    const Row rows[] = {{3, 2, 60, 186}, {3, 4, 24, 36}, {4, 2, 120, 540}, {4, 4, 48, 168}, {4, 8, 12, 6}};
    for (const auto& r : rows) {
        CAPTURE(r.m);
        CAPTURE(r.k);
        const auto g = build_pegasus(r.m);
        const auto p = partition_replicas(g, r.k);
        CHECK(p.logical_graph.vertex_count() == r.nodes);
        CHECK(p.logical_graph.edge_count() == r.edges);
        auto rep = verify_partition(p, g);
        CHECK(rep.pass);
        // Disjoint regions inside the active set.
        std::set<QubitId> used;
        for (std::uint32_t i = 0; i < p.replica_count(); ++i)
            for (auto q : p.iso_maps[i]) {
                CHECK(g.is_active(q));
                CHECK(used.insert(q).second);
            }
    }
}

TEST_CASE("partition rejects unsupported k and small graphs") {
    const auto g = build_pegasus(4);
    CHECK_THROWS_AS(partition_replicas(g, 3), InvalidParameter);
    CHECK_THROWS_AS(partition_replicas(g, 16), InvalidParameter);
    CHECK_THROWS_AS(partition_replicas(build_chimera(2, 2, 4), 2), InvalidParameter);
    CHECK_THROWS_AS(partition_replicas(build_pegasus(2), 4), EmbeddingInfeasible);
}

TEST_CASE("defects are excised from every region") {
    const auto g = build_pegasus(4);
    const auto clean = partition_replicas(g, 4);
    const QubitId dead = clean.iso_maps[2][5];
    const auto h = topology::apply_defects(g, {{dead}, {}});
    const auto p = partition_replicas(h, 4);
    CHECK(verify_partition(p, h).pass);
    CHECK(p.logical_graph.vertex_count() == clean.logical_graph.vertex_count() - 1);
    for (std::uint32_t r = 0; r < 4; ++r) {
        const auto region = p.region(r);
        CHECK_FALSE(std::binary_search(region.begin(), region.end(), clean.iso_maps[r][5]));
    }
    check_isomorphic(p, h);
}

TEST_CASE("verify_partition names what is wrong") {
    const auto g = build_pegasus(2);
    const auto good = partition_replicas(g, 2);

    SUBCASE("shared qubit") {
        auto bad = good;
        bad.iso_maps[1][0] = bad.iso_maps[0][0];
        auto rep = verify_partition(bad, g);
        CHECK_FALSE(rep.pass);
        CHECK_FALSE(rep.disjoint);
        CHECK(mentions(rep, "qubit " + std::to_string(good.iso_maps[0][0].value)));
    }

    SUBCASE("missing edge") {
        const auto [a, b] = good.logical_graph.edges().front();
        const auto h = topology::apply_defects(
            g, {{}, {Coupler::make(good.iso_maps[1][a], good.iso_maps[1][b])}});
        auto rep = verify_partition(good, h);
        CHECK_FALSE(rep.pass);
        CHECK_FALSE(rep.edges_preserved);
        CHECK(mentions(rep, "logical edge (" + std::to_string(a) + "," + std::to_string(b) + ")"));
    }

    SUBCASE("wrong map length") {
        auto bad = good;
        bad.iso_maps[1].pop_back();
        CHECK_FALSE(verify_partition(bad, g).pass);
    }
}

TEST_CASE("QAC tiling of a single chimera cell") {
    const auto cell = build_chimera(1, 1, 4);
    const auto e = tile_qac(cell);
    CHECK(e.units.size() == 2);
    const auto lg = logical_graph(e);
    CHECK(lg.vertex_count() == 2);
    CHECK(lg.edge_count() == 1);
    REQUIRE(e.logical_edges.size() == 1);
    CHECK(e.logical_edges.begin()->second.size() == 9);
    CHECK(verify_qac(e, cell).pass);
}

TEST_CASE("a masked penalty coupler retires its unit") {
    const auto cell = build_chimera(1, 1, 4);
    const auto before = tile_qac(cell);
    const auto& unit = before.units.front();
    const auto cut = Coupler::make(unit.penalty, unit.problem[0]);
    const auto masked = topology::apply_defects(cell, {{}, {cut}});
    const auto after = tile_qac(masked);
    CHECK(std::find(after.units.begin(), after.units.end(), unit) == after.units.end());
    for (const auto& u : after.units)
        for (auto q : u.problem) CHECK(Coupler::make(u.penalty, q) != cut);
    CHECK(verify_qac(after, masked).pass);
}

TEST_CASE("QAC tiling of stars") {
    const auto lone = tile_qac(star_pair(false));
    CHECK(lone.units.size() == 2);
    CHECK(lone.logical_edges.empty());

    std::vector<QubitId> nodes{QubitId{0}, QubitId{1}, QubitId{2}, QubitId{3}};
    std::vector<Coupler> edges;
    for (std::uint32_t l : {1u, 2u, 3u}) edges.push_back(Coupler::make(QubitId{0}, QubitId{l}));
    const auto one = tile_qac(HardwareGraph(CustomShape{}, nodes, edges));
    CHECK(one.units.size() == 1);
    CHECK(one.logical_edges.empty());

    const auto joined = tile_qac(star_pair(true));
    CHECK(joined.units.size() == 2);
    REQUIRE(joined.logical_edges.size() == 1);
    CHECK(joined.logical_edges.begin()->second.size() == 1);

    CHECK(logical_graph(QacEncoding{}).vertex_count() == 0);
}

TEST_CASE("whole-graph QAC tiling sizes") {
    struct Row {
        std::uint32_t m;
        std::size_t units, edges;
    };
    for (auto r : {Row{2, 9, 20}, Row{3, 27, 139}, Row{4, 64, 346}}) {
        CAPTURE(r.m);
        const auto g = build_pegasus(r.m);
        const auto e = tile_qac(g);
        CHECK(e.units.size() == r.units);
        CHECK(e.logical_edges.size() == r.edges);
        CHECK(verify_qac(e, g).pass);
    }
}

TEST_CASE("combined QAC and replicas") {
    const auto g = build_pegasus(4);
    const auto c = combine_qac_rbm(g, 4);
    CHECK(c.regions.replica_count() == 4);
    REQUIRE(c.encodings.size() == 4);
    CHECK(c.encodings[0].units.size() == 9);
    CHECK(c.encodings[0].logical_edges.size() == 20);
    CHECK(c.logical.logical_graph.vertex_count() == 9);
    CHECK(c.logical.logical_graph.edge_count() == 8);
    CHECK(verify_partition(c.regions, g).pass);
    CHECK(verify_partition(c.logical, g).pass);
    check_isomorphic(c.logical, g);
    for (const auto& e : c.encodings) CHECK(verify_qac(e, g).pass);

    // Encodings are images of each other under the region maps.
    for (std::size_t u = 0; u < c.encodings[0].units.size(); ++u)
        for (std::uint32_t r = 1; r < 4; ++r)
            CHECK(c.encodings[r].units[u].penalty != c.encodings[0].units[u].penalty);

    CHECK_THROWS_AS(combine_qac_rbm(build_pegasus(4), 8), EmbeddingInfeasible);
    const auto one = combine_qac_rbm(build_pegasus(2), 1);
    CHECK(one.encodings[0].units.size() == tile_qac(build_pegasus(2)).units.size());
}

TEST_CASE("structure JSON round-trip") {
    const auto g = build_pegasus(3);
    const auto p = partition_replicas(g, 2);
    CHECK(partition_from_json(to_json(p)) == p);
    const auto e = tile_qac(g);
    CHECK(encoding_from_json(to_json(e)) == e);
    const auto c = combine_qac_rbm(g, 2);
    const auto back = combined_from_json(to_json(c));
    CHECK(back.regions == c.regions);
    CHECK(back.encodings == c.encodings);
    CHECK(back.logical == c.logical);

    CHECK_THROWS_AS(partition_from_json(nlohmann::json::parse(R"({"kind": "partition"})")), FormatError);
}

}  // namespace rbm::embedding
