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

#include <string>

#include <doctest.h>

#include "rbm/common.hpp"
#include "rbm/topology.hpp"

namespace rbm::topology {

namespace {

// Sorted "a,b;a,b;..." rendering of the active edge list.
std::uint64_t edge_fingerprint(const HardwareGraph& g) {
    std::string s;
    for (const auto& e : g.edges()) {
        if (!s.empty()) s += ';';
        s += std::to_string(e.a.value) + ',' + std::to_string(e.b.value);
    }
    return fnv1a64(s);
}

std::vector<std::size_t> histogram(const HardwareGraph& g) {
    auto h = graph_stats(g).degree_histogram;
    return h;
}

}  // namespace

// Counts and fingerprints frozen from the dwave_networkx generator
// (pegasus_graph(m, fabric_only=False)); see tests/oracles/pegasus_oracle.py.
TEST_CASE("pegasus matches the reference generator") {
    struct Row {
        std::uint32_t m;
        std::size_t nodes, edges, max_degree;
        std::uint64_t fingerprint;
    };
    const Row rows[] = {
        {2, 48, 168, 13, 0x65eb3645ed235ea0ULL},
        {3, 144, 720, 14, 0xb3c7422295a08accULL},
        {4, 288, 1632, 15, 0x196351b3e2a5673bULL},
        {16, 5760, 40656, 15, 0xb4668b36330336d0ULL},
    };
    for (const auto& r : rows) {
        CAPTURE(r.m);
        const auto g = build_pegasus(r.m);
        CHECK(g.node_count() == r.nodes);
        CHECK(g.node_count() == 24u * r.m * (r.m - 1));
        CHECK(g.edge_count() == r.edges);
        CHECK(graph_stats(g).max_degree == r.max_degree);
        CHECK(edge_fingerprint(g) == r.fingerprint);
    }
}

TEST_CASE("pegasus degree histograms") {
    auto h2 = histogram(build_pegasus(2));
    CHECK(h2[1] == 8);
    CHECK(h2[5] == 16);
    CHECK(h2[9] == 16);
    CHECK(h2[13] == 8);

    auto h4 = histogram(build_pegasus(4));
    const std::size_t want4[][2] = {{2, 16}, {3, 8}, {6, 32}, {7, 16}, {10, 32}, {11, 16}, {14, 112}, {15, 56}};
    for (auto [d, c] : want4) CHECK(h4[d] == c);

    auto h16 = histogram(build_pegasus(16));
    const std::size_t want16[][2] = {{2, 16}, {3, 104}, {6, 32}, {7, 208}, {10, 32}, {11, 208}, {14, 688}, {15, 4472}};
    for (auto [d, c] : want16) CHECK(h16[d] == c);
}

TEST_CASE("pegasus coordinates round-trip") {
    const std::uint32_t m = 4;
    const auto g = build_pegasus(m);
    for (auto q : g.nodes()) {
        auto c = pegasus_coordinates(m, q);
        CHECK(c.u < 2);
        CHECK(c.w < m);
        CHECK(c.k < 12);
        CHECK(c.z < m - 1);
        auto back = pegasus_linear(m, c);
        REQUIRE(back.has_value());
        CHECK(*back == q);
    }
}

TEST_CASE("pegasus rejects m below 2") {
    CHECK_THROWS_AS(build_pegasus(1), InvalidParameter);
    CHECK_THROWS_AS(build_pegasus(0), InvalidParameter);
}

TEST_CASE("chimera shapes") {
    auto cell = build_chimera(1, 1, 4);
    CHECK(cell.node_count() == 8);
    CHECK(cell.edge_count() == 16);
    CHECK(graph_stats(cell).average_degree == 4.0);

    auto two = build_chimera(2, 1, 4);
    CHECK(two.node_count() == 16);
    CHECK(two.edge_count() == 36);

    auto tiny = build_chimera(1, 1, 1);
    CHECK(tiny.node_count() == 2);
    CHECK(tiny.edge_count() == 1);

    CHECK_THROWS_AS(build_chimera(0, 1, 4), InvalidParameter);
}

TEST_CASE("defect masks") {
    const auto g = build_pegasus(3);

    SUBCASE("empty mask is the identity") { CHECK(apply_defects(g, {}) == g); }

    SUBCASE("one node removes its incident couplers") {
        const QubitId q = g.nodes()[17];
        const auto d = g.degree(q);
        auto h = apply_defects(g, {{q}, {}});
        CHECK(h.node_count() == g.node_count() - 1);
        CHECK(h.edge_count() == g.edge_count() - d);
        CHECK_FALSE(h.is_active(q));
        CHECK(h.contains(q));
        CHECK(h.ideal_edges() == g.ideal_edges());
    }

    SUBCASE("one coupler") {
        const auto e = g.edges()[5];
        auto h = apply_defects(g, {{}, {e}});
        CHECK(h.edge_count() == g.edge_count() - 1);
        CHECK_FALSE(h.has_edge(e.a, e.b));
        CHECK(h.has_ideal_edge(e.a, e.b));
    }

    SUBCASE("unknown ids are rejected") {
        CHECK_THROWS_AS(apply_defects(g, {{QubitId{100000}}, {}}), InvalidParameter);
        QubitId far = g.nodes()[1];
        while (g.has_ideal_edge(g.nodes()[0], far)) far.value++;
        CHECK_THROWS_AS(apply_defects(g, {{}, {Coupler::make(g.nodes()[0], far)}}), InvalidParameter);
    }
}

TEST_CASE("pegasus m=16 with 133 dead qubits keeps 5627 active") {
    const auto g = build_pegasus(16);
    DefectMask mask;
    for (std::size_t i = 0; i < 133; ++i) mask.nodes.push_back(g.nodes()[i * 43]);
    auto h = apply_defects(g, mask);
    CHECK(h.node_count() == 5627);
}

TEST_CASE("graph stats edge cases") {
    HardwareGraph empty(CustomShape{}, {}, {});
    auto s = graph_stats(empty);
    CHECK(s.nodes == 0);
    CHECK(s.edges == 0);
    CHECK(s.max_degree == 0);
    CHECK(s.average_degree == 0.0);
}

TEST_CASE("graph JSON round-trip keeps the defect mask") {
    const auto g = build_pegasus(2);
    auto h = apply_defects(g, {{g.nodes()[3]}, {g.edges()[40]}});
    auto back = graph_from_json(to_json(h));
    CHECK(back == h);
    CHECK(back.node_count() == h.node_count());
    CHECK(back.edge_count() == h.edge_count());
    CHECK(family_name(back.family()) == "pegasus");

    auto c = build_chimera(2, 2, 4);
    CHECK(graph_from_json(to_json(c)) == c);
}

TEST_CASE("malformed graph JSON is a format error") {
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"nodes": 3})")), FormatError);
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::array()), FormatError);
}

}  // namespace rbm::topology
