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
#include <limits>

#include <doctest.h>

#include "rbm/common.hpp"
#include "rbm/embedding.hpp"
#include "rbm/planted.hpp"
#include "rbm/topology.hpp"

namespace rbm::planted {

namespace {

SimpleGraph cycle(std::uint32_t n) {
    std::vector<VertexPair> e;
    for (std::uint32_t i = 0; i < n; ++i) e.push_back(canonical_pair(i, (i + 1) % n));
    return SimpleGraph(n, e);
}

// Plain enumeration, independent of the library's Gray-code solver.
double brute_minimum(const ising::IsingProblem& p) {
    const auto n = p.variable_count();
    double best = std::numeric_limits<double>::infinity();
    std::vector<ising::Spin> s(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::uint32_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1 ? 1 : -1;
        double e = 0.0;
        for (const auto& [pr, v] : p.quadratic()) e += v * s[pr.first] * s[pr.second];
        for (const auto& [i, v] : p.linear()) e += v * s[i];
        best = std::min(best, e);
    }
    return best;
}

std::map<VertexPair, int> edge_uses(const LoopCover& c) {
    std::map<VertexPair, int> uses;
    for (const auto& l : c.loops)
        for (std::size_t t = 0; t < l.length(); ++t) ++uses[l.edge(t)];
    return uses;
}

SimpleGraph pegasus_region(std::uint32_t m, std::uint32_t k) {
    return embedding::partition_replicas(topology::build_pegasus(m), k).logical_graph;
}

}  // namespace

TEST_CASE("eulerian augmentation") {
    SUBCASE("even graph is unchanged") {
        auto mg = eulerian_augment(cycle(5));
        CHECK(mg.edges.size() == 5);
        CHECK(mg.added_count() == 0);
    }
    SUBCASE("path doubles both edges") {
        auto mg = eulerian_augment(SimpleGraph(3, {{0, 1}, {1, 2}}));
        CHECK(mg.added_count() == 2);
        for (auto d : mg.degrees()) CHECK(d % 2 == 0);
    }
    SUBCASE("4-cycle with chord duplicates the chord") {
        auto mg = eulerian_augment(SimpleGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}));
        REQUIRE(mg.added_count() == 1);
        const auto& added = mg.edges.back();
        CHECK(added.added);
        CHECK(canonical_pair(added.u, added.v) == VertexPair{0, 2});
    }
    SUBCASE("pegasus regions end with even degrees") {
        for (auto [m, k] : {std::pair{2u, 2u}, std::pair{4u, 4u}, std::pair{4u, 2u}}) {
            auto mg = eulerian_augment(pegasus_region(m, k));
            for (auto d : mg.degrees()) CHECK(d % 2 == 0);
        }
    }
}

TEST_CASE("loop decomposition") {
    SUBCASE("single cycle") {
        auto c = decompose_loops(eulerian_augment(cycle(6)));
        REQUIRE(c.loops.size() == 1);
        CHECK(c.loops[0].length() == 6);
    }
    SUBCASE("figure eight") {
        auto c = decompose_loops(eulerian_augment(SimpleGraph(5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}})));
        CHECK(c.loops.size() == 2);
        for (const auto& l : c.loops) CHECK(l.length() == 3);
    }
    SUBCASE("doubled path becomes 2-cycles") {
        auto c = build_loop_cover(SimpleGraph(3, {{0, 1}, {1, 2}}));
        CHECK(c.loops.size() == 2);
        for (const auto& l : c.loops) CHECK(l.length() == 2);
        auto m = c.multiplicity();
        CHECK(m.at({0, 1}) == 1);
        CHECK(m.at({1, 2}) == 1);
    }
    SUBCASE("odd degree is rejected") {
        Multigraph mg;
        mg.vertex_count = 3;
        mg.edges = {{0, 1, false}, {1, 2, false}};
        CHECK_THROWS_AS(decompose_loops(mg), ContractViolation);
    }
    SUBCASE("every multigraph edge is used once") {
        const auto g = pegasus_region(4, 4);
        auto mg = eulerian_augment(g);
        auto c = decompose_loops(mg);
        std::map<VertexPair, int> expected;
        for (const auto& e : mg.edges) ++expected[canonical_pair(e.u, e.v)];
        CHECK(edge_uses(c) == expected);
        for (const auto& [e, count] : c.multiplicity()) {
            CHECK(count >= 1);
            CHECK(count <= 2);
        }
        for (const auto& e : g.edges()) CHECK(c.multiplicity().count(e) == 1);
    }
}

TEST_CASE("single 4-loop instance") {
    LoopCover cover;
    cover.vertex_count = 4;
    cover.loops = {Loop{{0, 1, 2, 3}}};
    GeneratorParams params{2.0, 1.0, 1.0, 1.0, 17};
    auto inst = generate_instance(cover, params, ising::SpinConfig::filled(4, 1));
    std::vector<double> couplers;
    for (const auto& [e, v] : inst.problem.quadratic()) couplers.push_back(v);
    std::sort(couplers.begin(), couplers.end());
    CHECK(couplers == std::vector<double>{-2, -2, -2, 2});
    CHECK(inst.planted_energy() == -4.0);
    CHECK(brute_minimum(inst.problem) == -4.0);
    CHECK(clause_minimum(4, 2.0) == -4.0);
    CHECK(clause_minimum(2, 2.0) == -4.0);
    CHECK(verify_planted(inst).pass);
}

TEST_CASE("generator parameters are validated") {
    const auto cover = build_loop_cover(cycle(4));
    CHECK_THROWS_AS(generate_instance(cover, {2, 9, 0.08, 1, 0}), InvalidParameter);
    CHECK_THROWS_AS(generate_instance(cover, {9, 2, 1.5, 1, 0}), InvalidParameter);
    CHECK_THROWS_AS(generate_instance(cover, {9, 2, 0.08, 0.0, 0}), InvalidParameter);
    CHECK_THROWS_AS(generate_instance(cover, {9, 2, 0.08, 1.1, 0}), InvalidParameter);
    CHECK_THROWS_AS(generate_instance(LoopCover{3, {}}, {9, 2, 0.08, 1, 0}), ContractViolation);
    CHECK_THROWS_AS(generate_instance(cover, {9, 2, 0.08, 1, 0}, ising::SpinConfig::filled(3, 1)),
                    InvalidParameter);
}

TEST_CASE("beta selects a fraction of the loops") {
    const auto region = pegasus_region(4, 4);
    const auto cover = build_loop_cover(region);
    const auto total = cover.loops.size();
    auto full = generate_instance(cover, {10, 2, 0.08, 1.0, 3});
    CHECK(full.clauses.size() == total);
    for (const auto& e : region.edges()) {
        // Cancellation is possible only where two loops share the edge.
        if (cover.multiplicity().at(e) == 1) CHECK(full.problem.quadratic(e.first, e.second) != 0.0);
    }
    auto part = generate_instance(cover, {10, 2, 0.08, 0.7, 3});
    CHECK(part.clauses.size() == static_cast<std::size_t>(std::ceil(0.7 * static_cast<double>(total) - 1e-9)));
    CHECK(verify_planted(part).pass);
}

TEST_CASE("large magnitude frequency follows p_large") {
    const auto cover = build_loop_cover(pegasus_region(4, 2));
    std::size_t large = 0, loops = 0;
    for (std::uint64_t seed = 0; loops < 4000; ++seed) {
        auto inst = generate_instance(cover, {9, 2, 0.08, 1.0, seed});
        for (const auto& c : inst.clauses) {
            large += c.magnitude == 9.0;
            ++loops;
        }
    }
    const double f = static_cast<double>(large) / static_cast<double>(loops);
    CHECK(f > 0.06);
    CHECK(f < 0.10);
}

TEST_CASE("fresh instances verify, corrupted ones do not") {
    const auto cover = build_loop_cover(pegasus_region(2, 2));
    auto inst = generate_instance(cover, {10, 2, 0.08, 1.0, 5});
    auto rep = verify_planted(inst);
    CHECK(rep.pass);
    CHECK(rep.brute_forced);
    REQUIRE(rep.exact_minimum.has_value());
    CHECK(*rep.exact_minimum == rep.planted_energy);

    auto bad = inst;
    const auto [e, v] = *bad.problem.quadratic().begin();
    auto q = bad.problem.quadratic();
    q[e] = -v;
    bad.problem = ising::IsingProblem(bad.problem.variable_count(), bad.problem.linear(), q);
    auto bad_rep = verify_planted(bad);
    CHECK_FALSE(bad_rep.pass);
    CHECK_FALSE(bad_rep.failures.empty());
}

TEST_CASE("planted energy is the exhaustive minimum at n=16") {
    // Chimera (2,1,4) has 16 qubits.
    const auto g = topology::build_chimera(2, 1, 4);
    std::vector<VertexPair> edges;
    for (const auto& e : g.edges()) edges.emplace_back(e.a.value, e.b.value);
    const auto cover = build_loop_cover(SimpleGraph(16, edges));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto inst = generate_instance(cover, {11, 2, 0.5, seed % 2 ? 0.7 : 1.0, seed});
        CHECK(brute_minimum(inst.problem) == inst.planted_energy());
    }
}

TEST_CASE("instances are deterministic and round-trip") {
    const auto cover = build_loop_cover(pegasus_region(2, 2));
    const GeneratorParams params{9, 2, 0.08, 0.7, 99};
    auto a = generate_instance(cover, params);
    auto b = generate_instance(cover, params);
    CHECK(to_json(a).dump() == to_json(b).dump());
    auto c = generate_instance(cover, {9, 2, 0.08, 0.7, 100});
    CHECK(to_json(a).dump() != to_json(c).dump());

    auto back = instance_from_json(to_json(a));
    CHECK(back.problem == a.problem);
    CHECK(back.planted == a.planted);
    CHECK(back.cover == a.cover);
    CHECK(back.params == a.params);
    CHECK(back.clauses == a.clauses);
    CHECK(cover_from_json(to_json(cover)) == cover);
    CHECK(params_from_json(to_json(params)) == params);
}

}  // namespace rbm::planted
