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

#include <doctest.h>

#include "rbm/common.hpp"
#include "rbm/decode.hpp"
#include "rbm/embedding.hpp"
#include "rbm/ising.hpp"
#include "rbm/planted.hpp"
#include "rbm/samplers.hpp"
#include "rbm/topology.hpp"

namespace rbm::decode {

using ising::IsingProblem;
using ising::ProblemBuilder;
using ising::Spin;
using ising::SpinConfig;
using samplers::SampleSet;
using topology::QubitId;

namespace {

SampleSet synthetic(const std::vector<std::vector<Spin>>& reads) {
    SampleSet s;
    for (const auto& r : reads) {
        s.reads.emplace_back(r);
        s.energies.push_back(0.0);
    }
    return s;
}

std::vector<Spin> concat(const SpinConfig& a, const SpinConfig& b) {
    std::vector<Spin> v(a.spins().begin(), a.spins().end());
    v.insert(v.end(), b.spins().begin(), b.spins().end());
    return v;
}

embedding::QacEncoding one_unit() {
    embedding::QacEncoding e;
    e.units.push_back({{QubitId{1}, QubitId{2}, QubitId{3}}, QubitId{0}});
    return e;
}

}  // namespace

TEST_CASE("rbm decoding picks the best replica") {
    const auto region = embedding::partition_replicas(topology::build_pegasus(2), 2).logical_graph;
    auto inst = planted::generate_instance(planted::build_loop_cover(region), {10, 2, 0.08, 1.0, 3});
    const auto& planted = inst.planted;
    // Corrupt by flipping the first vertex with a coupler.
    const auto corrupted = planted.flipped(inst.problem.quadratic().begin()->first.first);
    REQUIRE(ising::energy(inst.problem, corrupted) > inst.planted_energy());

    auto set = synthetic({concat(corrupted, planted)});
    auto d = decode_rbm(set, 2, inst.problem);
    CHECK(d.assignment == planted);
    CHECK(d.energy == inst.planted_energy());
    CHECK(d.read == 0);
    CHECK(d.replica == 1);
    CHECK(d.method == "rbm");

    auto first = synthetic({concat(planted, corrupted)});
    CHECK(decode_rbm(first, 2, inst.problem).replica == 0);

    CHECK_THROWS_AS(decode_rbm(set, 3, inst.problem), InvalidParameter);
    CHECK_THROWS_AS(decode_rbm(SampleSet{}, 2, inst.problem), ContractViolation);
}

TEST_CASE("rbm decoding with one replica is the best read") {
    ProblemBuilder b(3);
    b.add_quadratic(0, 1, 1);
    b.add_quadratic(1, 2, -1);
    const auto p = b.build();
    samplers::AnnealParams a;
    a.num_reads = 6;
    a.sweeps = 5;
    auto set = samplers::sample_sa(p, a);
    auto d = decode_rbm(set, 1, p);
    CHECK(d.energy == set.min_energy());
    CHECK(d.read == set.best_index());
}

TEST_CASE("ties go to the earliest read and replica") {
    ProblemBuilder b(2);
    b.add_quadratic(0, 1, -1);
    const auto p = b.build();
    auto set = synthetic({{1, -1, 1, 1}, {-1, -1, 1, 1}});
    auto d = decode_rbm(set, 2, p);
    CHECK(d.read == 0);
    CHECK(d.replica == 1);
}

TEST_CASE("QAC physical problem") {
    ProblemBuilder b(1);
    b.add_linear(0, 1.0);
    const auto logical = b.build();
    const auto q = build_qac_problem(logical, one_unit(), -1.0);
    CHECK(q.problem.variable_count() == 4);
    CHECK(q.logical_n == 1);
    CHECK(ising::energy(q.problem, SpinConfig::filled(4, -1)) == -6.0);

    // Flipping problem qubit 0 against its penalty qubit costs 2|alpha| on
    // that coupler, plus the change of its own field term.
    const SpinConfig agree({1, 1, 1, 1});
    const double d_field = 2.0 * logical.linear(0);
    CHECK(ising::energy(q.problem, agree.flipped(0)) - ising::energy(q.problem, agree) == 2.0 - d_field);

    const auto sqa = build_qac_problem(logical, one_unit(), 0.0);
    CHECK(sqa.problem.quadratic().empty());
    CHECK(sqa.problem.linear(3) == 0.0);

    CHECK_THROWS_AS(build_qac_problem(logical, one_unit(), 0.5), InvalidParameter);
    ProblemBuilder two(2);
    two.add_quadratic(0, 1, 1.0);
    CHECK_THROWS_AS(build_qac_problem(two.build(), one_unit(), -1.0), EmbeddingInfeasible);
}

TEST_CASE("QAC problem on a pegasus tiling keeps the logical spectrum") {
    const auto g = topology::build_pegasus(2);
    const auto enc = embedding::tile_qac(g);
    auto inst = planted::generate_instance(planted::build_loop_cover(embedding::logical_graph(enc)),
                                           {10, 2, 0.08, 1.0, 8});
    for (double alpha : {0.0, -1.0, -2.5}) {
        const auto q = build_qac_problem(inst.problem, enc, alpha);
        for (const auto& [e, v] : q.problem.quadratic()) CHECK(g.has_edge(q.placement[e.first], q.placement[e.second]));
        // Encoded planted state: problem energy x3 plus 3 alpha per unit.
        std::vector<Spin> phys;
        for (std::uint32_t i = 0; i < inst.problem.variable_count(); ++i)
            for (int t = 0; t < 4; ++t) phys.push_back(inst.planted[i]);
        CHECK(ising::energy(q.problem, SpinConfig(phys)) ==
              doctest::Approx(3.0 * inst.planted_energy() + 3.0 * alpha * inst.problem.variable_count()));
    }
    auto back = qac_problem_from_json(to_json(build_qac_problem(inst.problem, enc, -1.0)));
    CHECK(back.problem == build_qac_problem(inst.problem, enc, -1.0).problem);
}

TEST_CASE("majority vote") {
    ProblemBuilder b(1);
    b.add_linear(0, -1.0);
    const auto p = b.build();
    for (Spin pen : {Spin{1}, Spin{-1}})
        for (bool include : {false, true}) {
            auto set = synthetic({{1, 1, -1, pen}});
            auto r = decode_majority(set, p, include);
            CHECK(r.logical_reads[0] == SpinConfig({1}));
        }
    CHECK(decode_majority(synthetic({{-1, -1, -1, -1}}), p).logical_reads[0] == SpinConfig({-1}));
    CHECK(decode_majority(synthetic({{1, 1, 1, 1}}), p).logical_reads[0] == SpinConfig({1}));
    // A 2-2 split with the penalty qubit follows problem qubit 0.
    CHECK(decode_majority(synthetic({{-1, 1, 1, -1}}), p, true).logical_reads[0] == SpinConfig({-1}));

    auto r = decode_majority(synthetic({{-1, -1, 1, 1}, {1, 1, -1, -1}}), p);
    CHECK(r.energies == std::vector<double>{1.0, -1.0});
    CHECK(r.best.read == 1);
    CHECK(r.best.votes == std::vector<std::uint8_t>{2});
    for (std::size_t i = 0; i < r.energies.size(); ++i) CHECK(r.energies[i] == ising::energy(p, r.logical_reads[i]));

    CHECK_THROWS_AS(decode_majority(synthetic({{1, 1, 1}}), p), InvalidParameter);
}

TEST_CASE("sqa repeat equals rbm over concatenated reads") {
    const auto region = embedding::partition_replicas(topology::build_pegasus(3), 4).logical_graph;
    auto inst = planted::generate_instance(planted::build_loop_cover(region), {10, 2, 0.08, 1.0, 2});
    std::vector<SampleSet> sets;
    for (std::uint64_t k = 0; k < 3; ++k) {
        samplers::AnnealParams a;
        a.num_reads = 5;
        a.sweeps = 10;
        a.seed = k;
        sets.push_back(samplers::sample_sa(inst.problem, a));
    }
    auto sqa = decode_sqa_repeat(sets, inst.problem);

    // Read r of the joined set holds read r of every set side by side.
    std::vector<std::vector<Spin>> joined;
    for (std::size_t r = 0; r < 5; ++r) {
        std::vector<Spin> row;
        for (const auto& s : sets) row.insert(row.end(), s.reads[r].spins().begin(), s.reads[r].spins().end());
        joined.push_back(row);
    }
    auto rbm = decode_rbm(synthetic(joined), 3, inst.problem);
    CHECK(sqa.energy == rbm.energy);
    CHECK(sqa.method == "sqa");

    CHECK(decode_sqa_repeat({sets[0]}, inst.problem).energy == sets[0].min_energy());
    CHECK_THROWS_AS(decode_sqa_repeat({}, inst.problem), InvalidParameter);
}

TEST_CASE("decoded solution JSON") {
    DecodedSolution d;
    d.assignment = SpinConfig({1, -1});
    d.energy = -3;
    d.method = "rbm";
    d.read = 4;
    d.replica = 2;
    auto back = solution_from_json(to_json(d));
    CHECK(back.assignment == d.assignment);
    CHECK(back.energy == d.energy);
    CHECK(back.read == 4);
    CHECK(back.replica == 2);
    CHECK(to_json(d)["provenance"]["replica"] == 2);
}

}  // namespace rbm::decode
