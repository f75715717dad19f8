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

#include <cstdio>
#include <filesystem>

#include <doctest.h>

#include "rbm/common.hpp"
#include "rbm/embedding.hpp"
#include "rbm/ising.hpp"
#include "rbm/planted.hpp"
#include "rbm/samplers.hpp"
#include "rbm/topology.hpp"

namespace rbm::samplers {

using ising::IsingProblem;
using ising::ProblemBuilder;
using ising::SpinConfig;

namespace {

IsingProblem single_field(double h) {
    ProblemBuilder b(1);
    b.add_linear(0, h);
    return b.build();
}

IsingProblem pair(double j) {
    ProblemBuilder b(2);
    b.add_quadratic(0, 1, j);
    return b.build();
}

AnnealParams quick(std::uint32_t reads, std::uint32_t sweeps, std::uint64_t seed) {
    AnnealParams a;
    a.num_reads = reads;
    a.sweeps = sweeps;
    a.seed = seed;
    return a;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("rbm_unit_" + name)).string();
}

}  // namespace

TEST_CASE("single spin settles against its field") {
    auto set = sample_sa(single_field(1.0), quick(20, 50, 1));
    for (const auto& r : set.reads) CHECK(r[0] == -1);
    CHECK(set.min_energy() == -1.0);
}

TEST_CASE("ferromagnetic pair aligns") {
    auto set = sample_sa(pair(-1.0), quick(20, 200, 2));
    CHECK(set.min_energy() == -1.0);
    for (const auto& r : set.reads) CHECK(r[0] == r[1]);
}

TEST_CASE("annealing finds planted ground states of small instances") {
    const auto region = embedding::partition_replicas(topology::build_pegasus(3), 4).logical_graph;
    const auto cover = planted::build_loop_cover(region);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto inst = planted::generate_instance(cover, {10, 2, 0.08, 1.0, seed});
        auto set = sample_sa(inst.problem, quick(20, 1000, seed));
        CHECK(set.min_energy() == inst.planted_energy());
    }
}

TEST_CASE("sampling is deterministic and thread-count independent") {
    const auto region = embedding::partition_replicas(topology::build_pegasus(3), 2).logical_graph;
    auto inst = planted::generate_instance(planted::build_loop_cover(region), {10, 2, 0.08, 1.0, 4});
    set_thread_count(1);
    auto a = sample_sa(inst.problem, quick(8, 100, 7));
    set_thread_count(3);
    auto b = sample_sa(inst.problem, quick(8, 100, 7));
    set_thread_count(0);
    CHECK(to_json(a).dump() == to_json(b).dump());
    auto c = sample_sa(inst.problem, quick(8, 100, 8));
    CHECK(to_json(a).dump() != to_json(c).dump());
}

TEST_CASE("anneal parameters are validated") {
    CHECK_THROWS_AS(sample_sa(pair(1), quick(0, 10, 0)), InvalidParameter);
    CHECK_THROWS_AS(sample_sa(pair(1), quick(1, 0, 0)), InvalidParameter);
    AnnealParams bad = quick(1, 10, 0);
    bad.t_cold = bad.t_hot;
    CHECK_THROWS_AS(sample_sa(pair(1), bad), InvalidParameter);
    CHECK_THROWS_AS(sample_sa(IsingProblem(0, {}, {}), quick(1, 1, 0)), InvalidParameter);
}

TEST_CASE("noise model") {
    const auto p = pair(-1.0);
    const std::vector<QubitId> placement{QubitId{10}, QubitId{11}};

    SUBCASE("offsets depend on the hardware qubit only") {
        NoiseModel n;
        n.sigma_h = 0.5;
        n.sigma_J = 0.1;
        n.chip_seed = 3;
        auto a = perturb(p, n, &placement);
        auto b = perturb(p, n, &placement);
        CHECK(a == b);
        CHECK(a.linear(0) != 0.0);
        CHECK(a.linear(0) != a.linear(1));
        const std::vector<QubitId> moved{QubitId{11}, QubitId{10}};
        auto c = perturb(p, n, &moved);
        CHECK(c.linear(0) == a.linear(1));
        CHECK(c.quadratic(0, 1) == a.quadratic(0, 1));
    }

    SUBCASE("region bias shifts h on its qubits") {
        NoiseModel n;
        n.region_bias.push_back({{QubitId{11}}, 0.25});
        auto a = perturb(p, n, &placement);
        CHECK(a.linear(0) == 0.0);
        CHECK(a.linear(1) == 0.25);
        CHECK(a.quadratic(0, 1) == -1.0);
        CHECK_THROWS_AS(perturb(p, n), InvalidParameter);
        CHECK_THROWS_AS(sample_sa(p, quick(1, 1, 0), &n), InvalidParameter);
    }

    SUBCASE("reported energies are clean") {
        NoiseModel n;
        n.region_bias.push_back({{QubitId{10}, QubitId{11}}, 5.0});
        auto set = sample_sa(p, quick(10, 100, 1), &n, &placement);
        for (std::size_t r = 0; r < set.size(); ++r) CHECK(set.energies[r] == ising::energy(p, set.reads[r]));
        // A strong uniform field drives both spins down.
        for (const auto& r : set.reads) CHECK(r == SpinConfig({-1, -1}));
        CHECK(set.params.contains("noise"));
    }

    SUBCASE("noise JSON round-trip") {
        NoiseModel n{0.1, 0.2, {{{QubitId{1}, QubitId{2}}, -0.5}}, 9};
        CHECK(noise_from_json(to_json(n)) == n);
        NoiseModel bad;
        bad.sigma_h = -1;
        CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    }
}

TEST_CASE("exact solver") {
    auto r = solve_exact(pair(1.0));
    CHECK(r.min_energy == -1.0);
    CHECK(r.minimizers == std::vector<SpinConfig>{SpinConfig({-1, 1}), SpinConfig({1, -1})});
    CHECK_FALSE(r.truncated);

    auto empty = solve_exact(IsingProblem(0, {}, {}));
    CHECK(empty.min_energy == 0.0);
    REQUIRE(empty.minimizers.size() == 1);
    CHECK(empty.minimizers[0].size() == 0);

    CHECK_THROWS_WITH_AS(solve_exact(IsingProblem(25, {}, {}), 24), doctest::Contains("cap of 24"),
                         InvalidParameter);

    auto flat = solve_exact(IsingProblem(8, {}, {}), 24, 10);
    CHECK(flat.minimizers.size() == 10);
    CHECK(flat.truncated);
}

TEST_CASE("exact solver agrees with planted energies") {
    const auto region = embedding::partition_replicas(topology::build_pegasus(2), 2).logical_graph;
    const auto cover = planted::build_loop_cover(region);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = planted::generate_instance(cover, {9, 2, 0.08, seed % 2 ? 0.7 : 1.0, seed});
        auto r = solve_exact(inst.problem, 24, 1u << 12);
        CHECK_FALSE(r.truncated);
        CHECK(r.min_energy == inst.planted_energy());
        CHECK(std::find(r.minimizers.begin(), r.minimizers.end(), inst.planted) != r.minimizers.end());
    }
}

TEST_CASE("sample files") {
    const auto p = pair(-2.0);
    auto set = sample_sa(p, quick(4, 20, 1));

    SUBCASE("round-trip") {
        auto back = samples_from_json(to_json(set), p);
        CHECK(back.reads == set.reads);
        CHECK(back.energies == set.energies);
        CHECK(back.problem_hash == set.problem_hash);
    }

    SUBCASE("zero entry is rejected") {
        auto j = to_json(set);
        j["reads"][1][0] = 0;
        CHECK_THROWS_AS(samples_from_json(j, p), FormatError);
    }

    SUBCASE("dimension mismatch is rejected") {
        auto j = to_json(set);
        j["reads"][0] = {1, 1, 1};
        CHECK_THROWS_AS(samples_from_json(j, p), FormatError);
    }

    SUBCASE("wrong problem is rejected") { CHECK_THROWS_AS(samples_from_json(to_json(set), pair(1.0)), FormatError); }

    SUBCASE("wrong energies are recomputed and logged") {
        auto j = to_json(set);
        j["energies"][0] = 123.0;
        std::vector<std::string> log;
        set_log_sink([&](std::string_view m) { log.emplace_back(m); });
        auto back = samples_from_json(j, p);
        set_log_sink(nullptr);
        CHECK(back.energies == set.energies);
        REQUIRE(log.size() == 1);
        CHECK(log[0].find("recomputed") != std::string::npos);
    }

    SUBCASE("external files without hash or energies") {
        auto j = nlohmann::json::parse(R"({"reads": [[1, 1], [1, -1]]})");
        auto back = samples_from_json(j, p);
        CHECK(back.energies == std::vector<double>{-2.0, 2.0});
        CHECK(back.sampler == "external");
    }
}

TEST_CASE("problem export and import") {
    ProblemBuilder b(3);
    b.add_linear(0, 0.5);
    b.add_quadratic(0, 2, -1.25);
    const auto p = b.build();
    for (const char* name : {"problem.json", "problem.txt"}) {
        const auto path = temp_path(name);
        export_problem(p, path);
        CHECK(import_problem(path) == p);
        std::filesystem::remove(path);
    }
    CHECK_THROWS_AS(import_problem(temp_path("does_not_exist.json")), IoError);
}

}  // namespace rbm::samplers
