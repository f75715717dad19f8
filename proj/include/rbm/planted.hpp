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

#pragma once

// Planted-solution instances from frustrated loops over an exact edge cover.
//
// The instance graph is made Eulerian by duplicating edges along shortest
// paths between greedily paired odd-degree vertices, the resulting multigraph
// is split into simple cycles (Hierholzer circuit, cut at repeated vertices),
// and each selected cycle contributes a frustrated clause that the planted
// configuration minimizes.
//
// Random streams (all std::mt19937_64, see rbm::Rng), for params.seed = S:
//   planted spins      derive_seed(S, {tag::planted})   one below(2) per vertex
//   loop selection     derive_seed(S, {tag::select})    partial Fisher-Yates
//   loop i clause      derive_seed(S, {tag::loop, i})   magnitude draw, then
//                                                       flipped edge position

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbm/graph.hpp"
#include "rbm/ising.hpp"

namespace rbm::planted {

struct MultiEdge {
    std::uint32_t u = 0, v = 0;
    bool added = false;  // parallel copy introduced by the augmentation
};

struct Multigraph {
    std::uint32_t vertex_count = 0;
    std::vector<MultiEdge> edges;

    std::vector<std::uint32_t> degrees() const;
    std::size_t added_count() const;
};

/// Every vertex of the result has even degree. Added edges are parallels of
/// existing ones and each original edge is duplicated at most once.
Multigraph eulerian_augment(const SimpleGraph& g);

/// A simple cycle; edge t joins vertices[t] and vertices[(t + 1) % L]. A
/// length-2 loop uses both copies of a doubled edge.
struct Loop {
    std::vector<std::uint32_t> vertices;

    std::size_t length() const noexcept { return vertices.size(); }
    VertexPair edge(std::size_t t) const {
        return canonical_pair(vertices[t], vertices[(t + 1) % vertices.size()]);
    }
    friend bool operator==(const Loop&, const Loop&) = default;
};

struct LoopCover {
    std::uint32_t vertex_count = 0;
    std::vector<Loop> loops;

    /// Number of distinct loops containing each edge.
    std::map<VertexPair, std::uint32_t> multiplicity() const;
    friend bool operator==(const LoopCover&, const LoopCover&) = default;
};

/// Throws ContractViolation if any vertex has odd degree.
LoopCover decompose_loops(const Multigraph& mg);

inline LoopCover build_loop_cover(const SimpleGraph& g) { return decompose_loops(eulerian_augment(g)); }

struct GeneratorParams {
    double large = 10.0;
    double small = 2.0;
    double p_large = 0.08;
    double beta = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
    friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

/// One frustrated clause: all loop edges at -magnitude in the planted gauge
/// except `flipped` (edge position), absent for length-2 loops.
struct LoopClause {
    std::uint32_t loop = 0;
    double magnitude = 0.0;
    std::optional<std::uint32_t> flipped;
    friend bool operator==(const LoopClause&, const LoopClause&) = default;
};

/// Minimum clause energy: -(L - 2) * magnitude, or -2 * magnitude for L = 2.
double clause_minimum(std::size_t length, double magnitude);

struct PlantedInstance {
    ising::IsingProblem problem;
    ising::SpinConfig planted;
    LoopCover cover;
    GeneratorParams params;
    std::vector<LoopClause> clauses;

    double planted_energy() const { return ising::energy(problem, planted); }
};

/// Selects ceil(beta * |loops|) loops, draws one magnitude per loop and sums
/// the clause couplers (h = 0). Throws ContractViolation on an empty
/// selection, InvalidParameter on bad params or planted length.
PlantedInstance generate_instance(const LoopCover& cover, const GeneratorParams& params,
                                  std::optional<ising::SpinConfig> planted = std::nullopt);

struct PlantedReport {
    bool pass = false;
    bool clauses_ok = true;
    bool brute_forced = false;
    double planted_energy = 0.0;
    double clause_sum = 0.0;
    std::optional<double> exact_minimum;
    std::vector<std::string> failures;
};

/// Checks that the problem is exactly the sum of its clauses, that the
/// planted configuration attains every clause minimum, and (n <= cap)
/// that it is a global minimum by exhaustive search.
PlantedReport verify_planted(const PlantedInstance& inst, std::uint32_t brute_force_cap = 24);

nlohmann::json to_json(const GeneratorParams& p);
GeneratorParams params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LoopCover& c);
LoopCover cover_from_json(const nlohmann::json& j);
/// Problem JSON extended with planted, params, loop_count, cover, clauses.
nlohmann::json to_json(const PlantedInstance& inst);
PlantedInstance instance_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PlantedReport& r);

}  // namespace rbm::planted
