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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbm/graph.hpp"
#include "rbm/topology.hpp"

namespace rbm::embedding {
struct ReplicaPartition;
}

namespace rbm::ising {

using Spin = std::int8_t;

/// Assignment of +1/-1 to every variable of a problem.
class SpinConfig {
public:
    SpinConfig() = default;
    /// Throws InvalidParameter if any entry is not exactly -1 or +1.
    explicit SpinConfig(std::vector<Spin> spins);
    static SpinConfig filled(std::size_t n, Spin value);

    std::size_t size() const noexcept { return spins_.size(); }
    Spin operator[](std::size_t i) const { return spins_[i]; }
    std::span<const Spin> spins() const noexcept { return spins_; }
    SpinConfig flipped(std::size_t i) const;

    friend bool operator==(const SpinConfig&, const SpinConfig&) = default;

private:
    std::vector<Spin> spins_;
};

using LinearTerms = std::map<std::uint32_t, double>;
using QuadraticTerms = std::map<VertexPair, double>;

/// Sparse Ising objective sum_{i<j} J_ij s_i s_j + sum_i h_i s_i over n
/// variables. Zero coefficients are never stored.
class IsingProblem {
public:
    IsingProblem() = default;
    /// Validates canonical keys, index range and the absence of zeros.
    IsingProblem(std::uint32_t n, LinearTerms h, QuadraticTerms j);

    std::uint32_t variable_count() const noexcept { return n_; }
    const LinearTerms& linear() const noexcept { return h_; }
    const QuadraticTerms& quadratic() const noexcept { return j_; }
    double linear(std::uint32_t i) const;
    double quadratic(std::uint32_t a, std::uint32_t b) const;

    /// Vertices 0..n-1, one edge per nonzero coupler.
    SimpleGraph ising_graph() const;

    friend bool operator==(const IsingProblem&, const IsingProblem&) = default;

private:
    std::uint32_t n_ = 0;
    LinearTerms h_;
    QuadraticTerms j_;
};

/// Accumulates contributions; build() drops terms that summed to zero.
class ProblemBuilder {
public:
    explicit ProblemBuilder(std::uint32_t n) : n_(n) {}
    void add_linear(std::uint32_t i, double v);
    void add_quadratic(std::uint32_t a, std::uint32_t b, double v);
    IsingProblem build() const;

private:
    std::uint32_t n_;
    LinearTerms h_;
    QuadraticTerms j_;
};

/// Objective value; throws InvalidParameter on a length mismatch.
double energy(const IsingProblem& p, const SpinConfig& s);
double energy(const IsingProblem& p, std::span<const Spin> s);

/// J_ij -> J_ij t_i t_j, h_i -> h_i t_i.
IsingProblem gauge_transform(const IsingProblem& p, const SpinConfig& t);
/// s_i -> s_i t_i.
SpinConfig gauge_spins(const SpinConfig& s, const SpinConfig& t);

/// k copies of a logical problem laid out replica-major: variable
/// r * logical_n + i is logical variable i of replica r, placed on physical
/// qubit placement[r * logical_n + i].
struct ReplicatedProblem {
    IsingProblem problem;
    std::uint32_t replicas = 0;
    std::uint32_t logical_n = 0;
    std::vector<topology::QubitId> placement;

    std::uint32_t variable(std::uint32_t replica, std::uint32_t logical) const {
        return replica * logical_n + logical;
    }
};

/// Builds Is^(k). The partition's logical graph must contain p's Ising graph;
/// with a host graph every replica's physical couplers are checked too.
/// Throws EmbeddingInfeasible naming the replica and missing element.
ReplicatedProblem replicate(const IsingProblem& p, const embedding::ReplicaPartition& partition,
                            const topology::HardwareGraph* host = nullptr);

/// Sub-problem on one replica's variables, relabeled to logical ids.
IsingProblem replica_problem(const ReplicatedProblem& rp, std::uint32_t replica);

nlohmann::json to_json(const IsingProblem& p);
IsingProblem problem_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SpinConfig& s);
SpinConfig spins_from_json(const nlohmann::json& j);

/// "i j value" triples, "i i value" for linear terms; a "# n=<count>"
/// comment line carries the variable count.
std::string to_text(const IsingProblem& p);
IsingProblem problem_from_text(const std::string& text);

}  // namespace rbm::ising
