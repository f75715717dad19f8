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
#include <string>
#include <vector>

#include <json.hpp>

#include "rbm/embedding.hpp"
#include "rbm/ising.hpp"
#include "rbm/samplers.hpp"

namespace rbm::decode {

struct DecodedSolution {
    ising::SpinConfig assignment;
    double energy = 0.0;
    std::string method;
    std::size_t read = 0;
    std::uint32_t replica = 0;          // replica (rbm) or sample set (sqa)
    std::vector<std::uint8_t> votes;    // qac: +1 voters per logical qubit
};

/// Minimum over all k * num_reads subsamples of a replica-major sample set
/// (variable r * n + i). Ties go to the smallest (read, replica).
DecodedSolution decode_rbm(const samplers::SampleSet& samples, std::uint32_t replicas, const ising::IsingProblem& p);
DecodedSolution decode_rbm(const samplers::SampleSet& samples, const embedding::ReplicaPartition& partition,
                           const ising::IsingProblem& p);

/// Physical QAC problem. Variable 4 * i + t is problem qubit t (t < 3) of
/// logical qubit i, variable 4 * i + 3 its penalty qubit.
struct QacProblem {
    ising::IsingProblem problem;
    std::vector<topology::QubitId> placement;
    std::uint32_t logical_n = 0;
    double alpha = 0.0;
};

/// h_i goes in full on each problem qubit of unit i and 3 * J_ij is split
/// evenly over the couplers of logical edge (i, j), so an aligned state
/// scores 3x its logical energy on the problem qubits. Each penalty coupler
/// gets alpha.
QacProblem build_qac_problem(const ising::IsingProblem& logical, const embedding::QacEncoding& enc, double alpha);

struct MajorityResult {
    std::vector<ising::SpinConfig> logical_reads;
    std::vector<double> energies;
    DecodedSolution best;
};

/// Majority of the three problem qubits per unit. With include_penalty the
/// penalty qubit votes too and a 2-2 split follows problem qubit 0.
MajorityResult decode_majority(const samplers::SampleSet& samples, const ising::IsingProblem& logical,
                               bool include_penalty = false);

/// Best read over k sample sets of the same problem; ties go to the
/// smallest (set, read).
DecodedSolution decode_sqa_repeat(const std::vector<samplers::SampleSet>& sets, const ising::IsingProblem& p);

nlohmann::json to_json(const DecodedSolution& d);
DecodedSolution solution_from_json(const nlohmann::json& j);
nlohmann::json to_json(const QacProblem& q);
QacProblem qac_problem_from_json(const nlohmann::json& j);

}  // namespace rbm::decode
