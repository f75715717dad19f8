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

#include "rbm/ising.hpp"
#include "rbm/topology.hpp"

namespace rbm::samplers {

using topology::QubitId;

struct AnnealParams {
    std::uint32_t num_reads = 100;
    std::uint32_t sweeps = 1000;
    std::uint64_t seed = 0;
    double t_hot = 10.0;
    double t_cold = 0.05;

    void validate() const;
    friend bool operator==(const AnnealParams&, const AnnealParams&) = default;
};

/// Constant h offset on a set of hardware qubits.
struct RegionBias {
    std::vector<QubitId> qubits;
    double delta = 0.0;
    friend bool operator==(const RegionBias&, const RegionBias&) = default;
};

/// Persistent hardware miscalibration. Offsets depend only on chip_seed and
/// the hardware qubit (or coupler), never on the read or call:
///   h_q += sigma_h * N(derive_seed(chip_seed, {tag::noise_h, q}))
///   J_qr *= 1 + sigma_J * N(derive_seed(chip_seed, {tag::noise_j, q, r}))
/// plus delta for every region containing q.
struct NoiseModel {
    double sigma_h = 0.0;
    double sigma_J = 0.0;
    std::vector<RegionBias> region_bias;
    std::uint64_t chip_seed = 0;

    void validate() const;
    friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

/// Problem as seen by the noisy sampler. placement[v] is the hardware qubit
/// of variable v; without one, variable ids stand in for qubit ids and
/// region_bias must be empty.
ising::IsingProblem perturb(const ising::IsingProblem& p, const NoiseModel& noise,
                            const std::vector<QubitId>* placement = nullptr);

struct SampleSet {
    std::vector<ising::SpinConfig> reads;
    std::vector<double> energies;  // clean-problem energies
    std::string sampler;
    nlohmann::json params = nlohmann::json::object();
    std::string problem_hash;

    std::size_t size() const noexcept { return reads.size(); }
    /// Lowest energy, first such read on ties. Throws on an empty set.
    std::size_t best_index() const;
    double min_energy() const { return energies.at(best_index()); }
};

/// Fingerprint of the canonical problem JSON.
std::string problem_hash(const ising::IsingProblem& p);

/// Single-spin Metropolis annealing, geometric schedule t_hot -> t_cold, one
/// temperature per sweep. Read r starts from a random state drawn from
/// derive_seed(seed, {tag::read, r}); reads run in parallel with results
/// independent of the thread count.
SampleSet sample_sa(const ising::IsingProblem& p, const AnnealParams& params, const NoiseModel* noise = nullptr,
                    const std::vector<QubitId>* placement = nullptr);

struct ExactResult {
    double min_energy = 0.0;
    std::vector<ising::SpinConfig> minimizers;  // in enumeration order
    bool truncated = false;                     // more minimizers than kept
};

/// Exhaustive Gray-code search. Throws InvalidParameter when n > cap.
ExactResult solve_exact(const ising::IsingProblem& p, std::uint32_t cap = 24, std::size_t max_minimizers = 64);

/// Writes the text triple format for *.txt paths, JSON otherwise.
void export_problem(const ising::IsingProblem& p, const std::string& path);
ising::IsingProblem import_problem(const std::string& path);

nlohmann::json to_json(const SampleSet& s);
/// Validates dimension and spin values against p and recomputes every
/// energy; stored energies that disagree are replaced and logged.
SampleSet samples_from_json(const nlohmann::json& j, const ising::IsingProblem& p);
SampleSet import_samples(const std::string& path, const ising::IsingProblem& p);

nlohmann::json to_json(const AnnealParams& a);
AnnealParams anneal_from_json(const nlohmann::json& j);
nlohmann::json to_json(const NoiseModel& n);
NoiseModel noise_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExactResult& r);

}  // namespace rbm::samplers
