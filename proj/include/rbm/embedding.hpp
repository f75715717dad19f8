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

// Native embeddings: k disjoint isomorphic replica regions, K_{1,3} tilings
// for QAC, and the structure that supports both at once.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbm/graph.hpp"
#include "rbm/topology.hpp"

namespace rbm::embedding {

using topology::Coupler;
using topology::HardwareGraph;
using topology::QubitId;

/// k disjoint copies of one logical graph. iso_maps[r][i] is the physical
/// qubit that hosts logical vertex i in replica r.
struct ReplicaPartition {
    SimpleGraph logical_graph;
    std::vector<std::vector<QubitId>> iso_maps;

    std::uint32_t replica_count() const noexcept { return static_cast<std::uint32_t>(iso_maps.size()); }
    /// Sorted qubits of replica r.
    std::vector<QubitId> region(std::uint32_t r) const;

    friend bool operator==(const ReplicaPartition&, const ReplicaPartition&) = default;
};

/// Splits a Pegasus graph into k in {2, 4, 8} congruent coordinate blocks
/// (2x1, 2x2 and 4x2 tile grids). The iso maps are tile translations; a
/// qubit or coupler survives only if its image is active in every block, so
/// a defect anywhere is excised from all replicas.
ReplicaPartition partition_replicas(const HardwareGraph& g, std::uint32_t k);

/// Single replica covering every active qubit and coupler (k = 1).
ReplicaPartition whole_graph_partition(const HardwareGraph& g);

struct RegionReport {
    std::size_t nodes = 0;
    std::size_t induced_edges = 0;
};

struct PartitionReport {
    bool pass = false;
    bool disjoint = true;
    bool bijective = true;
    bool all_active = true;
    bool edges_preserved = true;
    /// Stronger than edges_preserved: the full induced subgraphs correspond.
    /// Defects outside the logical graph can make this false on a valid
    /// partition, so it does not gate `pass`.
    bool induced_isomorphic = true;
    std::vector<RegionReport> regions;
    std::vector<std::string> failures;
};

PartitionReport verify_partition(const ReplicaPartition& p, const HardwareGraph& g);

struct QacUnit {
    std::array<QubitId, 3> problem;
    QubitId penalty;
    friend bool operator==(const QacUnit&, const QacUnit&) = default;
};

/// Logical qubit i is units[i]. logical_edges[(i, j)] lists every hardware
/// coupler joining a problem qubit of i to a problem qubit of j.
struct QacEncoding {
    std::vector<QacUnit> units;
    std::map<VertexPair, std::vector<Coupler>> logical_edges;
    double penalty_weight = -1.0;

    friend bool operator==(const QacEncoding&, const QacEncoding&) = default;
};

/// Greedy K_{1,3} tiling: qubits are scanned in id order as penalty
/// candidates and each claims its first three unclaimed neighbours.
QacEncoding tile_qac(const HardwareGraph& g);

SimpleGraph logical_graph(const QacEncoding& e);

/// Units are disjoint active K_{1,3} stars and every listed logical coupler
/// is an active coupler between problem qubits of its two units. Reuses the
/// partition report; regions holds one entry with the unit count.
PartitionReport verify_qac(const QacEncoding& e, const HardwareGraph& g);

/// QAC and RBM on the same logical graph. `regions` is the physical replica
/// partition; encodings[r] is the QAC tiling inside region r (all k are
/// translates of each other); `logical` places one representative problem
/// qubit per unit, so each replica hosts the logical graph natively.
struct CombinedEmbedding {
    ReplicaPartition regions;
    std::vector<QacEncoding> encodings;
    ReplicaPartition logical;
};

/// k = 1 uses the whole graph; otherwise k must be a partition_replicas size.
CombinedEmbedding combine_qac_rbm(const HardwareGraph& g, std::uint32_t k);

nlohmann::json to_json(const ReplicaPartition& p);
nlohmann::json to_json(const QacEncoding& e);
nlohmann::json to_json(const CombinedEmbedding& c);
nlohmann::json to_json(const PartitionReport& r);
ReplicaPartition partition_from_json(const nlohmann::json& j);
QacEncoding encoding_from_json(const nlohmann::json& j);
CombinedEmbedding combined_from_json(const nlohmann::json& j);

}  // namespace rbm::embedding
