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

// Hardware connectivity graphs (Pegasus, Chimera) with defect masks.
//
// Pegasus follows the vendor (u, w, k, z) coordinate scheme with the default
// offset lists; node ids are the lexicographic order of the coordinates,
//   id = ((u * m + w) * 12 + k) * (m - 1) + z.
// The full graph is built (no fabric trimming), so P(m) has 24 m (m - 1)
// nodes. Chimera uses id = ((row * cols + col) * 2 + u) * shore + k.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace rbm::topology {

struct QubitId {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(QubitId, QubitId) = default;
};

struct Coupler {
    QubitId a, b;  // a < b

    static Coupler make(QubitId x, QubitId y) { return x < y ? Coupler{x, y} : Coupler{y, x}; }
    friend constexpr auto operator<=>(const Coupler&, const Coupler&) = default;
};

struct PegasusShape {
    std::uint32_t m = 0;
    friend bool operator==(const PegasusShape&, const PegasusShape&) = default;
};
struct ChimeraShape {
    std::uint32_t rows = 0, cols = 0, shore = 0;
    friend bool operator==(const ChimeraShape&, const ChimeraShape&) = default;
};
/// Explicitly listed nodes and edges (test fixtures, extracted subgraphs).
struct CustomShape {
    friend bool operator==(const CustomShape&, const CustomShape&) = default;
};
using Family = std::variant<PegasusShape, ChimeraShape, CustomShape>;

std::string family_name(const Family& f);

struct DefectMask {
    std::vector<QubitId> nodes;
    std::vector<Coupler> edges;

    bool empty() const noexcept { return nodes.empty() && edges.empty(); }
    friend bool operator==(const DefectMask&, const DefectMask&) = default;
};

/// Immutable hardware graph. Keeps the ideal (defect-free) node and edge sets
/// next to the active ones so coordinates stay meaningful after masking.
class HardwareGraph {
public:
    HardwareGraph() = default;
    /// Validates the ideal sets (no self-loops, no duplicates, endpoints
    /// listed) and starts with an empty defect mask.
    HardwareGraph(Family family, std::vector<QubitId> ideal_nodes, std::vector<Coupler> ideal_edges);

    const Family& family() const noexcept { return family_; }
    /// Every node id is < id_bound().
    std::uint32_t id_bound() const noexcept { return id_bound_; }

    const std::vector<QubitId>& nodes() const noexcept { return nodes_; }
    const std::vector<Coupler>& edges() const noexcept { return edges_; }
    const std::vector<QubitId>& ideal_nodes() const noexcept { return ideal_nodes_; }
    const std::vector<Coupler>& ideal_edges() const noexcept { return ideal_edges_; }
    const DefectMask& defects() const noexcept { return defects_; }

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    bool contains(QubitId q) const noexcept;
    bool is_active(QubitId q) const noexcept;
    bool has_edge(QubitId a, QubitId b) const;
    bool has_ideal_edge(QubitId a, QubitId b) const;
    std::span<const QubitId> neighbors(QubitId q) const;
    std::size_t degree(QubitId q) const { return neighbors(q).size(); }

    friend HardwareGraph apply_defects(const HardwareGraph& g, const DefectMask& mask);
    friend bool operator==(const HardwareGraph& a, const HardwareGraph& b);

private:
    void rebuild_active();

    Family family_ = CustomShape{};
    std::uint32_t id_bound_ = 0;
    std::vector<QubitId> ideal_nodes_;
    std::vector<Coupler> ideal_edges_;
    DefectMask defects_;
    std::vector<std::uint8_t> present_;  // by id: 0 absent, 1 defective, 2 active
    std::vector<QubitId> nodes_;
    std::vector<Coupler> edges_;
    std::vector<std::uint32_t> offsets_;
    std::vector<QubitId> adjacency_;
};

struct PegasusCoord {
    std::uint32_t u = 0, w = 0, k = 0, z = 0;
    friend bool operator==(const PegasusCoord&, const PegasusCoord&) = default;
};

PegasusCoord pegasus_coordinates(std::uint32_t m, QubitId q);
/// Linear id, or nullopt when the coordinate is outside P(m).
std::optional<QubitId> pegasus_linear(std::uint32_t m, const PegasusCoord& c);

/// Defect-free Pegasus P(m); m >= 2.
HardwareGraph build_pegasus(std::uint32_t m);
/// Defect-free Chimera grid of K_{shore,shore} cells; all arguments >= 1.
HardwareGraph build_chimera(std::uint32_t rows, std::uint32_t cols, std::uint32_t shore);

/// Removes masked nodes (with incident edges) and masked edges from the
/// active sets. Masks accumulate; applying the same mask twice is a no-op.
/// Throws InvalidParameter when the mask names ids the graph does not have.
HardwareGraph apply_defects(const HardwareGraph& g, const DefectMask& mask);

struct GraphStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::vector<std::size_t> degree_histogram;  // [d] = active nodes of degree d
    std::size_t max_degree = 0;
    double average_degree = 0.0;
};

GraphStats graph_stats(const HardwareGraph& g);

nlohmann::json to_json(const HardwareGraph& g);
nlohmann::json to_json(const GraphStats& s);
nlohmann::json to_json(const DefectMask& mask);
/// Rebuilds Pegasus/Chimera graphs from their parameters and checks the
/// listed node/edge sets against the reconstruction.
HardwareGraph graph_from_json(const nlohmann::json& j);
/// Accepts {nodes:[...], edges:[[a,b],...]} or a full graph file (its
/// "defects" member is used).
DefectMask defects_from_json(const nlohmann::json& j);

}  // namespace rbm::topology

template <>
struct std::hash<rbm::topology::QubitId> {
    std::size_t operator()(rbm::topology::QubitId q) const noexcept { return q.value; }
};
