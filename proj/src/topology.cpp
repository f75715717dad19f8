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

#include "rbm/topology.hpp"

#include <algorithm>
#include <array>

#include "rbm/common.hpp"
#include "rbm/io.hpp"

namespace rbm::topology {

namespace {

constexpr std::uint32_t kPegasusTile = 12;
// Default vertical / horizontal offset lists of the vendor generator.
constexpr std::array<std::uint32_t, 12> kOffsetsVertical{2, 2, 2, 2, 10, 10, 10, 10, 6, 6, 6, 6};
constexpr std::array<std::uint32_t, 12> kOffsetsHorizontal{6, 6, 6, 6, 2, 2, 2, 2, 10, 10, 10, 10};

std::string edge_str(const Coupler& c) {
    return "(" + std::to_string(c.a.value) + "," + std::to_string(c.b.value) + ")";
}

template <typename T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::string family_name(const Family& f) {
    return std::visit(
        [](const auto& s) -> std::string {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, PegasusShape>) return "pegasus";
            else if constexpr (std::is_same_v<S, ChimeraShape>) return "chimera";
            else return "custom";
        },
        f);
}

HardwareGraph::HardwareGraph(Family family, std::vector<QubitId> ideal_nodes,
                             std::vector<Coupler> ideal_edges)
    : family_(std::move(family)), ideal_nodes_(std::move(ideal_nodes)), ideal_edges_(std::move(ideal_edges)) {
    std::sort(ideal_nodes_.begin(), ideal_nodes_.end());
    if (std::adjacent_find(ideal_nodes_.begin(), ideal_nodes_.end()) != ideal_nodes_.end())
        throw InvalidParameter("duplicate node in hardware graph");
    id_bound_ = ideal_nodes_.empty() ? 0 : ideal_nodes_.back().value + 1;
    present_.assign(id_bound_, 0);
    for (auto q : ideal_nodes_) present_[q.value] = 2;

    for (auto& e : ideal_edges_) {
        if (e.a == e.b) throw InvalidParameter("self-loop on qubit " + std::to_string(e.a.value));
        e = Coupler::make(e.a, e.b);
        if (!contains(e.a) || !contains(e.b))
            throw InvalidParameter("edge " + edge_str(e) + " references an unknown qubit");
    }
    std::sort(ideal_edges_.begin(), ideal_edges_.end());
    if (auto it = std::adjacent_find(ideal_edges_.begin(), ideal_edges_.end()); it != ideal_edges_.end())
        throw InvalidParameter("duplicate edge " + edge_str(*it));
    rebuild_active();
}

bool HardwareGraph::contains(QubitId q) const noexcept {
    return q.value < id_bound_ && present_[q.value] != 0;
}

bool HardwareGraph::is_active(QubitId q) const noexcept {
    return q.value < id_bound_ && present_[q.value] == 2;
}

std::span<const QubitId> HardwareGraph::neighbors(QubitId q) const {
    if (!is_active(q)) return {};
    return {adjacency_.data() + offsets_[q.value], offsets_[q.value + 1] - offsets_[q.value]};
}

bool HardwareGraph::has_edge(QubitId a, QubitId b) const {
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

bool HardwareGraph::has_ideal_edge(QubitId a, QubitId b) const {
    if (a == b) return false;
    return std::binary_search(ideal_edges_.begin(), ideal_edges_.end(), Coupler::make(a, b));
}

void HardwareGraph::rebuild_active() {
    for (auto q : ideal_nodes_) present_[q.value] = 2;
    for (auto q : defects_.nodes) present_[q.value] = 1;

    nodes_.clear();
    for (auto q : ideal_nodes_)
        if (present_[q.value] == 2) nodes_.push_back(q);

    edges_.clear();
    for (const auto& e : ideal_edges_) {
        if (!is_active(e.a) || !is_active(e.b)) continue;
        if (std::binary_search(defects_.edges.begin(), defects_.edges.end(), e)) continue;
        edges_.push_back(e);
    }

    offsets_.assign(id_bound_ + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.a.value + 1];
        ++offsets_[e.b.value + 1];
    }
    for (std::uint32_t i = 0; i < id_bound_; ++i) offsets_[i + 1] += offsets_[i];
    adjacency_.assign(edges_.size() * 2, QubitId{});
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        adjacency_[fill[e.a.value]++] = e.b;
        adjacency_[fill[e.b.value]++] = e.a;
    }
    for (std::uint32_t i = 0; i < id_bound_; ++i)
        std::sort(adjacency_.begin() + offsets_[i], adjacency_.begin() + offsets_[i + 1]);
}

HardwareGraph apply_defects(const HardwareGraph& g, const DefectMask& mask) {
    for (auto q : mask.nodes)
        if (!g.contains(q))
            throw InvalidParameter("defect mask references unknown qubit " + std::to_string(q.value));
    HardwareGraph out = g;
    for (auto e : mask.edges) {
        e = Coupler::make(e.a, e.b);
        if (!g.has_ideal_edge(e.a, e.b))
            throw InvalidParameter("defect mask references unknown coupler " + edge_str(e));
        out.defects_.edges.push_back(e);
    }
    out.defects_.nodes.insert(out.defects_.nodes.end(), mask.nodes.begin(), mask.nodes.end());
    sort_unique(out.defects_.nodes);
    sort_unique(out.defects_.edges);
    out.rebuild_active();
    return out;
}

bool operator==(const HardwareGraph& a, const HardwareGraph& b) {
    return a.family_ == b.family_ && a.ideal_nodes_ == b.ideal_nodes_ &&
           a.ideal_edges_ == b.ideal_edges_ && a.defects_ == b.defects_;
}

PegasusCoord pegasus_coordinates(std::uint32_t m, QubitId q) {
    const std::uint32_t m1 = m - 1;
    std::uint32_t r = q.value;
    PegasusCoord c;
    c.z = r % m1;
    r /= m1;
    c.k = r % kPegasusTile;
    r /= kPegasusTile;
    c.w = r % m;
    c.u = r / m;
    return c;
}

std::optional<QubitId> pegasus_linear(std::uint32_t m, const PegasusCoord& c) {
    if (m < 2 || c.u > 1 || c.w >= m || c.k >= kPegasusTile || c.z >= m - 1) return std::nullopt;
    return QubitId{((c.u * m + c.w) * kPegasusTile + c.k) * (m - 1) + c.z};
}

HardwareGraph build_pegasus(std::uint32_t m) {
    if (m < 2) throw InvalidParameter("pegasus size m must be >= 2, got " + std::to_string(m));
    const std::uint32_t m1 = m - 1;
    auto id = [&](std::uint32_t u, std::uint32_t w, std::uint32_t k, std::uint32_t z) {
        return QubitId{((u * m + w) * kPegasusTile + k) * m1 + z};
    };

    std::vector<QubitId> nodes(24u * m * m1);
    for (std::uint32_t i = 0; i < nodes.size(); ++i) nodes[i] = QubitId{i};

    std::vector<Coupler> edges;
    // External couplers: consecutive z along a qubit line.
    for (std::uint32_t u = 0; u < 2; ++u)
        for (std::uint32_t w = 0; w < m; ++w)
            for (std::uint32_t k = 0; k < kPegasusTile; ++k)
                for (std::uint32_t z = 0; z + 1 < m1; ++z)
                    edges.push_back(Coupler::make(id(u, w, k, z), id(u, w, k, z + 1)));
    // Odd couplers: pairs (2j, 2j+1) of parallel qubits.
    for (std::uint32_t u = 0; u < 2; ++u)
        for (std::uint32_t w = 0; w < m; ++w)
            for (std::uint32_t k = 0; k < kPegasusTile; k += 2)
                for (std::uint32_t z = 0; z < m1; ++z)
                    edges.push_back(Coupler::make(id(u, w, k, z), id(u, w, k + 1, z)));
    // Internal couplers: vertical (0,w,k,z) crosses horizontal (1,w',kk,z').
    for (std::uint32_t w = 0; w < m; ++w)
        for (std::uint32_t kk = 0; kk < kPegasusTile; ++kk) {
            const std::uint32_t k_lo = w == 0 ? kOffsetsHorizontal[kk] : 0;
            const std::uint32_t k_hi = w < m1 ? kPegasusTile : kOffsetsHorizontal[kk];
            for (std::uint32_t k = k_lo; k < k_hi; ++k)
                for (std::uint32_t z = 0; z < m1; ++z) {
                    const std::uint32_t hw = z + (kk < kOffsetsVertical[k] ? 1 : 0);
                    const std::uint32_t hz = w - (k < kOffsetsHorizontal[kk] ? 1 : 0);
                    edges.push_back(Coupler::make(id(0, w, k, z), id(1, hw, kk, hz)));
                }
        }
    return HardwareGraph(PegasusShape{m}, std::move(nodes), std::move(edges));
}

HardwareGraph build_chimera(std::uint32_t rows, std::uint32_t cols, std::uint32_t shore) {
    if (rows < 1 || cols < 1 || shore < 1)
        throw InvalidParameter("chimera rows, cols and shore must all be >= 1");
    auto id = [&](std::uint32_t i, std::uint32_t j, std::uint32_t u, std::uint32_t k) {
        return QubitId{((i * cols + j) * 2 + u) * shore + k};
    };
    std::vector<QubitId> nodes(2u * rows * cols * shore);
    for (std::uint32_t i = 0; i < nodes.size(); ++i) nodes[i] = QubitId{i};

    std::vector<Coupler> edges;
    for (std::uint32_t i = 0; i < rows; ++i)
        for (std::uint32_t j = 0; j < cols; ++j) {
            for (std::uint32_t a = 0; a < shore; ++a)
                for (std::uint32_t b = 0; b < shore; ++b)
                    edges.push_back(Coupler::make(id(i, j, 0, a), id(i, j, 1, b)));
            for (std::uint32_t k = 0; k < shore; ++k) {
                if (i + 1 < rows) edges.push_back(Coupler::make(id(i, j, 0, k), id(i + 1, j, 0, k)));
                if (j + 1 < cols) edges.push_back(Coupler::make(id(i, j, 1, k), id(i, j + 1, 1, k)));
            }
        }
    return HardwareGraph(ChimeraShape{rows, cols, shore}, std::move(nodes), std::move(edges));
}

GraphStats graph_stats(const HardwareGraph& g) {
    GraphStats s;
    s.nodes = g.node_count();
    s.edges = g.edge_count();
    for (auto q : g.nodes()) {
        const std::size_t d = g.degree(q);
        if (d >= s.degree_histogram.size()) s.degree_histogram.resize(d + 1, 0);
        ++s.degree_histogram[d];
        s.max_degree = std::max(s.max_degree, d);
    }
    s.average_degree = s.nodes == 0 ? 0.0 : 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.nodes);
    return s;
}

namespace {

nlohmann::json node_array(const std::vector<QubitId>& v) {
    auto a = nlohmann::json::array();
    for (auto q : v) a.push_back(q.value);
    return a;
}

nlohmann::json edge_array(const std::vector<Coupler>& v) {
    auto a = nlohmann::json::array();
    for (const auto& e : v) a.push_back({e.a.value, e.b.value});
    return a;
}

std::vector<QubitId> parse_nodes(const nlohmann::json& a) {
    if (!a.is_array()) throw FormatError("node list must be an array");
    std::vector<QubitId> out;
    out.reserve(a.size());
    for (const auto& v : a) {
        if (!v.is_number_unsigned()) throw FormatError("node ids must be non-negative integers");
        out.push_back(QubitId{v.get<std::uint32_t>()});
    }
    return out;
}

std::vector<Coupler> parse_edges(const nlohmann::json& a) {
    if (!a.is_array()) throw FormatError("edge list must be an array");
    std::vector<Coupler> out;
    out.reserve(a.size());
    for (const auto& e : a) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
            throw FormatError("edges must be [int, int] pairs");
        out.push_back(Coupler::make(QubitId{e[0].get<std::uint32_t>()}, QubitId{e[1].get<std::uint32_t>()}));
    }
    return out;
}

}  // namespace

nlohmann::json to_json(const DefectMask& mask) {
    return {{"nodes", node_array(mask.nodes)}, {"edges", edge_array(mask.edges)}};
}

nlohmann::json to_json(const HardwareGraph& g) {
    nlohmann::json j;
    j["family"] = family_name(g.family());
    if (const auto* p = std::get_if<PegasusShape>(&g.family())) {
        j["params"] = {{"m", p->m}};
    } else if (const auto* c = std::get_if<ChimeraShape>(&g.family())) {
        j["params"] = {{"rows", c->rows}, {"cols", c->cols}, {"shore", c->shore}};
    } else {
        j["params"] = {{"ideal_nodes", node_array(g.ideal_nodes())}, {"ideal_edges", edge_array(g.ideal_edges())}};
    }
    j["nodes"] = node_array(g.nodes());
    j["edges"] = edge_array(g.edges());
    j["defects"] = to_json(g.defects());
    return j;
}

nlohmann::json to_json(const GraphStats& s) {
    return {{"nodes", s.nodes},
            {"edges", s.edges},
            {"degree_histogram", s.degree_histogram},
            {"max_degree", s.max_degree},
            {"average_degree", s.average_degree}};
}

DefectMask defects_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw FormatError("defect mask must be a JSON object");
    const nlohmann::json& src = j.contains("defects") ? j.at("defects") : j;
    DefectMask mask;
    if (src.contains("nodes")) mask.nodes = parse_nodes(src.at("nodes"));
    if (src.contains("edges")) mask.edges = parse_edges(src.at("edges"));
    return mask;
}

HardwareGraph graph_from_json(const nlohmann::json& j) {
    const auto family = io::required<std::string>(j, "family");
    const auto params = io::required<nlohmann::json>(j, "params");
    HardwareGraph ideal;
    try {
        if (family == "pegasus") {
            ideal = build_pegasus(io::required<std::uint32_t>(params, "m"));
        } else if (family == "chimera") {
            ideal = build_chimera(io::required<std::uint32_t>(params, "rows"),
                                  io::required<std::uint32_t>(params, "cols"),
                                  io::required<std::uint32_t>(params, "shore"));
        } else if (family == "custom") {
            ideal = HardwareGraph(CustomShape{}, parse_nodes(io::required<nlohmann::json>(params, "ideal_nodes")),
                                  parse_edges(io::required<nlohmann::json>(params, "ideal_edges")));
        } else {
            throw FormatError("unknown graph family '" + family + "'");
        }
    } catch (const InvalidParameter& e) {
        throw FormatError(std::string("invalid graph parameters: ") + e.what());
    }
    HardwareGraph g = ideal;
    if (j.contains("defects")) {
        try {
            g = apply_defects(ideal, defects_from_json(j.at("defects")));
        } catch (const InvalidParameter& e) {
            throw FormatError(std::string("invalid defect list: ") + e.what());
        }
    }
    auto nodes = parse_nodes(io::required<nlohmann::json>(j, "nodes"));
    auto edges = parse_edges(io::required<nlohmann::json>(j, "edges"));
    std::sort(nodes.begin(), nodes.end());
    std::sort(edges.begin(), edges.end());
    if (nodes != g.nodes()) throw FormatError("graph file node list disagrees with its family and defects");
    if (edges != g.edges()) throw FormatError("graph file edge list disagrees with its family and defects");
    return g;
}

}  // namespace rbm::topology
