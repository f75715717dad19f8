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
#include <span>
#include <utility>
#include <vector>

namespace rbm {

using VertexPair = std::pair<std::uint32_t, std::uint32_t>;

/// Orders a pair so that first < second.
constexpr VertexPair canonical_pair(std::uint32_t a, std::uint32_t b) noexcept {
    return a < b ? VertexPair{a, b} : VertexPair{b, a};
}

/// Simple undirected graph over vertices 0..n-1: no self-loops, no parallel
/// edges. Edges are kept sorted and canonical, adjacency lists sorted.
class SimpleGraph {
public:
    SimpleGraph() = default;
    /// Throws InvalidParameter on self-loops or out-of-range endpoints;
    /// duplicate edges are merged.
    SimpleGraph(std::uint32_t n, std::vector<VertexPair> edges);

    std::uint32_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<VertexPair>& edges() const noexcept { return edges_; }
    std::span<const std::uint32_t> neighbors(std::uint32_t v) const;
    std::size_t degree(std::uint32_t v) const { return neighbors(v).size(); }
    bool has_edge(std::uint32_t a, std::uint32_t b) const;

    double average_degree() const noexcept {
        return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / n_;
    }

    friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::uint32_t n_ = 0;
    std::vector<VertexPair> edges_;
    std::vector<std::uint32_t> offsets_{0};
    std::vector<std::uint32_t> adjacency_;
};

}  // namespace rbm
