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

#include "rbm/graph.hpp"

#include <algorithm>
#include <string>

#include "rbm/common.hpp"

namespace rbm {

SimpleGraph::SimpleGraph(std::uint32_t n, std::vector<VertexPair> edges) : n_(n) {
    for (auto& e : edges) {
        if (e.first == e.second)
            throw InvalidParameter("self-loop on vertex " + std::to_string(e.first));
        if (e.first >= n || e.second >= n)
            throw InvalidParameter("edge endpoint out of range (" + std::to_string(e.first) + "," +
                                   std::to_string(e.second) + ") for " + std::to_string(n) +
                                   " vertices");
        e = canonical_pair(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    std::vector<std::uint32_t> degree(n_, 0);
    for (const auto& [a, b] : edges_) {
        ++degree[a];
        ++degree[b];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::uint32_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
    adjacency_.assign(offsets_[n_], 0);
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [a, b] : edges_) {
        adjacency_[fill[a]++] = b;
        adjacency_[fill[b]++] = a;
    }
    for (std::uint32_t v = 0; v < n_; ++v)
        std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
}

std::span<const std::uint32_t> SimpleGraph::neighbors(std::uint32_t v) const {
    if (v >= n_) return {};
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool SimpleGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

}  // namespace rbm
