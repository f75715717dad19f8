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

#include <atomic>
#include <set>
#include <vector>

#include <doctest.h>

#include "rbm/common.hpp"

namespace rbm {

TEST_CASE("derive_seed is a pure function of root and path") {
    CHECK(derive_seed(7, {1, 2}) == derive_seed(7, {1, 2}));
    CHECK(derive_seed(7, {1, 2}) != derive_seed(7, {2, 1}));
    CHECK(derive_seed(7, {1}) != derive_seed(8, {1}));
    CHECK(derive_seed(7, {}) != derive_seed(7, {0}));
}

TEST_CASE("Rng draws are reproducible and in range") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

    Rng r(1);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        auto v = r.below(5);
        CHECK(v < 5);
        seen.insert(v);
        double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(seen.size() == 5);

    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < 20000; ++i) {
        double x = r.normal();
        sum += x;
        sq += x * x;
    }
    CHECK(sum / 20000 == doctest::Approx(0.0).epsilon(0.05));
    CHECK(sq / 20000 == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("fnv1a64 matches published vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
    CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("parallel_for visits every index once, nested calls included") {
    set_thread_count(4);
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), [&](std::size_t i) {
        hits[i]++;
        parallel_for(3, [&](std::size_t) {});
    });
    for (auto& h : hits) CHECK(h.load() == 1);
    set_thread_count(0);
}

TEST_CASE("log sink receives warnings") {
    std::vector<std::string> got;
    set_log_sink([&](std::string_view m) { got.emplace_back(m); });
    log_warning("hello");
    set_log_sink(nullptr);
    REQUIRE(got.size() == 1);
    CHECK(got[0] == "hello");
}

}  // namespace rbm
