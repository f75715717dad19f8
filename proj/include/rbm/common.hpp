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
#include <functional>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rbm {

enum class ErrorKind {
    invalid_parameter,
    contract,
    infeasible,
    io,
    format,
};

/// Base of every exception thrown by the core. The kind is what the C API
/// turns into a status code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct InvalidParameter : Error {
    explicit InvalidParameter(const std::string& w) : Error(ErrorKind::invalid_parameter, w) {}
};
struct ContractViolation : Error {
    explicit ContractViolation(const std::string& w) : Error(ErrorKind::contract, w) {}
};
struct EmbeddingInfeasible : Error {
    explicit EmbeddingInfeasible(const std::string& w) : Error(ErrorKind::infeasible, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorKind::io, w) {}
};
struct FormatError : Error {
    explicit FormatError(const std::string& w) : Error(ErrorKind::format, w) {}
};

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives a stream seed from a root seed and a path of integer tags, e.g.
/// derive_seed(seed, {tag::loop, loop_index}).
std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) noexcept;

/// Stream tags. Values are part of the reproducibility contract; never
/// renumber them.
namespace tag {
inline constexpr std::uint64_t planted = 1;
inline constexpr std::uint64_t select = 2;
inline constexpr std::uint64_t loop = 3;
inline constexpr std::uint64_t read = 4;
inline constexpr std::uint64_t noise_h = 5;
inline constexpr std::uint64_t noise_j = 6;
inline constexpr std::uint64_t instance = 7;
inline constexpr std::uint64_t sampler = 8;
inline constexpr std::uint64_t cell = 9;
}  // namespace tag

/// Portable random source: std::mt19937_64 (bit-exact across standard
/// libraries) with hand-written draws, since the std distributions are
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n); n > 0. Rejection sampling, unbiased.
    std::uint64_t below(std::uint64_t n);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller (one value per call).
    double normal();

private:
    std::mt19937_64 engine_;
};

/// FNV-1a, 64 bit. Used for problem fingerprints and config hashes.
std::uint64_t fnv1a64(std::string_view data) noexcept;
std::string hex64(std::uint64_t v);

/// Diagnostics go through a replaceable sink (stderr by default).
using LogSink = std::function<void(std::string_view)>;
void set_log_sink(LogSink sink);
void log_warning(std::string_view message);

/// Worker count for parallel loops: explicit setting, else the
/// ANNEAL_RBM_THREADS environment variable, else hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index
/// runs exactly once; callers write results into per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

const char* version_string() noexcept;

}  // namespace rbm
