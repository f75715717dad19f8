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

// Study drivers and report sinks.
//
// Seeds: every instance of cell c gets
//   instance_seed = derive_seed(seed, {tag::cell, c, tag::instance, i})
// which seeds the planted generator; sampler call j of method m uses
//   derive_seed(instance_seed, {tag::sampler, m, j}).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbm/samplers.hpp"
#include "rbm/topology.hpp"

namespace rbm::experiments {

enum class Study { qac_comparison, scaling };

const char* study_name(Study s);

struct BiasSet {
    double large = 10.0;
    double small = 2.0;
    friend bool operator==(const BiasSet&, const BiasSet&) = default;
};

/// Noise applied per run. region_deltas[r % size] is added to every qubit of
/// physical replica region r.
struct NoiseConfig {
    double sigma_h = 0.0;
    double sigma_J = 0.0;
    std::vector<double> region_deltas;
    std::uint64_t chip_seed = 0;
    friend bool operator==(const NoiseConfig&, const NoiseConfig&) = default;
};

struct ExperimentConfig {
    Study study = Study::scaling;
    std::uint32_t pegasus_m = 4;
    std::string graph_file;  // overrides pegasus_m when set
    std::vector<std::uint32_t> k_values{2, 4, 8};
    std::vector<BiasSet> bias_sets{{10.0, 2.0}};
    double p_large = 0.08;
    std::vector<double> beta_grid{0.7, 0.8, 0.9, 1.0};
    std::uint32_t instances_per_cell = 10;
    samplers::AnnealParams anneal;  // seed is ignored, calls derive their own
    std::optional<NoiseConfig> noise;
    double alpha = -1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

ExperimentConfig qac_comparison_defaults();
ExperimentConfig scaling_defaults();

/// Planted-energy ratio of matches: (# best == planted) / size. Exact
/// comparison. Throws InvalidParameter on an empty list.
double gsp(const std::vector<std::pair<double, double>>& best_and_planted);

struct InstanceRecord {
    std::uint32_t cell = 0;
    std::uint32_t instance = 0;
    std::string method;
    double best_energy = 0.0;
    double planted_energy = 0.0;
    std::uint32_t variables = 0;
    std::uint32_t couplers = 0;
    std::uint32_t subsamples = 0;  // decoded candidates behind best_energy
    friend bool operator==(const InstanceRecord&, const InstanceRecord&) = default;
};

struct CellSummary {
    std::uint32_t cell = 0;
    std::uint32_t k = 0;
    BiasSet bias;
    double beta = 1.0;
    std::string method;
    double mean_best = 0.0;
    double mean_planted = 0.0;
    double normalized_mean = 0.0;  // mean_best / mean_planted
    double gsp = 0.0;
    std::uint32_t instances = 0;
    friend bool operator==(const CellSummary&, const CellSummary&) = default;
};

/// Average instance size per k next to the hardware reference row.
struct SizeRow {
    std::uint32_t k = 0;
    bool qac = false;
    double linear = 0.0;
    double quadratic = 0.0;
    std::optional<double> reference_linear;
    std::optional<double> reference_quadratic;
    friend bool operator==(const SizeRow&, const SizeRow&) = default;
};

struct ExperimentReport {
    Study study = Study::scaling;
    std::vector<std::string> methods;
    std::vector<CellSummary> cells;  // cell-major, methods in `methods` order
    std::vector<InstanceRecord> records;
    std::vector<SizeRow> sizes;
    nlohmann::json config = nlohmann::json::object();
    friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// Host graph named by the config.
topology::HardwareGraph load_host(const ExperimentConfig& cfg);

/// RBM (k replicas, one call), QAC (alpha < 0) and SQA (alpha = 0), both
/// majority decoded, on the combined structure with k = k_values[0].
ExperimentReport run_qac_comparison(const ExperimentConfig& cfg);
ExperimentReport run_qac_comparison(const ExperimentConfig& cfg, const topology::HardwareGraph& host);

/// RBM as one call on k replicas, SQA as k calls on replica 0.
ExperimentReport run_scaling(const ExperimentConfig& cfg);
ExperimentReport run_scaling(const ExperimentConfig& cfg, const topology::HardwareGraph& host);

ExperimentReport run_study(const ExperimentConfig& cfg);

/// One-cell report over externally decoded results; methods appear in
/// first-seen order and records are renumbered into cell 0.
ExperimentReport single_cell_report(Study study, std::uint32_t k, BiasSet bias, double beta,
                                    std::vector<InstanceRecord> records);

nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentReport& r);
ExperimentReport report_from_json(const nlohmann::json& j);

/// One row per cell and method.
std::string render_csv(const ExperimentReport& r);
/// Grouped bar chart of normalized energy ("energy") or GSP ("gsp"). A
/// non-null provenance object is embedded as the chart's <desc>.
std::string render_svg(const ExperimentReport& r, const std::string& metric);
std::string render_svg(const ExperimentReport& r, const std::string& metric, const nlohmann::json& provenance);

/// Writes report.csv, report.json, energy.svg and gsp.svg (filtered by
/// formats: "csv", "json", "svg") into dir; returns the paths written.
/// A non-null provenance is stored in the JSON and SVG outputs.
std::vector<std::string> emit_report(const ExperimentReport& r, const std::string& dir,
                                     const std::vector<std::string>& formats = {"csv", "json", "svg"},
                                     const nlohmann::json& provenance = nullptr);

}  // namespace rbm::experiments
