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

#include <filesystem>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <doctest.h>

#include "rbm/common.hpp"
#include "rbm/experiments.hpp"
#include "rbm/io.hpp"

namespace rbm::experiments {

namespace {

ExperimentConfig small_scaling() {
    ExperimentConfig c;
    c.study = Study::scaling;
    c.pegasus_m = 4;
    c.k_values = {2, 4};
    c.bias_sets = {{10, 2}};
    c.beta_grid = {0.7, 1.0};
    c.instances_per_cell = 3;
    c.anneal.num_reads = 10;
    c.anneal.sweeps = 500;
    c.seed = 12;
    return c;
}

ExperimentConfig small_qac() {
    ExperimentConfig c = qac_comparison_defaults();
    c.pegasus_m = 4;
    c.bias_sets = {{9, 2}, {11, 2}};
    c.instances_per_cell = 3;
    // Without the penalty the encoded problem is not equivalent to the
    // logical one; SQA needs read diversity rather than deep annealing.
    c.anneal.num_reads = 200;
    c.anneal.sweeps = 300;
    c.seed = 4;
    return c;
}

void parse_xml(const std::string& text) {
    std::istringstream in(text);
    boost::property_tree::ptree tree;
    boost::property_tree::read_xml(in, tree);
    CHECK(tree.count("svg") == 1);
}

}  // namespace

TEST_CASE("gsp arithmetic") {
    std::vector<std::pair<double, double>> v(10, {-1.0, -2.0});
    for (int i = 0; i < 3; ++i) v[i].first = -2.0;
    CHECK(gsp(v) == doctest::Approx(0.3));
    CHECK(gsp({{-1, -1}, {-5, -5}}) == 1.0);
    CHECK(gsp({{-1, -2}, {-4, -5}}) == 0.0);
    CHECK_THROWS_AS(gsp({}), InvalidParameter);
}

TEST_CASE("config validation and JSON") {
    auto c = small_scaling();
    c.noise = NoiseConfig{0.1, 0.05, {0.2, -0.2}, 7};
    auto back = config_from_json(to_json(c));
    CHECK(to_json(back) == to_json(c));
    CHECK(back.noise == c.noise);

    auto bad = small_scaling();
    bad.k_values = {3};
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = small_scaling();
    bad.alpha = 1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = small_scaling();
    bad.beta_grid = {};
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
}

TEST_CASE("noiseless scaling run reaches the planted energy") {
    const auto rep = run_scaling(small_scaling());
    CHECK(rep.methods == std::vector<std::string>{"rbm", "sqa"});
    CHECK(rep.cells.size() == 2 * 2 * 2);
    CHECK(rep.records.size() == 2 * 2 * 3 * 2);
    for (const auto& c : rep.cells) {
        CAPTURE(c.method);
        CHECK(c.gsp == 1.0);
        CHECK(c.normalized_mean == 1.0);
        CHECK(c.instances == 3);
    }
    for (const auto& r : rep.records) CHECK(r.subsamples == (rep.cells[r.cell * 2].k * 10));
    REQUIRE(rep.sizes.size() == 2);
    CHECK(rep.sizes[0].k == 2);
    CHECK(rep.sizes[0].linear == 120.0);
    CHECK(rep.sizes[1].reference_linear == 1219.0);
}

TEST_CASE("noiseless QAC comparison reaches the planted energy") {
    const auto rep = run_qac_comparison(small_qac());
    CHECK(rep.methods == std::vector<std::string>{"rbm", "qac", "sqa"});
    CHECK(rep.cells.size() == 2 * 3);
    for (const auto& c : rep.cells) {
        CAPTURE(c.method);
        CHECK(c.gsp == 1.0);
    }
    REQUIRE(rep.sizes.size() == 1);
    CHECK(rep.sizes[0].qac);
    CHECK(rep.sizes[0].linear == 9.0);
    CHECK(rep.sizes[0].reference_linear == 95.0);
}

TEST_CASE("reports are reproducible") {
    auto cfg = small_scaling();
    cfg.noise = NoiseConfig{0.5, 0.05, {1.0, -1.0, 0.5, 0.0}, 3};
    const auto a = run_scaling(cfg);
    set_thread_count(2);
    const auto b = run_scaling(cfg);
    set_thread_count(0);
    CHECK(render_csv(a) == render_csv(b));
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(report_from_json(to_json(a)) == a);
}

TEST_CASE("report sinks") {
    const auto rep = run_qac_comparison(small_qac());
    const auto csv = render_csv(rep);
    CHECK(csv.rfind("study,k,bias_large,bias_small,beta,method,mean_best,mean_planted,normalized_mean,gsp,instances\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 6);
    CHECK(csv.find("qac_comparison,4,9,2,1,sqa,") != std::string::npos);

    const nlohmann::json prov = {{"tool_version", "x"}, {"seed", 4}, {"config_hash", "<&>"}};
    for (const char* metric : {"energy", "gsp"}) parse_xml(render_svg(rep, metric, prov));
    CHECK(render_svg(rep, "gsp", prov).find("&lt;&amp;&gt;") != std::string::npos);
    CHECK_THROWS_AS(render_svg(rep, "nope"), InvalidParameter);

    const auto dir = (std::filesystem::temp_directory_path() / "rbm_unit_report").string();
    std::filesystem::remove_all(dir);
    auto written = emit_report(rep, dir, {"csv", "json", "svg"}, prov);
    CHECK(written.size() == 4);
    auto j = io::read_json_file(dir + "/report.json");
    CHECK(j["provenance"] == prov);
    CHECK(report_from_json(j) == rep);
    CHECK(io::read_text_file(dir + "/report.csv") == csv);
    CHECK(emit_report(rep, dir, {"csv"}).size() == 1);
    CHECK_THROWS_AS(emit_report(rep, dir, {"pdf"}), InvalidParameter);
    std::filesystem::remove_all(dir);
}

TEST_CASE("single-cell report from external results") {
    std::vector<InstanceRecord> recs = {
        {7, 0, "rbm", -10, -10, 5, 6, 20}, {7, 0, "sqa", -8, -10, 5, 6, 20},
        {7, 1, "rbm", -12, -12, 5, 6, 20}, {7, 1, "sqa", -12, -12, 5, 6, 20},
    };
    auto rep = single_cell_report(Study::scaling, 2, {10, 2}, 1.0, recs);
    REQUIRE(rep.cells.size() == 2);
    CHECK(rep.cells[0].method == "rbm");
    CHECK(rep.cells[0].gsp == 1.0);
    CHECK(rep.cells[1].gsp == 0.5);
    CHECK(rep.cells[1].mean_best == -10.0);
    CHECK(rep.cells[1].normalized_mean == doctest::Approx(10.0 / 11.0));
    CHECK_THROWS_AS(single_cell_report(Study::scaling, 2, {10, 2}, 1.0, {}), InvalidParameter);
}

}  // namespace rbm::experiments
