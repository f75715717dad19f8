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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "rbm/common.hpp"
#include "rbm/experiments.hpp"
#include "rbm/io.hpp"

namespace rbm::experiments {

namespace {

// Shortest round-trip representation.
std::string num(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace

std::string render_csv(const ExperimentReport& r) {
    std::ostringstream os;
    os << "study,k,bias_large,bias_small,beta,method,mean_best,mean_planted,normalized_mean,gsp,instances\n";
    for (const auto& c : r.cells)
        os << study_name(r.study) << ',' << c.k << ',' << num(c.bias.large) << ',' << num(c.bias.small) << ','
           << num(c.beta) << ',' << c.method << ',' << num(c.mean_best) << ',' << num(c.mean_planted) << ','
           << num(c.normalized_mean) << ',' << num(c.gsp) << ',' << c.instances << '\n';
    return os.str();
}

std::string render_svg(const ExperimentReport& r, const std::string& metric) { return render_svg(r, metric, nullptr); }

std::string render_svg(const ExperimentReport& r, const std::string& metric, const nlohmann::json& provenance) {
    if (metric != "energy" && metric != "gsp") throw InvalidParameter("unknown chart metric '" + metric + "'");
    const bool energy = metric == "energy";
    const std::size_t methods = std::max<std::size_t>(r.methods.size(), 1);
    const std::size_t groups = r.cells.size() / methods;

    double top = energy ? 0.0 : 1.0;
    for (const auto& c : r.cells) top = std::max(top, energy ? c.normalized_mean : c.gsp);
    top = energy ? std::max(1.0, std::ceil(top * 10.0) / 10.0) : 1.0;

    const double bar = 18.0, gap = 24.0, left = 60.0, right = 20.0, plot_h = 240.0, head = 40.0;
    const double group_w = bar * static_cast<double>(methods) + gap;
    const double width = left + right + std::max(1.0, static_cast<double>(groups)) * group_w;
    const double height = head + plot_h + 90.0;
    auto y_of = [&](double v) { return head + plot_h * (1.0 - v / top); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<title>" << xml_escape(std::string(study_name(r.study)) + (energy ? " normalized energy" : " GSP"))
       << "</title>\n";
    if (!provenance.is_null()) os << "<desc>" << xml_escape(provenance.dump()) << "</desc>\n";
    os << "<text x=\"" << num(left) << "\" y=\"20\" font-size=\"14\">"
       << (energy ? "Mean best energy / planted energy" : "Ground state probability") << "</text>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = top * t / 4.0;
        os << "<line x1=\"" << num(left) << "\" x2=\"" << num(width - right) << "\" y1=\"" << num(y_of(v))
           << "\" y2=\"" << num(y_of(v)) << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(y_of(v) + 4) << "\" text-anchor=\"end\">" << num(v)
           << "</text>\n";
    }
    for (std::size_t g = 0; g < groups; ++g) {
        const double x0 = left + gap / 2 + static_cast<double>(g) * group_w;
        for (std::size_t m = 0; m < methods; ++m) {
            const auto& c = r.cells[g * methods + m];
            const double v = std::max(0.0, energy ? c.normalized_mean : c.gsp);
            const double x = x0 + static_cast<double>(m) * bar;
            os << "<rect x=\"" << num(x) << "\" y=\"" << num(y_of(v)) << "\" width=\"" << num(bar - 2)
               << "\" height=\"" << num(head + plot_h - y_of(v)) << "\" fill=\"" << kPalette[m % 5] << "\"><title>"
               << xml_escape(c.method + " " + num(v)) << "</title></rect>\n";
        }
        const auto& c = r.cells[g * methods];
        std::string label = "k=" + std::to_string(c.k) + " {" + num(c.bias.large) + "," + num(c.bias.small) +
                            "} b=" + num(c.beta);
        os << "<text x=\"" << num(x0) << "\" y=\"" << num(head + plot_h + 14) << "\" transform=\"rotate(30 "
           << num(x0) << ' ' << num(head + plot_h + 14) << ")\">" << xml_escape(label) << "</text>\n";
    }
    os << "<line x1=\"" << num(left) << "\" x2=\"" << num(left) << "\" y1=\"" << num(head) << "\" y2=\""
       << num(head + plot_h) << "\" stroke=\"black\"/>\n";
    for (std::size_t m = 0; m < r.methods.size(); ++m) {
        const double x = left + 90.0 * static_cast<double>(m);
        os << "<rect x=\"" << num(x) << "\" y=\"" << num(height - 18) << "\" width=\"10\" height=\"10\" fill=\""
           << kPalette[m % 5] << "\"/>\n";
        os << "<text x=\"" << num(x + 14) << "\" y=\"" << num(height - 9) << "\">" << xml_escape(r.methods[m])
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<std::string> emit_report(const ExperimentReport& r, const std::string& dir,
                                     const std::vector<std::string>& formats, const nlohmann::json& provenance) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create report directory '" + dir + "': " + ec.message());
    auto want = [&](const char* f) { return std::find(formats.begin(), formats.end(), f) != formats.end(); };
    for (const auto& f : formats)
        if (f != "csv" && f != "json" && f != "svg") throw InvalidParameter("unknown report format '" + f + "'");
    std::vector<std::string> written;
    const std::filesystem::path base(dir);
    if (want("csv")) {
        written.push_back((base / "report.csv").string());
        io::write_text_file(written.back(), render_csv(r));
    }
    if (want("json")) {
        written.push_back((base / "report.json").string());
        auto j = to_json(r);
        if (!provenance.is_null()) j["provenance"] = provenance;
        io::write_json_file(written.back(), j);
    }
    if (want("svg")) {
        written.push_back((base / "energy.svg").string());
        io::write_text_file(written.back(), render_svg(r, "energy", provenance));
        written.push_back((base / "gsp.svg").string());
        io::write_text_file(written.back(), render_svg(r, "gsp", provenance));
    }
    return written;
}

}  // namespace rbm::experiments
