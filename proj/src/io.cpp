// src/io.cpp

// Copyright 2026  The rctsne authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "rctsne/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace rctsne {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

bool parse_double(const std::string& tok, double& out) {
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f.is_open()) throw std::runtime_error("cannot open " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f.is_open()) throw std::runtime_error("cannot write " + path);
    return f;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

// Default categorical palette, 20 entries.
const char* kPalette[20] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5",
    "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5",
};

}  // namespace

DataMatrix read_data_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error(path + ": empty file");
    {
        auto header = split_csv_line(line);
        double probe;
        if (!header.empty() && parse_double(header[0], probe))
            throw std::runtime_error(path + ": data CSV must start with a header row");
    }
    DataMatrix data;
    std::vector<double> row;
    std::size_t line_no = 1;
    while (std::getline(f, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto toks = split_csv_line(line);
        if (data.d == 0) data.d = toks.size();
        if (toks.size() != data.d)
            throw std::runtime_error(path + ": inconsistent column count at line " +
                                     std::to_string(line_no));
        row.clear();
        for (const auto& t : toks) {
            double v;
            if (!parse_double(t, v))
                throw std::runtime_error(path + ": bad number '" + t + "' at line " +
                                         std::to_string(line_no));
            row.push_back(v);
        }
        data.values.insert(data.values.end(), row.begin(), row.end());
        ++data.n;
    }
    if (data.n == 0) throw std::runtime_error(path + ": no data rows");
    return data;
}

void write_data_csv(const std::string& path, const DataMatrix& data) {
    auto f = open_out(path);
    for (std::size_t j = 0; j < data.d; ++j) f << (j ? ",f" : "f") << j;
    f << "\n";
    for (std::size_t i = 0; i < data.n; ++i) {
        const double* row = data.row(i);
        for (std::size_t j = 0; j < data.d; ++j) {
            if (j) f << ",";
            f << fmt17(row[j]);
        }
        f << "\n";
    }
}

LabelVector read_labels_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error(path + ": empty file");
    if (trim(line) != "label")
        throw std::runtime_error(path + ": labels CSV must have the header 'label'");

    LabelVector out;
    std::unordered_map<std::string, std::int32_t> mapping;
    while (std::getline(f, line)) {
        const std::string tok = trim(line);
        if (tok.empty()) continue;
        auto [it, inserted] = mapping.emplace(tok, static_cast<std::int32_t>(mapping.size()));
        if (inserted) {
            out.class_names.push_back(tok);
            out.class_counts.push_back(0);
        }
        out.ids.push_back(it->second);
        ++out.class_counts[static_cast<std::size_t>(it->second)];
    }
    if (out.ids.empty()) throw std::runtime_error(path + ": no labels");
    return out;
}

void write_labels_csv(const std::string& path, const LabelVector& labels) {
    auto f = open_out(path);
    f << "label\n";
    for (std::int32_t id : labels.ids)
        f << labels.class_names[static_cast<std::size_t>(id)] << "\n";
}

Embedding read_embedding_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error(path + ": empty file");
    {
        auto header = split_csv_line(line);
        double probe;
        if (!header.empty() && parse_double(header[0], probe))
            throw std::runtime_error(path + ": embedding CSV must start with a header row");
    }
    Embedding emb;
    emb.dim = 0;
    std::size_t line_no = 1;
    while (std::getline(f, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto toks = split_csv_line(line);
        if (toks.size() < 2)
            throw std::runtime_error(path + ": expected id plus coordinates at line " +
                                     std::to_string(line_no));
        if (emb.dim == 0) emb.dim = static_cast<int>(toks.size()) - 1;
        if (toks.size() != static_cast<std::size_t>(emb.dim) + 1)
            throw std::runtime_error(path + ": inconsistent column count at line " +
                                     std::to_string(line_no));
        for (std::size_t j = 1; j < toks.size(); ++j) {
            double v;
            if (!parse_double(toks[j], v))
                throw std::runtime_error(path + ": bad number '" + toks[j] + "' at line " +
                                         std::to_string(line_no));
            emb.coords.push_back(v);
        }
        ++emb.n;
    }
    if (emb.n == 0) throw std::runtime_error(path + ": no embedding rows");
    return emb;
}

void write_embedding_csv(const std::string& path, const Embedding& emb) {
    auto f = open_out(path);
    if (emb.dim == 2) {
        f << "id,x,y\n";
    } else {
        f << "id";
        for (int j = 0; j < emb.dim; ++j) f << ",c" << j;
        f << "\n";
    }
    for (std::size_t i = 0; i < emb.n; ++i) {
        f << i;
        const double* row = emb.row(i);
        for (int j = 0; j < emb.dim; ++j) f << "," << fmt17(row[j]);
        f << "\n";
    }
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["method"] = to_string(config.method);
    nlohmann::json c;
    c["perplexity"] = config.perplexity;
    c["beta"] = config.beta;
    c["theta"] = config.theta;
    c["epochs"] = config.epochs;
    c["variance_on"] = std::string(to_string(config.variance_mode));
    c["seed"] = config.seed;
    c["out_dim"] = config.out_dim;
    c["threads"] = config.threads;
    c["exaggeration"] = config.exaggeration;
    c["exaggeration_iters"] = config.exaggeration_iters;
    c["learning_rate"] = config.learning_rate;
    c["momentum"] = config.momentum;
    c["final_momentum"] = config.final_momentum;
    c["momentum_switch_iter"] = config.momentum_switch_iter;
    j["config"] = c;
    j["data"] = data_path;
    j["labels"] = labels_path;
    j["embedding"] = embedding_path;
    j["wall_seconds"] = wall_seconds;
    j["affinity"] = {
        {"converged_fraction", affinity_converged_fraction},
        {"median_effective_perplexity", affinity_median_effective_perplexity},
    };
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json_file(const std::string& path) {
    auto f = open_in(path);
    nlohmann::json j = nlohmann::json::parse(f);
    RunManifest m;
    m.config.method = method_from_string(j.at("method").get<std::string>());
    const auto& c = j.at("config");
    m.config.perplexity = c.at("perplexity").get<double>();
    m.config.beta = c.at("beta").get<double>();
    m.config.theta = c.at("theta").get<double>();
    m.config.epochs = c.at("epochs").get<int>();
    m.config.variance_mode = variance_mode_from_string(c.at("variance_on").get<std::string>());
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.out_dim = c.value("out_dim", 2);
    m.config.threads = c.value("threads", 1);
    m.config.exaggeration = c.value("exaggeration", 12.0);
    m.config.exaggeration_iters = c.value("exaggeration_iters", 250);
    m.config.learning_rate = c.value("learning_rate", 0.0);
    m.config.momentum = c.value("momentum", 0.5);
    m.config.final_momentum = c.value("final_momentum", 0.8);
    m.config.momentum_switch_iter = c.value("momentum_switch_iter", 250);
    m.data_path = j.value("data", "");
    m.labels_path = j.value("labels", "");
    m.embedding_path = j.value("embedding", "");
    m.wall_seconds = j.value("wall_seconds", 0.0);
    if (j.contains("affinity")) {
        m.affinity_converged_fraction = j["affinity"].value("converged_fraction", 1.0);
        m.affinity_median_effective_perplexity =
            j["affinity"].value("median_effective_perplexity", 0.0);
    }
    return m;
}

void RunManifest::write(const std::string& path) const {
    auto f = open_out(path);
    f << to_json();
}

void write_metrics_json(const std::string& path, const EvalReport& report) {
    auto f = open_out(path);
    f << "{\n";
    f << "  \"k\": " << report.k << ",\n";
    f << "  \"rnx_adjusted\": " << fmt17(report.rnx_adjusted) << ",\n";
    f << "  \"laplacian\": {";
    for (std::size_t i = 0; i < report.laplacian.size(); ++i) {
        if (i) f << ", ";
        f << "\"" << json_escape(report.laplacian[i].first) << "\": "
          << fmt17(report.laplacian[i].second);
    }
    f << "},\n";
    f << "  \"baseline\": {";
    for (std::size_t i = 0; i < report.baseline.size(); ++i) {
        if (i) f << ", ";
        f << "\"" << json_escape(report.baseline[i].first) << "\": "
          << fmt17(report.baseline[i].second);
    }
    f << "}\n";
    f << "}\n";
}

std::string render_svg_scatter(const Embedding& emb, const LabelVector& labels,
                               const SvgOptions& options) {
    if (emb.dim != 2) throw std::invalid_argument("svg: embedding must be 2-D");
    if (labels.size() != emb.n) throw std::invalid_argument("svg: label length mismatch");
    const std::size_t num_classes = static_cast<std::size_t>(labels.num_classes());

    std::vector<std::string> colors = options.colors;
    if (colors.empty()) {
        if (num_classes > 20)
            throw std::invalid_argument(
                "svg: more than 20 classes requires an explicit color map");
        for (std::size_t c = 0; c < num_classes; ++c) colors.push_back(kPalette[c]);
    } else if (colors.size() < num_classes) {
        throw std::invalid_argument("svg: color map has fewer entries than classes");
    }

    double lo[2] = {emb.coords[0], emb.coords[1]};
    double hi[2] = {emb.coords[0], emb.coords[1]};
    for (std::size_t i = 0; i < emb.n; ++i) {
        for (int d = 0; d < 2; ++d) {
            lo[d] = std::min(lo[d], emb.row(i)[d]);
            hi[d] = std::max(hi[d], emb.row(i)[d]);
        }
    }

    const double title_pad = options.title.empty() ? 0.0 : 28.0;
    const double pad = 16.0;
    const double legend_width = 140.0;
    const double plot_w = options.width - legend_width - 2.0 * pad;
    const double plot_h = options.height - 2.0 * pad - title_pad;
    const double span_x = hi[0] - lo[0];
    const double span_y = hi[1] - lo[1];
    const double span = std::max({span_x, span_y, 1e-12});
    const double scale = std::min(plot_w, plot_h) / span;
    const double cx = 0.5 * (lo[0] + hi[0]);
    const double cy = 0.5 * (lo[1] + hi[1]);
    const double mid_x = pad + 0.5 * plot_w;
    const double mid_y = title_pad + pad + 0.5 * plot_h;

    char buf[256];
    std::string svg;
    std::snprintf(buf, sizeof(buf),
                  "<?xml version='1.0' encoding='UTF-8'?>\n"
                  "<svg xmlns='http://www.w3.org/2000/svg' width='%d' height='%d' "
                  "viewBox='0 0 %d %d'>\n",
                  options.width, options.height, options.width, options.height);
    svg += buf;
    svg += "<rect width='100%' height='100%' fill='white'/>\n";
    if (!options.title.empty()) {
        std::snprintf(buf, sizeof(buf),
                      "<text x='%.2f' y='20' font-family='sans-serif' font-size='16' "
                      "text-anchor='middle'>",
                      mid_x);
        svg += buf;
        svg += options.title;
        svg += "</text>\n";
    }
    for (std::size_t i = 0; i < emb.n; ++i) {
        const double px = mid_x + (emb.row(i)[0] - cx) * scale;
        const double py = mid_y - (emb.row(i)[1] - cy) * scale;
        std::snprintf(buf, sizeof(buf), "<circle cx='%.2f' cy='%.2f' r='2.5' fill='%s' "
                                        "fill-opacity='0.75'/>\n",
                      px, py, colors[static_cast<std::size_t>(labels.ids[i])].c_str());
        svg += buf;
    }
    const double legend_x = options.width - legend_width + 8.0;
    for (std::size_t c = 0; c < num_classes; ++c) {
        const double ly = title_pad + pad + 18.0 * static_cast<double>(c);
        std::snprintf(buf, sizeof(buf),
                      "<rect x='%.2f' y='%.2f' width='12' height='12' fill='%s'/>\n",
                      legend_x, ly, colors[c].c_str());
        svg += buf;
        std::snprintf(buf, sizeof(buf),
                      "<text x='%.2f' y='%.2f' font-family='sans-serif' font-size='12'>",
                      legend_x + 18.0, ly + 10.0);
        svg += buf;
        svg += labels.class_names[c];
        svg += "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace rctsne
