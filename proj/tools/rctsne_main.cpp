// tools/rctsne_main.cpp

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

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rctsne/datagen.hpp"
#include "rctsne/io.hpp"
#include "rctsne/metrics.hpp"
#include "rctsne/pipeline.hpp"

namespace {

using namespace rctsne;

int cmd_generate(std::uint64_t seed, const std::string& out_data,
                 const std::string& out_labels14, const std::string& out_labels56) {
    SyntheticDataset ds = generate_synthetic(seed);
    write_data_csv(out_data, ds.data);
    write_labels_csv(out_labels14, ds.labels14);
    write_labels_csv(out_labels56, ds.labels56);
    std::cout << "wrote " << ds.data.n << "x" << ds.data.d << " points to " << out_data << "\n";
    return 0;
}

struct EmbedArgs {
    std::string method = "tsne";
    std::string data_path;
    std::string labels_path;
    std::string variance_on = "p";
    std::string out_path;
    std::string manifest_path;
    EmbedConfig cfg;
};

int cmd_embed(const EmbedArgs& args) {
    EmbedConfig cfg = args.cfg;
    cfg.method = method_from_string(args.method);
    cfg.variance_mode = variance_mode_from_string(args.variance_on);

    DataMatrix data = read_data_csv(args.data_path);
    LabelVector labels;
    const bool have_labels = !args.labels_path.empty();
    if (have_labels) labels = read_labels_csv(args.labels_path);

    PipelineResult result = run_pipeline(data, have_labels ? &labels : nullptr, cfg);
    write_embedding_csv(args.out_path, result.embedding);

    if (!args.manifest_path.empty()) {
        RunManifest manifest;
        manifest.config = cfg;
        manifest.data_path = args.data_path;
        manifest.labels_path = args.labels_path;
        manifest.embedding_path = args.out_path;
        manifest.wall_seconds = result.wall_seconds;
        manifest.affinity_converged_fraction =
            result.affinity_diagnostics.converged_fraction;
        manifest.affinity_median_effective_perplexity =
            result.affinity_diagnostics.median_effective_perplexity;
        manifest.write(args.manifest_path);
    }

    std::cout << "embedded " << data.n << " points with " << args.method << " in "
              << result.wall_seconds << " s";
    if (!result.embedding.loss_trace.empty())
        std::cout << ", final KL " << result.embedding.loss_trace.back().second;
    std::cout << "\n";
    return 0;
}

struct EvaluateArgs {
    std::string data_path;
    std::string embedding_path;
    std::vector<std::string> label_specs;   // name=path
    std::size_t k = 30;
    double subsample = 1.0;
    std::uint64_t seed = 42;
    std::string out_path;
    int threads = 0;
};

int cmd_evaluate(const EvaluateArgs& args) {
    DataMatrix data = read_data_csv(args.data_path);
    Embedding emb = read_embedding_csv(args.embedding_path);
    if (emb.n != data.n)
        throw std::runtime_error("row count mismatch: data has " + std::to_string(data.n) +
                                 " rows, embedding has " + std::to_string(emb.n));

    std::vector<LabelVector> storage;
    storage.reserve(args.label_specs.size());
    std::vector<std::string> names;
    for (const auto& spec : args.label_specs) {
        const std::size_t eq = spec.find('=');
        std::string name, path;
        if (eq == std::string::npos) {
            path = spec;
            const std::size_t slash = path.find_last_of("/\\");
            const std::size_t stem = slash == std::string::npos ? 0 : slash + 1;
            const std::size_t dot = path.find_last_of('.');
            name = path.substr(stem, dot > stem && dot != std::string::npos
                                         ? dot - stem
                                         : std::string::npos);
        } else {
            name = spec.substr(0, eq);
            path = spec.substr(eq + 1);
        }
        storage.push_back(read_labels_csv(path));
        names.push_back(name);
    }
    std::vector<LabelSetRef> sets;
    for (std::size_t i = 0; i < storage.size(); ++i)
        sets.push_back(LabelSetRef{names[i], &storage[i]});

    EvalReport report = evaluate(data, emb, sets, args.k, args.subsample, args.seed,
                                 resolve_threads(args.threads));
    if (!args.out_path.empty()) {
        write_metrics_json(args.out_path, report);
    }
    std::cout << "k=" << report.k << " rnx_adjusted=" << report.rnx_adjusted;
    for (const auto& [name, score] : report.laplacian)
        std::cout << " laplacian(" << name << ")=" << score;
    std::cout << "\n";
    return 0;
}

struct PlotArgs {
    std::string embedding_path;
    std::string labels_path;
    std::string out_path;
    std::string color_map;
    std::string title;
};

int cmd_plot(const PlotArgs& args) {
    Embedding emb = read_embedding_csv(args.embedding_path);
    LabelVector labels;
    if (!args.labels_path.empty()) {
        labels = read_labels_csv(args.labels_path);
        if (labels.size() != emb.n)
            throw std::runtime_error("row count mismatch between embedding and labels");
    } else {
        labels.ids.assign(emb.n, 0);
        labels.class_names = {"all"};
        labels.class_counts = {emb.n};
    }

    SvgOptions options;
    options.title = args.title;
    if (!args.color_map.empty()) {
        std::size_t start = 0;
        while (start <= args.color_map.size()) {
            const std::size_t comma = args.color_map.find(',', start);
            const std::string tok = args.color_map.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!tok.empty()) options.colors.push_back(tok);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }

    const std::string svg = render_svg_scatter(emb, labels, options);
    std::ofstream f(args.out_path, std::ios::binary | std::ios::trunc);
    if (!f.is_open()) throw std::runtime_error("cannot write " + args.out_path);
    f << svg;
    std::cout << "wrote " << args.out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"t-SNE, conditional t-SNE, and revised conditional t-SNE embeddings"};
    app.require_subcommand(1);

    // generate
    std::uint64_t gen_seed = 42;
    std::string gen_data, gen_l14, gen_l56;
    auto* generate = app.add_subcommand("generate", "write the synthetic benchmark dataset");
    generate->add_option("--seed", gen_seed, "RNG seed");
    generate->add_option("--out-data", gen_data, "output data CSV")->required();
    generate->add_option("--out-labels14", gen_l14, "output CSV for the dim 1-4 labels")
        ->required();
    generate->add_option("--out-labels56", gen_l56, "output CSV for the dim 5-6 labels")
        ->required();

    // embed
    EmbedArgs embed_args;
    auto* embed = app.add_subcommand("embed", "embed a dataset");
    embed->add_option("--method", embed_args.method, "tsne, ctsne, or rctsne")
        ->check(CLI::IsMember({"tsne", "ctsne", "rctsne"}));
    embed->add_option("--data", embed_args.data_path, "input data CSV")->required();
    embed->add_option("--labels", embed_args.labels_path,
                      "label CSV (required for ctsne and rctsne)");
    embed->add_option("--perplexity", embed_args.cfg.perplexity, "target perplexity");
    embed->add_option("--beta", embed_args.cfg.beta, "conditioning strength in (0, 1]");
    embed->add_option("--theta", embed_args.cfg.theta, "Barnes-Hut opening angle, 0 = exact");
    embed->add_option("--epochs", embed_args.cfg.epochs, "gradient descent iterations");
    embed->add_option("--variance-on", embed_args.variance_on,
                      "calibrate bandwidths on p or on r (rctsne only)")
        ->check(CLI::IsMember({"p", "r"}));
    embed->add_option("--seed", embed_args.cfg.seed, "RNG seed");
    embed->add_option("--threads", embed_args.cfg.threads, "worker threads, 0 = all cores");
    embed->add_option("--out", embed_args.out_path, "output embedding CSV")->required();
    embed->add_option("--manifest", embed_args.manifest_path, "output run manifest JSON");

    // evaluate
    EvaluateArgs eval_args;
    auto* evaluate = app.add_subcommand("evaluate", "score an embedding against its data");
    evaluate->add_option("--data", eval_args.data_path, "input data CSV")->required();
    evaluate->add_option("--embedding", eval_args.embedding_path, "embedding CSV")->required();
    evaluate->add_option("--labels", eval_args.label_specs,
                         "label sets as name=path (repeatable); the first one drives the "
                         "R_NX adjustment");
    evaluate->add_option("--k", eval_args.k, "neighborhood size");
    evaluate->add_option("--subsample", eval_args.subsample,
                         "fraction of points to evaluate on");
    evaluate->add_option("--seed", eval_args.seed, "subsample seed");
    evaluate->add_option("--threads", eval_args.threads, "worker threads, 0 = all cores");
    evaluate->add_option("--out", eval_args.out_path, "output metrics JSON");

    // plot
    PlotArgs plot_args;
    auto* plot = app.add_subcommand("plot", "render an embedding as an SVG scatter");
    plot->add_option("--embedding", plot_args.embedding_path, "embedding CSV")->required();
    plot->add_option("--labels", plot_args.labels_path, "label CSV for coloring");
    plot->add_option("--out", plot_args.out_path, "output SVG path")->required();
    plot->add_option("--color-map", plot_args.color_map,
                     "comma-separated colors, one per class id");
    plot->add_option("--title", plot_args.title, "plot title");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(gen_seed, gen_data, gen_l14, gen_l56);
        if (embed->parsed()) return cmd_embed(embed_args);
        if (evaluate->parsed()) return cmd_evaluate(eval_args);
        if (plot->parsed()) return cmd_plot(plot_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
