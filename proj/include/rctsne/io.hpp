// include/rctsne/io.hpp

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

#pragma once

#include <string>
#include <vector>

#include "rctsne/core.hpp"
#include "rctsne/metrics.hpp"

namespace rctsne {

// CSV formats: data files carry a header row "f0,f1,...", label files a
// single "label" column (string labels are mapped to class ids in order of
// first appearance), embeddings are "id,x,y". All writes are deterministic
// byte-for-byte.

DataMatrix read_data_csv(const std::string& path);
void write_data_csv(const std::string& path, const DataMatrix& data);

LabelVector read_labels_csv(const std::string& path);
void write_labels_csv(const std::string& path, const LabelVector& labels);

Embedding read_embedding_csv(const std::string& path);
void write_embedding_csv(const std::string& path, const Embedding& emb);

/// Everything needed to reproduce and audit one embed run.
struct RunManifest {
    EmbedConfig config;
    std::string data_path;
    std::string labels_path;      // empty for plain t-SNE
    std::string embedding_path;
    double wall_seconds = 0.0;
    double affinity_converged_fraction = 1.0;
    double affinity_median_effective_perplexity = 0.0;

    std::string to_json() const;
    static RunManifest from_json_file(const std::string& path);
    void write(const std::string& path) const;
};

/// Metrics report as fixed-schema JSON, floats at 17 significant digits.
void write_metrics_json(const std::string& path, const EvalReport& report);

struct SvgOptions {
    std::vector<std::string> colors;   // per class id; empty selects the default palette
    std::string title;
    int width = 760;
    int height = 600;
};

/// Standalone SVG scatter of a 2-D embedding, one <circle> per point,
/// colored by class, with a legend. Byte-identical output for identical
/// inputs. Throws if more than 20 classes are used without explicit colors.
std::string render_svg_scatter(const Embedding& emb, const LabelVector& labels,
                               const SvgOptions& options);

}  // namespace rctsne
