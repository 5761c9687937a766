// src/core.cpp

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

#include "rctsne/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace rctsne {

LabelVector LabelVector::from_ids(std::vector<std::int32_t> raw) {
    if (raw.empty()) throw std::invalid_argument("labels: empty label vector");
    std::int32_t max_id = -1;
    for (std::int32_t id : raw) {
        if (id < 0) throw std::invalid_argument("labels: negative class id");
        max_id = std::max(max_id, id);
    }
    LabelVector out;
    out.ids = std::move(raw);
    out.class_counts.assign(static_cast<std::size_t>(max_id) + 1, 0);
    for (std::int32_t id : out.ids) ++out.class_counts[static_cast<std::size_t>(id)];
    for (std::size_t c = 0; c < out.class_counts.size(); ++c) {
        if (out.class_counts[c] == 0)
            throw std::invalid_argument("labels: class id " + std::to_string(c) + " is unused");
    }
    out.class_names.resize(out.class_counts.size());
    for (std::size_t c = 0; c < out.class_names.size(); ++c)
        out.class_names[c] = std::to_string(c);
    return out;
}

double SparseAffinity::total() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

const char* to_string(Method m) {
    switch (m) {
        case Method::Tsne: return "tsne";
        case Method::Ctsne: return "ctsne";
        case Method::Rctsne: return "rctsne";
    }
    return "tsne";
}

const char* to_string(VarianceMode v) {
    return v == VarianceMode::OnP ? "p" : "r";
}

Method method_from_string(const std::string& s) {
    if (s == "tsne") return Method::Tsne;
    if (s == "ctsne") return Method::Ctsne;
    if (s == "rctsne") return Method::Rctsne;
    throw std::invalid_argument("unknown method '" + s + "' (expected tsne, ctsne, or rctsne)");
}

VarianceMode variance_mode_from_string(const std::string& s) {
    if (s == "p") return VarianceMode::OnP;
    if (s == "r") return VarianceMode::OnR;
    throw std::invalid_argument("unknown variance mode '" + s + "' (expected p or r)");
}

std::size_t unsplit_neighbor_count(double perplexity) {
    return static_cast<std::size_t>(std::ceil(3.0 * perplexity));
}

std::size_t split_neighbor_count(double perplexity) {
    return static_cast<std::size_t>(std::ceil(1.5 * perplexity));
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

ValidatedInput validate_inputs(const DataMatrix& data, const LabelVector* labels,
                               const EmbedConfig& cfg) {
    if (data.n < 2) throw std::invalid_argument("data: need at least 2 points");
    if (data.d < 1) throw std::invalid_argument("data: need at least 1 dimension");
    if (data.values.size() != data.n * data.d)
        throw std::invalid_argument("data: dimension mismatch between shape and storage");
    for (double v : data.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("data: non-finite entry");
    }

    if (labels != nullptr) {
        if (labels->size() != data.n)
            throw std::invalid_argument("labels: length does not match point count");
        for (std::int32_t id : labels->ids) {
            if (id < 0 || id >= labels->num_classes())
                throw std::invalid_argument("labels: class id out of range");
        }
        std::size_t total = std::accumulate(labels->class_counts.begin(),
                                            labels->class_counts.end(), std::size_t{0});
        if (total != data.n)
            throw std::invalid_argument("labels: class counts do not sum to point count");
    } else if (cfg.method != Method::Tsne) {
        throw std::invalid_argument("labels required for method " +
                                    std::string(to_string(cfg.method)));
    }

    if (!(cfg.perplexity > 0.0)) throw std::invalid_argument("perplexity must be positive");
    if (3.0 * cfg.perplexity >= static_cast<double>(data.n))
        throw std::invalid_argument("perplexity too large: 3u must be below the point count");
    if (!(cfg.beta > 0.0) || cfg.beta > 1.0)
        throw std::invalid_argument("beta must lie in (0, 1]");
    if (!(cfg.theta >= 0.0) || cfg.theta > 1.0)
        throw std::invalid_argument("theta must lie in [0, 1]");
    if (cfg.epochs < 1) throw std::invalid_argument("epochs must be positive");
    if (cfg.out_dim < 1) throw std::invalid_argument("output dimension must be positive");
    if (cfg.out_dim != 2 && cfg.theta > 0.0)
        throw std::invalid_argument("output dimension above 2 requires theta = 0");

    ValidatedInput out;
    out.data = &data;
    out.labels = labels;
    out.cfg = cfg;
    out.k_unsplit = unsplit_neighbor_count(cfg.perplexity);
    out.k_split = split_neighbor_count(cfg.perplexity);
    out.learning_rate = cfg.learning_rate > 0.0
                            ? cfg.learning_rate
                            : std::max(static_cast<double>(data.n) / 12.0, 50.0);
    return out;
}

}  // namespace rctsne
