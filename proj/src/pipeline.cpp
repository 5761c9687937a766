// src/pipeline.cpp

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

#include "rctsne/pipeline.hpp"

#include <chrono>

#include "rctsne/neighbors.hpp"
#include "rctsne/optimizer.hpp"

namespace rctsne {

PipelineResult run_pipeline(const DataMatrix& data, const LabelVector* labels,
                            const EmbedConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const ValidatedInput in = validate_inputs(data, labels, cfg);
    const int threads = resolve_threads(cfg.threads);

    NeighborSets neighbors =
        cfg.method == Method::Rctsne
            ? neighbors_per_label(data, *labels, in.k_split, in.k_split, threads)
            : neighbors_unsplit(data, in.k_unsplit, threads);

    AffinityResult aff = build_affinities(data, labels, cfg, neighbors);

    PipelineResult out;
    out.embedding = run_embedding(aff.affinity, labels, cfg);
    out.affinity_diagnostics = std::move(aff.diagnostics);
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace rctsne
