// include/rctsne/pipeline.hpp

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

#include "rctsne/affinity.hpp"
#include "rctsne/core.hpp"

namespace rctsne {

struct PipelineResult {
    Embedding embedding;
    AffinityDiagnostics affinity_diagnostics;
    double wall_seconds = 0.0;
};

/// Validate, build neighbor sets, build affinities, optimize.
PipelineResult run_pipeline(const DataMatrix& data, const LabelVector* labels,
                            const EmbedConfig& cfg);

}  // namespace rctsne
