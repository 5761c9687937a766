// include/rctsne/metrics.hpp

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

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rctsne/core.hpp"

namespace rctsne {

/// Embedding-quality scores over one or more label sets.
struct EvalReport {
    std::size_t k = 0;
    double rnx_adjusted = 0.0;
    std::vector<std::pair<std::string, double>> laplacian;
    std::vector<std::pair<std::string, double>> baseline;
    std::vector<std::uint32_t> subsample;   // evaluated point indices
};

/// Mean neighborhood overlap: (1/(k m)) * sum_i |hd_i intersect ld_i| over
/// the m provided points. Both lists must hold k ids per point.
double qnx(const std::vector<std::vector<std::uint32_t>>& hd_sets,
           const std::vector<std::vector<std::uint32_t>>& ld_sets, std::size_t k);

/// ((n-1) Q - k) / (n - 1 - k). Zero for a random embedding, one for perfect
/// preservation; negative (worse than random) values are returned unclamped.
double rnx(double qnx_value, std::size_t k, std::size_t n);

/// R_NX with label-balanced HD neighborhoods: for each evaluated point the
/// HD set keeps exactly as many same-labeled points as its LD neighborhood
/// contains. eval_ids empty means all points; neighbors always rank among
/// all n points.
double adjusted_rnx(const DataMatrix& data, const LabelVector& labels, const Embedding& emb,
                    std::size_t k, std::span<const std::uint32_t> eval_ids = {},
                    int threads = 1);

/// Plain R_NX (no label balancing), same conventions.
double plain_rnx(const DataMatrix& data, const Embedding& emb, std::size_t k,
                 std::span<const std::uint32_t> eval_ids = {}, int threads = 1);

/// Mean fraction of differently-labeled points among each evaluated point's
/// k nearest embedding neighbors.
double laplacian_score(const Embedding& emb, const LabelVector& labels, std::size_t k,
                       std::span<const std::uint32_t> eval_ids = {}, int threads = 1);

/// Expected Laplacian score under a random label assignment:
/// sum_l n_l (n - n_l) / (n (n - 1)).
double laplacian_baseline(const LabelVector& labels);

struct LabelSetRef {
    std::string name;
    const LabelVector* labels = nullptr;
};

/// Runs every metric over a seeded random subsample of evaluation points.
/// The first label set drives the R_NX adjustment; with no label sets the
/// plain R_NX is reported.
EvalReport evaluate(const DataMatrix& data, const Embedding& emb,
                    const std::vector<LabelSetRef>& label_sets, std::size_t k,
                    double subsample_fraction, std::uint64_t seed, int threads = 1);

}  // namespace rctsne
