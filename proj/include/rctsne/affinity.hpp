// include/rctsne/affinity.hpp

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
#include <vector>

#include "rctsne/core.hpp"
#include "rctsne/neighbors.hpp"

namespace rctsne {

/// Outcome of the per-point bandwidth calibration.
struct BandwidthResult {
    double sigma = 0.0;
    double achieved_perplexity = 0.0;
    int iterations_used = 0;
    bool converged = false;
};

struct GaussianRow {
    std::vector<double> p;
    bool underflow_uniform = false;   // row fell back to uniform after total underflow
};

/// Normalized Gaussian similarities over a neighbor distance list:
/// p_j proportional to exp(-d_j^2 / (2 sigma^2)). The largest exponent is
/// subtracted before exponentiation, so the row never overflows and the
/// maximum entry never underflows.
GaussianRow gaussian_row(std::span<const double> sq_dists, double sigma);

struct PerplexityRow {
    BandwidthResult bandwidth;
    std::vector<double> p;            // the row whose perplexity was measured
    bool underflow_uniform = false;
};

/// Bisection on the Gaussian precision tau = 1/(2 sigma^2) over
/// [1e-20, 1e20] until 2^H(row) matches the target perplexity within tol on
/// the log2 scale. In OnR mode each trial row is reweighted by cond_weights
/// (one multiplier per entry) and renormalized before the entropy is taken;
/// the perplexity is then not monotone in tau and the search converges to
/// one of possibly several roots, reported via achieved_perplexity. Never
/// throws: a target that cannot be met is returned with converged = false.
PerplexityRow perplexity_search(std::span<const double> sq_dists, double perplexity,
                                double tol = 1e-5, int max_iter = 200,
                                VarianceMode mode = VarianceMode::OnP,
                                std::span<const double> cond_weights = {});

/// 2^H(row) with H in bits; expects a normalized row.
double effective_perplexity(std::span<const double> row);

/// Conditional rows p_{.|i} (or r_{.|i}) over an explicit sparsity pattern.
/// Each row sums to 1.
struct ConditionalRows {
    std::size_t n = 0;
    std::vector<std::vector<std::uint32_t>> ids;
    std::vector<std::vector<double>> values;
};

struct ConditioningSpec {
    double beta = 1.0;                 // same-label multiplier; alpha fixed at 1
    const LabelVector* labels = nullptr;
};

namespace detail {
/// Reweights one conditional row in place: entries whose column label equals
/// own_label are scaled by beta, the rest by alpha, then the row is
/// renormalized. Returns true if the row underflowed to zero and fell back
/// to uniform over the same-labeled entries. Exposed with an explicit alpha
/// so tests can assert joint-scale invariance; production code fixes
/// alpha = 1.
bool condition_row(std::span<double> values, std::span<const std::uint32_t> ids,
                   std::int32_t own_label, const LabelVector& labels,
                   double alpha, double beta);
}  // namespace detail

/// Applies the label reweighting to every row. Returns the number of rows
/// that hit the underflow fallback.
std::size_t condition_rows(ConditionalRows& rows, const ConditioningSpec& spec);

/// (v_{j|i} + v_{i|j}) / (2n) over the union pattern, missing directions
/// counted as zero. Every kept value is floored at 1e-12/n and the matrix is
/// renormalized to total mass 1.
SparseAffinity symmetrize(const ConditionalRows& rows);

struct AffinityDiagnostics {
    double converged_fraction = 1.0;
    double median_effective_perplexity = 0.0;
    std::size_t underflow_rows = 0;
    std::vector<double> effective_perplexities;   // per row, of the final conditional rows
};

struct AffinityResult {
    SparseAffinity affinity;
    AffinityDiagnostics diagnostics;
};

/// Full high-dimensional similarity construction for the configured method:
///  - tsne / ctsne: Gaussian rows over unsplit neighbors, symmetrized.
///  - rctsne, variance on p: calibrate on the plain Gaussian over the merged
///    per-label neighbor row, then reweight by beta, then symmetrize.
///  - rctsne, variance on r: reweighting happens inside the bandwidth search.
AffinityResult build_affinities(const DataMatrix& data, const LabelVector* labels,
                                const EmbedConfig& cfg, const NeighborSets& neighbors);

}  // namespace rctsne
