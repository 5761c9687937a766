// include/rctsne/optimizer.hpp

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

#include <span>
#include <vector>

#include "rctsne/core.hpp"

namespace rctsne {

/// F_i = sum over stored pairs of a_ij * (1 + |y_i - y_j|^2)^-1 * (y_i - y_j),
/// written into forces (n x dim). Requires a symmetric-normalized affinity.
void attractive_forces(const SparseAffinity& aff, std::span<const double> coords,
                       int dim, std::span<double> forces, int threads = 1);

/// Repulsion sums with w_ij = (1 + |y_i - y_j|^2)^-1:
/// forces_i = sum_j w_ij^2 (y_i - y_j) and normalizer = sum_{i != j} w_ij.
/// The gradient's repulsive term is forces / normalizer.
struct RepulsionResult {
    std::vector<double> forces;   // n x dim
    double normalizer = 0.0;      // Z for plain repulsion, U for the conditioned one
};

/// Barnes-Hut approximation over a quadtree (dim must be 2); theta = 0 is
/// exact up to summation order.
RepulsionResult bh_repulsion(std::span<const double> coords, std::size_t n,
                             double theta, int threads = 1);

/// Exact dense pairwise repulsion for any output dimension.
RepulsionResult dense_repulsion(std::span<const double> coords, std::size_t n,
                                int dim, int threads = 1);

/// Label-conditioned repulsion: pair (i, j) is weighted by 1 when labels
/// match and by beta otherwise, computed as beta * global sums plus
/// (1 - beta) * per-class sums with one quadtree per class. normalizer is
/// U = sum of weighted w over all pairs.
RepulsionResult ctsne_repulsion(std::span<const double> coords, std::size_t n,
                                const LabelVector& labels, double beta,
                                double theta, int threads = 1);

/// Dense variant of ctsne_repulsion for any output dimension.
RepulsionResult dense_ctsne_repulsion(std::span<const double> coords, std::size_t n,
                                      int dim, const LabelVector& labels, double beta,
                                      int threads = 1);

enum class KlMode { TsneLike, Ctsne };

/// Exact O(n^2) KL divergence between the stored affinities and the
/// low-dimensional similarities; Ctsne mode conditions the latter on labels
/// (weight 1 on same-label pairs, beta otherwise) before comparing.
double kl_loss(const SparseAffinity& aff, std::span<const double> coords, int dim,
               KlMode mode, const LabelVector* labels = nullptr, double beta = 1.0,
               int threads = 1);

/// Gradient descent with early exaggeration, momentum switch, and adaptive
/// per-coordinate gains. Deterministic for a fixed seed at any thread count.
/// Throws std::runtime_error if a coordinate becomes non-finite.
Embedding run_embedding(const SparseAffinity& aff, const LabelVector* labels,
                        const EmbedConfig& cfg);

}  // namespace rctsne
