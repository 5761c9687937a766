// src/optimizer.cpp

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

#include "rctsne/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rctsne/parallel.hpp"
#include "rctsne/quadtree.hpp"
#include "rctsne/rng.hpp"

namespace rctsne {

void attractive_forces(const SparseAffinity& aff, std::span<const double> coords,
                       int dim, std::span<double> forces, int threads) {
    if (aff.state != AffinityState::SymmetricNormalized)
        throw std::invalid_argument("attractive_forces: affinity must be symmetric-normalized");
    const std::size_t n = aff.n;
    const std::size_t ud = static_cast<std::size_t>(dim);
    std::fill(forces.begin(), forces.end(), 0.0);
    parallel_for(n, threads, [&](std::size_t i) {
        const double* yi = &coords[i * ud];
        double* fi = &forces[i * ud];
        for (std::size_t e = aff.row_begin(i); e < aff.row_end(i); ++e) {
            const double* yj = &coords[aff.column_ids[e] * ud];
            double sq = 0.0;
            for (std::size_t d = 0; d < ud; ++d) {
                const double diff = yi[d] - yj[d];
                sq += diff * diff;
            }
            const double aw = aff.values[e] / (1.0 + sq);
            for (std::size_t d = 0; d < ud; ++d) fi[d] += aw * (yi[d] - yj[d]);
        }
    });
}

RepulsionResult bh_repulsion(std::span<const double> coords, std::size_t n,
                             double theta, int threads) {
    QuadTree tree(coords.subspan(0, 2 * n));
    RepulsionResult out;
    out.forces.assign(2 * n, 0.0);
    std::vector<double> sums(n, 0.0);
    parallel_for(n, threads, [&](std::size_t i) {
        sums[i] = tree.accumulate(&coords[2 * i], theta, &out.forces[2 * i]);
    });
    // Every query passes over its own point with w = 1 and zero force, so the
    // self term is removed here. Summed in index order for determinism.
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) z += sums[i] - 1.0;
    out.normalizer = z;
    return out;
}

RepulsionResult dense_repulsion(std::span<const double> coords, std::size_t n,
                                int dim, int threads) {
    const std::size_t ud = static_cast<std::size_t>(dim);
    RepulsionResult out;
    out.forces.assign(n * ud, 0.0);
    std::vector<double> sums(n, 0.0);
    parallel_for(n, threads, [&](std::size_t i) {
        const double* yi = &coords[i * ud];
        double* fi = &out.forces[i * ud];
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double* yj = &coords[j * ud];
            double sq = 0.0;
            for (std::size_t d = 0; d < ud; ++d) {
                const double diff = yi[d] - yj[d];
                sq += diff * diff;
            }
            const double w = 1.0 / (1.0 + sq);
            s += w;
            const double w2 = w * w;
            for (std::size_t d = 0; d < ud; ++d) fi[d] += w2 * (yi[d] - yj[d]);
        }
        sums[i] = s;
    });
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) z += sums[i];
    out.normalizer = z;
    return out;
}

RepulsionResult ctsne_repulsion(std::span<const double> coords, std::size_t n,
                                const LabelVector& labels, double beta,
                                double theta, int threads) {
    const std::size_t num_classes = static_cast<std::size_t>(labels.num_classes());
    QuadTree global(coords.subspan(0, 2 * n));
    std::vector<std::vector<std::uint32_t>> members(num_classes);
    for (std::size_t i = 0; i < n; ++i)
        members[static_cast<std::size_t>(labels.ids[i])].push_back(static_cast<std::uint32_t>(i));
    std::vector<QuadTree> class_trees;
    class_trees.reserve(num_classes);
    for (std::size_t c = 0; c < num_classes; ++c)
        class_trees.emplace_back(coords.subspan(0, 2 * n), members[c]);

    RepulsionResult out;
    out.forces.assign(2 * n, 0.0);
    std::vector<double> sums_all(n, 0.0), sums_same(n, 0.0);

    // delta*1 + (1-delta)*beta = beta + (1-beta)*delta: one pass over the
    // global tree plus one over the query's own class tree.
    parallel_for(n, threads, [&](std::size_t i) {
        double f_all[2] = {0.0, 0.0};
        double f_same[2] = {0.0, 0.0};
        sums_all[i] = global.accumulate(&coords[2 * i], theta, f_all);
        const auto& own = class_trees[static_cast<std::size_t>(labels.ids[i])];
        sums_same[i] = own.accumulate(&coords[2 * i], theta, f_same);
        out.forces[2 * i] = beta * f_all[0] + (1.0 - beta) * f_same[0];
        out.forces[2 * i + 1] = beta * f_all[1] + (1.0 - beta) * f_same[1];
    });

    double w_all = 0.0, w_same = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w_all += sums_all[i] - 1.0;
        w_same += sums_same[i] - 1.0;
    }
    out.normalizer = beta * w_all + (1.0 - beta) * w_same;
    return out;
}

RepulsionResult dense_ctsne_repulsion(std::span<const double> coords, std::size_t n,
                                      int dim, const LabelVector& labels, double beta,
                                      int threads) {
    const std::size_t ud = static_cast<std::size_t>(dim);
    RepulsionResult out;
    out.forces.assign(n * ud, 0.0);
    std::vector<double> sums(n, 0.0);
    parallel_for(n, threads, [&](std::size_t i) {
        const double* yi = &coords[i * ud];
        double* fi = &out.forces[i * ud];
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double* yj = &coords[j * ud];
            double sq = 0.0;
            for (std::size_t d = 0; d < ud; ++d) {
                const double diff = yi[d] - yj[d];
                sq += diff * diff;
            }
            const double w = 1.0 / (1.0 + sq);
            const double c = labels.ids[i] == labels.ids[j] ? 1.0 : beta;
            s += c * w;
            const double cw2 = c * w * w;
            for (std::size_t d = 0; d < ud; ++d) fi[d] += cw2 * (yi[d] - yj[d]);
        }
        sums[i] = s;
    });
    double u = 0.0;
    for (std::size_t i = 0; i < n; ++i) u += sums[i];
    out.normalizer = u;
    return out;
}

double kl_loss(const SparseAffinity& aff, std::span<const double> coords, int dim,
               KlMode mode, const LabelVector* labels, double beta, int threads) {
    if (aff.state != AffinityState::SymmetricNormalized)
        throw std::invalid_argument("kl_loss: affinity must be symmetric-normalized");
    if (mode == KlMode::Ctsne && labels == nullptr)
        throw std::invalid_argument("kl_loss: ctsne mode needs labels");
    const std::size_t n = aff.n;
    const std::size_t ud = static_cast<std::size_t>(dim);

    // Normalizer over all pairs (weighted for the conditioned mode).
    std::vector<double> partial(n, 0.0);
    parallel_for(n, threads, [&](std::size_t i) {
        const double* yi = &coords[i * ud];
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double* yj = &coords[j * ud];
            double sq = 0.0;
            for (std::size_t d = 0; d < ud; ++d) {
                const double diff = yi[d] - yj[d];
                sq += diff * diff;
            }
            double w = 1.0 / (1.0 + sq);
            if (mode == KlMode::Ctsne && labels->ids[i] != labels->ids[j]) w *= beta;
            s += w;
        }
        partial[i] = s;
    });
    double normalizer = 0.0;
    for (std::size_t i = 0; i < n; ++i) normalizer += partial[i];

    parallel_for(n, threads, [&](std::size_t i) {
        const double* yi = &coords[i * ud];
        double s = 0.0;
        for (std::size_t e = aff.row_begin(i); e < aff.row_end(i); ++e) {
            const std::uint32_t j = aff.column_ids[e];
            const double* yj = &coords[j * ud];
            double sq = 0.0;
            for (std::size_t d = 0; d < ud; ++d) {
                const double diff = yi[d] - yj[d];
                sq += diff * diff;
            }
            double w = 1.0 / (1.0 + sq);
            if (mode == KlMode::Ctsne && labels->ids[i] != labels->ids[j]) w *= beta;
            const double r = w / normalizer;
            const double a = aff.values[e];
            if (a > 0.0) s += a * std::log(a / r);
        }
        partial[i] = s;
    });
    double kl = 0.0;
    for (std::size_t i = 0; i < n; ++i) kl += partial[i];
    return kl;
}

Embedding run_embedding(const SparseAffinity& aff, const LabelVector* labels,
                        const EmbedConfig& cfg) {
    if (aff.state != AffinityState::SymmetricNormalized)
        throw std::invalid_argument("run_embedding: affinity must be symmetric-normalized");
    const std::size_t n = aff.n;
    const std::size_t ud = static_cast<std::size_t>(cfg.out_dim);
    const bool conditioned_ld = cfg.method == Method::Ctsne;
    if (conditioned_ld && labels == nullptr)
        throw std::invalid_argument("run_embedding: ctsne needs labels");
    if (cfg.out_dim != 2 && cfg.theta > 0.0)
        throw std::invalid_argument("run_embedding: output dimension above 2 requires theta = 0");
    const int threads = resolve_threads(cfg.threads);
    const double eta = cfg.learning_rate > 0.0
                           ? cfg.learning_rate
                           : std::max(static_cast<double>(n) / 12.0, 50.0);
    const KlMode kl_mode = conditioned_ld ? KlMode::Ctsne : KlMode::TsneLike;
    // With beta = 1 the conditioned repulsion equals the plain one; take the
    // cheap path and skip the per-class trees.
    const bool use_class_trees = conditioned_ld && cfg.beta < 1.0;

    Embedding emb;
    emb.n = n;
    emb.dim = cfg.out_dim;
    emb.seed = cfg.seed;
    emb.coords.resize(n * ud);
    Rng rng(cfg.seed);
    for (double& c : emb.coords) c = 1e-4 * rng.gaussian();

    SparseAffinity work = aff;
    bool exaggerated = cfg.exaggeration_iters > 0 && cfg.exaggeration != 1.0;
    if (exaggerated)
        for (double& v : work.values) v *= cfg.exaggeration;

    std::vector<double> attr(n * ud, 0.0);
    std::vector<double> velocity(n * ud, 0.0);
    std::vector<double> gains(n * ud, 1.0);

    emb.loss_trace.emplace_back(0, kl_loss(aff, emb.coords, cfg.out_dim, kl_mode,
                                           labels, cfg.beta, threads));

    for (int iter = 1; iter <= cfg.epochs; ++iter) {
        attractive_forces(work, emb.coords, cfg.out_dim, attr, threads);

        RepulsionResult rep;
        if (use_class_trees) {
            rep = cfg.theta > 0.0
                      ? ctsne_repulsion(emb.coords, n, *labels, cfg.beta, cfg.theta, threads)
                      : dense_ctsne_repulsion(emb.coords, n, cfg.out_dim, *labels, cfg.beta,
                                              threads);
        } else {
            rep = (cfg.out_dim == 2 && cfg.theta > 0.0)
                      ? bh_repulsion(emb.coords, n, cfg.theta, threads)
                      : dense_repulsion(emb.coords, n, cfg.out_dim, threads);
        }

        const double momentum =
            iter <= cfg.momentum_switch_iter ? cfg.momentum : cfg.final_momentum;
        const double inv_norm = 1.0 / rep.normalizer;
        const auto sign = [](double x) { return (x > 0.0) - (x < 0.0); };

        std::vector<double> mean(ud, 0.0);
        for (std::size_t c = 0; c < n * ud; ++c) {
            const double grad = 4.0 * (attr[c] - rep.forces[c] * inv_norm);
            const bool opposed = sign(grad) != sign(velocity[c]);
            gains[c] = std::max(opposed ? gains[c] + 0.2 : gains[c] * 0.8, 0.01);
            velocity[c] = momentum * velocity[c] - eta * gains[c] * grad;
            emb.coords[c] += velocity[c];
            mean[c % ud] += emb.coords[c];
        }
        for (std::size_t d = 0; d < ud; ++d) mean[d] /= static_cast<double>(n);
        bool finite = true;
        for (std::size_t c = 0; c < n * ud; ++c) {
            emb.coords[c] -= mean[c % ud];
            finite = finite && std::isfinite(emb.coords[c]);
        }
        if (!finite)
            throw std::runtime_error("embedding diverged at iteration " + std::to_string(iter) +
                                     "; lower the learning rate or exaggeration");

        if (exaggerated && iter >= cfg.exaggeration_iters) {
            work.values = aff.values;
            exaggerated = false;
        }
        if (iter % 50 == 0 || iter == cfg.epochs) {
            emb.loss_trace.emplace_back(iter, kl_loss(aff, emb.coords, cfg.out_dim, kl_mode,
                                                      labels, cfg.beta, threads));
        }
    }
    return emb;
}

}  // namespace rctsne
