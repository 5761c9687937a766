// tests/oracle.hpp
//
// Independent reference implementations used only by tests. Everything here
// is dense, loop-based, and deliberately written without touching the
// library's sparse code paths, so agreement between the two is meaningful.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "rctsne/core.hpp"

namespace oracle {

using rctsne::DataMatrix;
using rctsne::LabelVector;

// Brute-force k nearest neighbors of row i by (squared distance, id).
inline std::vector<std::pair<double, std::uint32_t>> knn(const DataMatrix& data, std::size_t i,
                                                         std::size_t k) {
    std::vector<std::pair<double, std::uint32_t>> cand;
    for (std::size_t j = 0; j < data.n; ++j) {
        if (j == i) continue;
        double sq = 0.0;
        for (std::size_t d = 0; d < data.d; ++d) {
            const double diff = data.at(i, d) - data.at(j, d);
            sq += diff * diff;
        }
        cand.emplace_back(sq, static_cast<std::uint32_t>(j));
    }
    std::sort(cand.begin(), cand.end());
    cand.resize(std::min(k, cand.size()));
    return cand;
}

// Dense conditional Gaussian rows over all j != i: bisection on the
// precision in [1e-20, 1e20], at most 200 iterations, tolerance 1e-5 on the
// log2 perplexity. Returns a row-major n x n matrix with zero diagonal and
// rows summing to 1.
inline std::vector<double> dense_conditional_rows(const DataMatrix& data, double perplexity) {
    const std::size_t n = data.n;
    std::vector<double> sq(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t d = 0; d < data.d; ++d) {
                const double diff = data.at(i, d) - data.at(j, d);
                s += diff * diff;
            }
            sq[i * n + j] = s;
        }
    }

    std::vector<double> rows(n * n, 0.0);
    const double target = std::log2(perplexity);
    for (std::size_t i = 0; i < n; ++i) {
        double lo = 1e-20, hi = 1e20;
        double tau = 1.0;
        for (int it = 0; it < 200; ++it) {
            tau = 0.5 * (lo + hi);
            double d_min = std::numeric_limits<double>::max();
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) d_min = std::min(d_min, sq[i * n + j]);
            double sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) {
                    rows[i * n + j] = 0.0;
                    continue;
                }
                rows[i * n + j] = std::exp(-tau * (sq[i * n + j] - d_min));
                sum += rows[i * n + j];
            }
            double h = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const double p = rows[i * n + j] / sum;
                if (p > 0.0) h -= p * std::log2(p);
            }
            for (std::size_t j = 0; j < n; ++j) rows[i * n + j] /= sum;
            if (std::abs(h - target) <= 1e-5) break;
            if (h > target) lo = tau;
            else hi = tau;
        }
    }
    return rows;
}

// In-place label reweighting of dense conditional rows; alpha on
// differently-labeled entries, beta on same-labeled ones.
inline void dense_condition(std::vector<double>& rows, std::size_t n, const LabelVector& labels,
                            double alpha, double beta) {
    for (std::size_t i = 0; i < n; ++i) {
        double denom = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            denom += (labels.ids[i] == labels.ids[j] ? beta : alpha) * rows[i * n + j];
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double scale = labels.ids[i] == labels.ids[j] ? beta : alpha;
            rows[i * n + j] = scale * rows[i * n + j] / denom;
        }
    }
}

// (P + P^T) / (2n) with the library's floor-and-renormalize convention.
inline std::vector<double> dense_symmetrize(const std::vector<double>& rows, std::size_t n) {
    std::vector<double> sym(n * n, 0.0);
    const double floor_value = 1e-12 / static_cast<double>(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            sym[i * n + j] =
                std::max((rows[i * n + j] + rows[j * n + i]) / (2.0 * static_cast<double>(n)),
                         floor_value);
            total += sym[i * n + j];
        }
    }
    for (double& v : sym) v /= total;
    return sym;
}

// Plain t-SNE gradient, written from the textbook formula with an explicit
// Z: grad_i = 4 sum_j (p_ij - q_ij) w_ij (y_i - y_j), q = w / Z.
inline std::vector<double> dense_tsne_gradient(const std::vector<double>& p_sym, std::size_t n,
                                               const std::vector<double>& coords, int dim) {
    const std::size_t ud = static_cast<std::size_t>(dim);
    std::vector<double> w(n * n, 0.0);
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double sq = 0.0;
            for (std::size_t d = 0; d < ud; ++d) {
                const double diff = coords[i * ud + d] - coords[j * ud + d];
                sq += diff * diff;
            }
            w[i * n + j] = 1.0 / (1.0 + sq);
            z += w[i * n + j];
        }
    }
    std::vector<double> grad(n * ud, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double mult = 4.0 * (p_sym[i * n + j] - w[i * n + j] / z) * w[i * n + j];
            for (std::size_t d = 0; d < ud; ++d)
                grad[i * ud + d] += mult * (coords[i * ud + d] - coords[j * ud + d]);
        }
    }
    return grad;
}

// ct-SNE gradient, verbatim: the repulsive weight of pair (i, j) is
// (delta alpha + (1 - delta) beta) / U with U = alpha sum_same q + beta
// sum_diff q, all in q units.
inline std::vector<double> dense_ctsne_gradient(const std::vector<double>& p_sym, std::size_t n,
                                                const std::vector<double>& coords, int dim,
                                                const LabelVector& labels, double alpha,
                                                double beta) {
    const std::size_t ud = static_cast<std::size_t>(dim);
    std::vector<double> w(n * n, 0.0);
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double sq = 0.0;
            for (std::size_t d = 0; d < ud; ++d) {
                const double diff = coords[i * ud + d] - coords[j * ud + d];
                sq += diff * diff;
            }
            w[i * n + j] = 1.0 / (1.0 + sq);
            z += w[i * n + j];
        }
    }
    double u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double q = w[i * n + j] / z;
            u += (labels.ids[i] == labels.ids[j] ? alpha : beta) * q;
        }
    }
    std::vector<double> grad(n * ud, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double q = w[i * n + j] / z;
            const double c = labels.ids[i] == labels.ids[j] ? alpha : beta;
            const double attract = p_sym[i * n + j] * q * z;
            const double repel = (c / u) * q * q * z;
            for (std::size_t d = 0; d < ud; ++d)
                grad[i * ud + d] += 4.0 * (attract - repel) *
                                    (coords[i * ud + d] - coords[j * ud + d]);
        }
    }
    return grad;
}

// Exact repulsion sums for comparison with the Barnes-Hut approximation:
// forces_i = sum_j w_ij^2 (y_i - y_j), plus Z.
inline std::pair<std::vector<double>, double> dense_repulsion_sums(
    const std::vector<double>& coords, std::size_t n, int dim) {
    const std::size_t ud = static_cast<std::size_t>(dim);
    std::vector<double> forces(n * ud, 0.0);
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double sq = 0.0;
            for (std::size_t d = 0; d < ud; ++d) {
                const double diff = coords[i * ud + d] - coords[j * ud + d];
                sq += diff * diff;
            }
            const double w = 1.0 / (1.0 + sq);
            z += w;
            for (std::size_t d = 0; d < ud; ++d)
                forces[i * ud + d] += w * w * (coords[i * ud + d] - coords[j * ud + d]);
        }
    }
    return {std::move(forces), z};
}

// Mean silhouette coefficient of a labeled 2-D embedding.
inline double silhouette(const std::vector<double>& coords, std::size_t n,
                         const LabelVector& labels) {
    const std::size_t num_classes = static_cast<std::size_t>(labels.num_classes());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> mean_dist(num_classes, 0.0);
        std::vector<std::size_t> counts(num_classes, 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = coords[2 * i] - coords[2 * j];
            const double dy = coords[2 * i + 1] - coords[2 * j + 1];
            const std::size_t c = static_cast<std::size_t>(labels.ids[j]);
            mean_dist[c] += std::sqrt(dx * dx + dy * dy);
            counts[c] += 1;
        }
        const std::size_t own = static_cast<std::size_t>(labels.ids[i]);
        const double a = counts[own] > 0 ? mean_dist[own] / static_cast<double>(counts[own]) : 0.0;
        double b = std::numeric_limits<double>::max();
        for (std::size_t c = 0; c < num_classes; ++c) {
            if (c == own || counts[c] == 0) continue;
            b = std::min(b, mean_dist[c] / static_cast<double>(counts[c]));
        }
        total += (b - a) / std::max(a, b);
    }
    return total / static_cast<double>(n);
}

}  // namespace oracle
