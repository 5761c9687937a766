// src/affinity.cpp

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

#include "rctsne/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rctsne/parallel.hpp"

namespace rctsne {

namespace {

constexpr double kTauLo = 1e-20;
constexpr double kTauHi = 1e20;

// Entropy in bits of a normalized row; zero entries contribute nothing.
double entropy_bits(std::span<const double> row) {
    double h = 0.0;
    for (double p : row) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

// Fills row with exp(-tau * (d_j - d_min)) normalized to sum 1, optionally
// reweighted per entry before normalization. Subtracting the smallest
// distance keeps the largest term at exactly 1, so the row can overflow
// neither up nor down as a whole. Returns false if the weighted row still
// summed to zero.
bool fill_row(std::span<const double> sq_dists, double tau,
              std::span<const double> weights, std::vector<double>& row) {
    const std::size_t len = sq_dists.size();
    row.resize(len);
    double d_min = sq_dists[0];
    for (double d : sq_dists) d_min = std::min(d_min, d);

    double sum = 0.0;
    for (std::size_t j = 0; j < len; ++j) {
        double w = std::exp(-tau * (sq_dists[j] - d_min));
        if (!std::isfinite(w)) w = (sq_dists[j] == d_min) ? 1.0 : 0.0;  // tau at the domain edge
        if (!weights.empty()) w *= weights[j];
        row[j] = w;
        sum += w;
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) return false;
    for (double& v : row) v /= sum;
    return true;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    if (v.size() % 2 == 1) return v[mid];
    return 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

GaussianRow gaussian_row(std::span<const double> sq_dists, double sigma) {
    if (sq_dists.empty()) throw std::invalid_argument("gaussian_row: empty distance list");
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_row: sigma must be positive");
    GaussianRow out;
    const double tau = 1.0 / (2.0 * sigma * sigma);
    if (!fill_row(sq_dists, tau, {}, out.p)) {
        out.p.assign(sq_dists.size(), 1.0 / static_cast<double>(sq_dists.size()));
        out.underflow_uniform = true;
    }
    return out;
}

double effective_perplexity(std::span<const double> row) {
    return std::exp2(entropy_bits(row));
}

PerplexityRow perplexity_search(std::span<const double> sq_dists, double perplexity,
                                double tol, int max_iter, VarianceMode mode,
                                std::span<const double> cond_weights) {
    if (sq_dists.empty()) throw std::invalid_argument("perplexity_search: empty distance list");
    if (mode == VarianceMode::OnR && cond_weights.size() != sq_dists.size())
        throw std::invalid_argument("perplexity_search: on_r mode needs one weight per entry");

    const std::span<const double> weights =
        mode == VarianceMode::OnR ? cond_weights : std::span<const double>{};
    const double target = std::log2(perplexity);

    PerplexityRow out;
    double lo = kTauLo, hi = kTauHi;
    double tau = 1.0;  // overwritten on the first iteration
    int used = 0;
    bool converged = false;
    double achieved = 0.0;

    // Plain bisection on the precision. With on_r weighting the perplexity is
    // not monotone in tau, so this settles on one root among possibly several;
    // the achieved value is reported so callers can see which.
    for (int it = 0; it < max_iter; ++it) {
        tau = 0.5 * (lo + hi);
        ++used;
        out.underflow_uniform = !fill_row(sq_dists, tau, weights, out.p);
        if (out.underflow_uniform)
            out.p.assign(sq_dists.size(), 1.0 / static_cast<double>(sq_dists.size()));
        const double h = entropy_bits(out.p);
        achieved = std::exp2(h);
        if (std::abs(h - target) <= tol) {
            converged = true;
            break;
        }
        if (h > target) {
            lo = tau;  // row too flat: shrink the bandwidth
        } else {
            hi = tau;
        }
    }

    out.bandwidth.sigma = std::sqrt(1.0 / (2.0 * tau));
    out.bandwidth.achieved_perplexity = achieved;
    out.bandwidth.iterations_used = used;
    out.bandwidth.converged = converged;
    return out;
}

namespace detail {

bool condition_row(std::span<double> values, std::span<const std::uint32_t> ids,
                   std::int32_t own_label, const LabelVector& labels,
                   double alpha, double beta) {
    double same_mass = 0.0, diff_mass = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (labels.ids[ids[j]] == own_label)
            same_mass += values[j];
        else
            diff_mass += values[j];
    }
    const double denom = beta * same_mass + alpha * diff_mass;
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        // Everything underflowed; this only happens when the row carries no
        // differently-labeled mass, so spread it over the same-labeled
        // entries (or all entries if there are none of those either).
        std::size_t same_count = 0;
        for (std::size_t j = 0; j < values.size(); ++j)
            if (labels.ids[ids[j]] == own_label) ++same_count;
        if (same_count == 0) {
            const double u = 1.0 / static_cast<double>(values.size());
            for (double& v : values) v = u;
        } else {
            const double u = 1.0 / static_cast<double>(same_count);
            for (std::size_t j = 0; j < values.size(); ++j)
                values[j] = labels.ids[ids[j]] == own_label ? u : 0.0;
        }
        return true;
    }
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double scale = labels.ids[ids[j]] == own_label ? beta : alpha;
        values[j] = scale * values[j] / denom;
    }
    return false;
}

}  // namespace detail

std::size_t condition_rows(ConditionalRows& rows, const ConditioningSpec& spec) {
    if (spec.labels == nullptr)
        throw std::invalid_argument("condition_rows: labels required");
    if (!(spec.beta > 0.0)) throw std::invalid_argument("condition_rows: beta must be positive");
    std::size_t underflows = 0;
    for (std::size_t i = 0; i < rows.n; ++i) {
        if (rows.ids[i].empty()) continue;
        if (detail::condition_row(rows.values[i], rows.ids[i],
                                  spec.labels->ids[i], *spec.labels, 1.0, spec.beta))
            ++underflows;
    }
    return underflows;
}

SparseAffinity symmetrize(const ConditionalRows& rows) {
    const std::size_t n = rows.n;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> acc(n);
    for (std::size_t i = 0; i < n; ++i)
        acc[i].reserve(2 * rows.ids[i].size());

    // Insert each directed value on both sides; after a stable sort, equal
    // columns merge in identical order on the two sides, so (i,j) and (j,i)
    // come out bitwise equal.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t e = 0; e < rows.ids[i].size(); ++e) {
            const std::uint32_t j = rows.ids[i][e];
            const double v = rows.values[i][e];
            acc[i].emplace_back(j, v);
            acc[j].emplace_back(static_cast<std::uint32_t>(i), v);
        }
    }

    SparseAffinity out;
    out.n = n;
    out.row_offsets.assign(n + 1, 0);
    const double inv_2n = 1.0 / (2.0 * static_cast<double>(n));
    const double floor_value = 1e-12 / static_cast<double>(n);

    for (std::size_t i = 0; i < n; ++i) {
        auto& row = acc[i];
        std::stable_sort(row.begin(), row.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t e = 0; e < row.size();) {
            const std::uint32_t col = row[e].first;
            double sum = 0.0;
            while (e < row.size() && row[e].first == col) {
                sum += row[e].second;
                ++e;
            }
            out.column_ids.push_back(col);
            out.values.push_back(std::max(sum * inv_2n, floor_value));
        }
        out.row_offsets[i + 1] = out.values.size();
        row.clear();
        row.shrink_to_fit();
    }

    double total = out.total();
    for (double& v : out.values) v /= total;
    out.state = AffinityState::SymmetricNormalized;
    return out;
}

AffinityResult build_affinities(const DataMatrix& data, const LabelVector* labels,
                                const EmbedConfig& cfg, const NeighborSets& neighbors) {
    const std::size_t n = data.n;
    if (neighbors.size() != n)
        throw std::invalid_argument("build_affinities: neighbor sets do not match data");
    const bool conditioned = cfg.method == Method::Rctsne;
    if (conditioned && labels == nullptr)
        throw std::invalid_argument("build_affinities: labels required for rctsne");
    if (conditioned && !neighbors.split)
        throw std::invalid_argument("build_affinities: rctsne needs per-label neighbor sets");

    ConditionalRows rows;
    rows.n = n;
    rows.ids.resize(n);
    rows.values.resize(n);

    std::vector<char> row_converged(n, 0);
    std::vector<char> row_underflow(n, 0);
    std::vector<double> eff_perp(n, 0.0);

    parallel_for(n, resolve_threads(cfg.threads), [&](std::size_t i) {
        std::vector<std::uint32_t> ids = neighbors.primary[i].ids;
        std::vector<double> dists = neighbors.primary[i].sq_dists;
        std::size_t same_count = ids.size();
        if (neighbors.split) {
            ids.insert(ids.end(), neighbors.diff[i].ids.begin(), neighbors.diff[i].ids.end());
            dists.insert(dists.end(), neighbors.diff[i].sq_dists.begin(),
                         neighbors.diff[i].sq_dists.end());
        }
        if (ids.empty())
            throw std::runtime_error("build_affinities: point " + std::to_string(i) +
                                     " has no neighbors");

        PerplexityRow ps;
        bool underflow = false;
        if (conditioned && cfg.variance_mode == VarianceMode::OnR) {
            std::vector<double> weights(ids.size(), 1.0);
            for (std::size_t e = 0; e < same_count; ++e) weights[e] = cfg.beta;
            ps = perplexity_search(dists, cfg.perplexity, 1e-5, 200, VarianceMode::OnR, weights);
            underflow = ps.underflow_uniform;
        } else {
            ps = perplexity_search(dists, cfg.perplexity);
            underflow = ps.underflow_uniform;
            if (conditioned) {
                underflow |= detail::condition_row(ps.p, ids, labels->ids[i], *labels,
                                                   1.0, cfg.beta);
            }
        }

        row_converged[i] = ps.bandwidth.converged ? 1 : 0;
        row_underflow[i] = underflow ? 1 : 0;
        eff_perp[i] = effective_perplexity(ps.p);
        rows.ids[i] = std::move(ids);
        rows.values[i] = std::move(ps.p);
    });

    AffinityResult out;
    out.affinity = symmetrize(rows);
    std::size_t converged = 0, underflows = 0;
    for (std::size_t i = 0; i < n; ++i) {
        converged += row_converged[i];
        underflows += row_underflow[i];
    }
    out.diagnostics.converged_fraction = static_cast<double>(converged) / static_cast<double>(n);
    out.diagnostics.median_effective_perplexity = median_of(eff_perp);
    out.diagnostics.underflow_rows = underflows;
    out.diagnostics.effective_perplexities = std::move(eff_perp);
    return out;
}

}  // namespace rctsne
