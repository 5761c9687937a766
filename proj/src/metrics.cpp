// src/metrics.cpp

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

#include "rctsne/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rctsne/parallel.hpp"
#include "rctsne/rng.hpp"

namespace rctsne {

namespace {

// k nearest rows to row `i` among all rows of a flat row-major array, by
// squared Euclidean distance, ties broken by smaller id, self excluded.
// An optional label filter restricts candidates to one class (keep == true)
// or its complement.
std::vector<std::uint32_t> brute_knn(const double* rows, std::size_t n, std::size_t dim,
                                     std::size_t i, std::size_t k,
                                     const LabelVector* labels = nullptr,
                                     std::int32_t cls = -1, bool keep = true) {
    std::vector<std::pair<double, std::uint32_t>> cand;
    cand.reserve(n);
    const double* yi = rows + i * dim;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        if (labels != nullptr) {
            const bool match = labels->ids[j] == cls;
            if (match != keep) continue;
        }
        const double* yj = rows + j * dim;
        double sq = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = yi[d] - yj[d];
            sq += diff * diff;
        }
        cand.emplace_back(sq, static_cast<std::uint32_t>(j));
    }
    const std::size_t take = std::min(k, cand.size());
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(take), cand.end());
    std::vector<std::uint32_t> out(take);
    for (std::size_t e = 0; e < take; ++e) out[e] = cand[e].second;
    return out;
}

std::size_t overlap_count(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t cnt = 0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] < b[ib]) ++ia;
        else if (b[ib] < a[ia]) ++ib;
        else { ++cnt; ++ia; ++ib; }
    }
    return cnt;
}

std::vector<std::uint32_t> all_indices(std::size_t n) {
    std::vector<std::uint32_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0u);
    return ids;
}

}  // namespace

double qnx(const std::vector<std::vector<std::uint32_t>>& hd_sets,
           const std::vector<std::vector<std::uint32_t>>& ld_sets, std::size_t k) {
    if (hd_sets.size() != ld_sets.size())
        throw std::invalid_argument("qnx: neighborhood list counts differ");
    if (hd_sets.empty()) throw std::invalid_argument("qnx: no neighborhoods given");
    std::size_t total = 0;
    for (std::size_t i = 0; i < hd_sets.size(); ++i) {
        if (hd_sets[i].size() != k || ld_sets[i].size() != k)
            throw std::invalid_argument("qnx: neighborhood size mismatch");
        total += overlap_count(hd_sets[i], ld_sets[i]);
    }
    return static_cast<double>(total) /
           (static_cast<double>(k) * static_cast<double>(hd_sets.size()));
}

double rnx(double qnx_value, std::size_t k, std::size_t n) {
    if (k + 1 >= n) throw std::invalid_argument("rnx: k must be below n - 1");
    const double nn = static_cast<double>(n);
    const double kk = static_cast<double>(k);
    return ((nn - 1.0) * qnx_value - kk) / (nn - 1.0 - kk);
}

double plain_rnx(const DataMatrix& data, const Embedding& emb, std::size_t k,
                 std::span<const std::uint32_t> eval_ids, int threads) {
    const std::size_t n = data.n;
    std::vector<std::uint32_t> everyone;
    if (eval_ids.empty()) {
        everyone = all_indices(n);
        eval_ids = everyone;
    }
    const std::size_t m = eval_ids.size();
    std::vector<std::size_t> overlaps(m, 0);
    const std::size_t ud = static_cast<std::size_t>(emb.dim);
    parallel_for(m, threads, [&](std::size_t e) {
        const std::size_t i = eval_ids[e];
        auto ld = brute_knn(emb.coords.data(), n, ud, i, k);
        auto hd = brute_knn(data.values.data(), n, data.d, i, k);
        overlaps[e] = overlap_count(std::move(hd), std::move(ld));
    });
    std::size_t total = 0;
    for (std::size_t o : overlaps) total += o;
    const double q = static_cast<double>(total) / (static_cast<double>(k) * static_cast<double>(m));
    return rnx(q, k, n);
}

double adjusted_rnx(const DataMatrix& data, const LabelVector& labels, const Embedding& emb,
                    std::size_t k, std::span<const std::uint32_t> eval_ids, int threads) {
    const std::size_t n = data.n;
    if (labels.size() != n) throw std::invalid_argument("adjusted_rnx: label length mismatch");
    if (emb.n != n) throw std::invalid_argument("adjusted_rnx: embedding row mismatch");
    std::vector<std::uint32_t> everyone;
    if (eval_ids.empty()) {
        everyone = all_indices(n);
        eval_ids = everyone;
    }
    const std::size_t m = eval_ids.size();
    std::vector<std::size_t> overlaps(m, 0);
    const std::size_t ud = static_cast<std::size_t>(emb.dim);
    parallel_for(m, threads, [&](std::size_t e) {
        const std::size_t i = eval_ids[e];
        const std::int32_t own = labels.ids[i];
        auto ld = brute_knn(emb.coords.data(), n, ud, i, k);
        // Balance the HD neighborhood to the label split the embedding chose:
        // as many same-labeled points as the LD neighborhood holds, the rest
        // differently labeled.
        std::size_t same = 0;
        for (std::uint32_t j : ld)
            if (labels.ids[j] == own) ++same;
        auto hd = brute_knn(data.values.data(), n, data.d, i, same, &labels, own, true);
        auto hd_diff = brute_knn(data.values.data(), n, data.d, i, k - same, &labels, own, false);
        hd.insert(hd.end(), hd_diff.begin(), hd_diff.end());
        overlaps[e] = overlap_count(std::move(hd), std::move(ld));
    });
    std::size_t total = 0;
    for (std::size_t o : overlaps) total += o;
    const double q = static_cast<double>(total) / (static_cast<double>(k) * static_cast<double>(m));
    return rnx(q, k, n);
}

double laplacian_score(const Embedding& emb, const LabelVector& labels, std::size_t k,
                       std::span<const std::uint32_t> eval_ids, int threads) {
    const std::size_t n = emb.n;
    if (k >= n) throw std::invalid_argument("laplacian_score: k must be below n");
    if (labels.size() != n) throw std::invalid_argument("laplacian_score: label length mismatch");
    std::vector<std::uint32_t> everyone;
    if (eval_ids.empty()) {
        everyone = all_indices(n);
        eval_ids = everyone;
    }
    const std::size_t m = eval_ids.size();
    std::vector<double> fractions(m, 0.0);
    const std::size_t ud = static_cast<std::size_t>(emb.dim);
    parallel_for(m, threads, [&](std::size_t e) {
        const std::size_t i = eval_ids[e];
        auto ld = brute_knn(emb.coords.data(), n, ud, i, k);
        std::size_t diff = 0;
        for (std::uint32_t j : ld)
            if (labels.ids[j] != labels.ids[i]) ++diff;
        fractions[e] = static_cast<double>(diff) / static_cast<double>(k);
    });
    double total = 0.0;
    for (double f : fractions) total += f;
    return total / static_cast<double>(m);
}

double laplacian_baseline(const LabelVector& labels) {
    const double n = static_cast<double>(labels.size());
    if (n < 2.0) return 0.0;
    double score = 0.0;
    for (std::size_t count : labels.class_counts) {
        const double nl = static_cast<double>(count);
        score += nl * (n - nl) / (n * (n - 1.0));
    }
    return score;
}

EvalReport evaluate(const DataMatrix& data, const Embedding& emb,
                    const std::vector<LabelSetRef>& label_sets, std::size_t k,
                    double subsample_fraction, std::uint64_t seed, int threads) {
    if (emb.n != data.n) throw std::invalid_argument("evaluate: embedding row mismatch");
    const std::size_t n = data.n;

    EvalReport report;
    report.k = k;

    if (subsample_fraction >= 1.0) {
        report.subsample = all_indices(n);
    } else {
        if (!(subsample_fraction > 0.0))
            throw std::invalid_argument("evaluate: subsample fraction must be positive");
        std::size_t m = static_cast<std::size_t>(
            std::llround(subsample_fraction * static_cast<double>(n)));
        m = std::clamp<std::size_t>(m, 1, n);
        auto ids = all_indices(n);
        Rng rng(seed);
        rng.shuffle(ids);
        ids.resize(m);
        std::sort(ids.begin(), ids.end());
        report.subsample = std::move(ids);
    }

    report.rnx_adjusted =
        label_sets.empty()
            ? plain_rnx(data, emb, k, report.subsample, threads)
            : adjusted_rnx(data, *label_sets.front().labels, emb, k, report.subsample, threads);

    for (const auto& set : label_sets) {
        report.laplacian.emplace_back(
            set.name, laplacian_score(emb, *set.labels, k, report.subsample, threads));
        report.baseline.emplace_back(set.name, laplacian_baseline(*set.labels));
    }
    return report;
}

}  // namespace rctsne
