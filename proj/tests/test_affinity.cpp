#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "oracle.hpp"
#include "rctsne/affinity.hpp"
#include "rctsne/datagen.hpp"
#include "rctsne/neighbors.hpp"
#include "rctsne/rng.hpp"

using namespace rctsne;

namespace {

DataMatrix make_blob(std::size_t n, std::size_t d, std::uint64_t seed) {
    DataMatrix data(n, d);
    Rng rng(seed);
    for (double& v : data.values) v = rng.gaussian();
    return data;
}

LabelVector halves(std::size_t n) {
    std::vector<std::int32_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i < n / 2 ? 0 : 1;
    return LabelVector::from_ids(std::move(ids));
}

// CSR lookup; returns 0 for absent entries.
double aff_at(const SparseAffinity& aff, std::size_t i, std::size_t j) {
    for (std::size_t e = aff.row_begin(i); e < aff.row_end(i); ++e)
        if (aff.column_ids[e] == j) return aff.values[e];
    return 0.0;
}

}  // namespace

TEST_CASE("gaussian_row: symmetry, limits, and a frozen evaluation") {
    {
        auto row = gaussian_row(std::vector<double>{1.0, 1.0, 1.0}, 0.7);
        for (double p : row.p) CHECK(p == doctest::Approx(1.0 / 3.0));
    }
    {
        auto row = gaussian_row(std::vector<double>{0.0, 1e60}, 1.0);
        CHECK(row.p[0] == doctest::Approx(1.0));
        CHECK(row.p[1] == doctest::Approx(0.0));
        CHECK_FALSE(row.underflow_uniform);
    }
    {
        auto row = gaussian_row(std::vector<double>{1.0, 2.0, 3.0}, 1.0);
        CHECK(row.p[0] == doctest::Approx(0.50648039105565401).epsilon(1e-12));
        CHECK(row.p[1] == doctest::Approx(0.30719588571849837).epsilon(1e-12));
        CHECK(row.p[2] == doctest::Approx(0.18632372322584756).epsilon(1e-12));
    }
}

TEST_CASE("perplexity_search on equidistant rows") {
    const std::vector<double> dists{2.0, 2.0, 2.0};
    auto hit = perplexity_search(dists, 3.0);
    CHECK(hit.bandwidth.converged);
    CHECK(hit.bandwidth.iterations_used == 1);
    CHECK(hit.bandwidth.achieved_perplexity == doctest::Approx(3.0));

    auto miss = perplexity_search(dists, 2.0);
    CHECK_FALSE(miss.bandwidth.converged);
    CHECK(miss.bandwidth.iterations_used == 200);
    CHECK(miss.bandwidth.achieved_perplexity == doctest::Approx(3.0));
}

TEST_CASE("perplexity_search matches an independent bisection on sigma") {
    const std::vector<double> dists{1.0, 4.0, 9.0, 16.0, 25.0};
    auto hit = perplexity_search(dists, 2.0);
    REQUIRE(hit.bandwidth.converged);

    // Oracle: bisection directly on sigma, far past the library's tolerance.
    auto perp_at = [&](double sigma) {
        double sum = 0.0;
        std::vector<double> w(dists.size());
        for (std::size_t j = 0; j < dists.size(); ++j) {
            w[j] = std::exp(-(dists[j] - dists[0]) / (2.0 * sigma * sigma));
            sum += w[j];
        }
        double h = 0.0;
        for (double x : w) {
            const double p = x / sum;
            if (p > 0.0) h -= p * std::log2(p);
        }
        return std::exp2(h);
    };
    double lo = 1e-6, hi = 1e6;
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (perp_at(mid) > 2.0) hi = mid;
        else lo = mid;
    }
    const double sigma_oracle = 0.5 * (lo + hi);
    CHECK(perp_at(sigma_oracle) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(hit.bandwidth.sigma ==
          doctest::Approx(sigma_oracle).epsilon(1e-6));
    CHECK(sigma_oracle == doctest::Approx(1.1378480918802993).epsilon(1e-9));
}

TEST_CASE("effective_perplexity fixed points") {
    CHECK(effective_perplexity(std::vector<double>(8, 0.125)) == doctest::Approx(8.0));
    CHECK(effective_perplexity(std::vector<double>{1.0, 0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(effective_perplexity(std::vector<double>{0.5, 0.25, 0.25}) ==
          doctest::Approx(2.8284271247461903).epsilon(1e-12));
}

TEST_CASE("condition_row reweights and renormalizes") {
    // Points: 0 is the row owner (class 0), 1 shares its class, 2 does not.
    auto labels = LabelVector::from_ids({0, 0, 1});
    const std::vector<std::uint32_t> ids{1, 2};

    SUBCASE("beta = 1 is the identity") {
        std::vector<double> values{0.3, 0.7};
        CHECK_FALSE(detail::condition_row(values, ids, 0, labels, 1.0, 1.0));
        CHECK(values[0] == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(values[1] == doctest::Approx(0.7).epsilon(1e-15));
    }
    SUBCASE("beta = 0.5 shifts mass to the different label") {
        std::vector<double> values{0.3, 0.7};
        detail::condition_row(values, ids, 0, labels, 1.0, 0.5);
        CHECK(values[0] == doctest::Approx(0.17647058823529413).epsilon(1e-12));
        CHECK(values[1] == doctest::Approx(0.8235294117647058).epsilon(1e-12));
    }
    SUBCASE("beta to zero empties the same-label mass") {
        std::vector<double> values{0.3, 0.7};
        detail::condition_row(values, ids, 0, labels, 1.0, 1e-300);
        CHECK(values[0] < 1e-250);
        CHECK(values[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("total underflow falls back to uniform over same-labeled entries") {
        auto same_labels = LabelVector::from_ids({0, 0, 0});
        std::vector<double> tiny{5e-11, 5e-11};
        CHECK(detail::condition_row(tiny, ids, 0, same_labels, 1.0, 1e-320));
        CHECK(tiny[0] == doctest::Approx(0.5));
        CHECK(tiny[1] == doctest::Approx(0.5));
    }
}

TEST_CASE("joint scaling of alpha and beta leaves rows unchanged") {
    Rng rng(5);
    auto labels = LabelVector::from_ids({0, 1, 0, 1, 0, 1, 1, 0});
    std::vector<std::uint32_t> ids{1, 2, 3, 4, 5, 6, 7};
    std::vector<double> base(ids.size());
    double sum = 0.0;
    for (double& v : base) {
        v = rng.uniform() + 0.01;
        sum += v;
    }
    for (double& v : base) v /= sum;

    for (double c : {0.1, 3.0, 1e6}) {
        std::vector<double> a = base, b = base;
        detail::condition_row(a, ids, 0, labels, 1.0, 0.2);
        detail::condition_row(b, ids, 0, labels, c * 1.0, c * 0.2);
        for (std::size_t j = 0; j < a.size(); ++j)
            CHECK(a[j] == doctest::Approx(b[j]).epsilon(1e-12));
    }
}

TEST_CASE("same-label mass is strictly increasing in beta") {
    Rng rng(6);
    auto labels = LabelVector::from_ids({0, 1, 0, 1, 0, 1});
    std::vector<std::uint32_t> ids{1, 2, 3, 4, 5};
    std::vector<double> base(ids.size());
    double sum = 0.0;
    for (double& v : base) {
        v = rng.uniform() + 0.01;
        sum += v;
    }
    for (double& v : base) v /= sum;

    double prev = -1.0;
    for (double beta : {0.01, 0.05, 0.2, 0.5, 0.8, 1.0}) {
        std::vector<double> row = base;
        detail::condition_row(row, ids, 0, labels, 1.0, beta);
        double same_mass = 0.0;
        for (std::size_t j = 0; j < ids.size(); ++j)
            if (labels.ids[ids[j]] == 0) same_mass += row[j];
        CHECK(same_mass > prev);
        prev = same_mass;
    }
}

TEST_CASE("symmetrize: hand cases and mass conservation") {
    SUBCASE("fully symmetric rows divide by n") {
        ConditionalRows rows;
        rows.n = 3;
        rows.ids = {{1, 2}, {0, 2}, {0, 1}};
        rows.values = {{0.4, 0.6}, {0.4, 0.6}, {0.6, 0.4}};
        auto aff = symmetrize(rows);
        CHECK(aff.state == AffinityState::SymmetricNormalized);
        CHECK(aff_at(aff, 0, 1) == doctest::Approx(0.4 / 3.0).epsilon(1e-12));
        CHECK(aff_at(aff, 2, 0) == doctest::Approx(0.6 / 3.0).epsilon(1e-12));
        CHECK(aff.total() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("missing reverse direction counts as zero") {
        ConditionalRows rows;
        rows.n = 3;
        rows.ids = {{1, 2}, {2}, {1}};
        rows.values = {{0.4, 0.6}, {1.0}, {1.0}};
        auto aff = symmetrize(rows);
        // 0 lists 1 with 0.4 but 1 does not list 0.
        CHECK(aff_at(aff, 0, 1) == doctest::Approx(0.2 / 3.0).epsilon(1e-9));
        CHECK(aff_at(aff, 1, 0) == aff_at(aff, 0, 1));
    }
    SUBCASE("random rows symmetrize to total mass one") {
        Rng rng(8);
        const std::size_t n = 20;
        ConditionalRows rows;
        rows.n = n;
        rows.ids.resize(n);
        rows.values.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || rng.uniform() < 0.5) continue;
                rows.ids[i].push_back(static_cast<std::uint32_t>(j));
                rows.values[i].push_back(rng.uniform() + 1e-3);
            }
            if (rows.ids[i].empty()) {
                rows.ids[i].push_back(static_cast<std::uint32_t>((i + 1) % n));
                rows.values[i].push_back(1.0);
            }
            for (double v : rows.values[i]) sum += v;
            for (double& v : rows.values[i]) v /= sum;
        }
        auto aff = symmetrize(rows);
        CHECK(aff.total() == doctest::Approx(1.0).epsilon(1e-12));
        // structural symmetry with bitwise-equal mirrored values
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t e = aff.row_begin(i); e < aff.row_end(i); ++e) {
                const std::size_t j = aff.column_ids[e];
                CHECK(aff_at(aff, j, i) == aff.values[e]);
                CHECK(aff.values[e] >= 1e-12 / static_cast<double>(n) / 2.0);
            }
        }
    }
}

TEST_CASE("build_affinities with beta = 1 reduces to plain t-SNE") {
    auto data = make_blob(30, 4, 9);
    auto labels = halves(30);
    auto split = neighbors_per_label(data, labels, 6, 6);

    EmbedConfig rcfg;
    rcfg.method = Method::Rctsne;
    rcfg.perplexity = 4.0;
    rcfg.beta = 1.0;
    auto a = build_affinities(data, &labels, rcfg, split);

    EmbedConfig tcfg;
    tcfg.method = Method::Tsne;
    tcfg.perplexity = 4.0;
    auto b = build_affinities(data, nullptr, tcfg, split);

    REQUIRE(a.affinity.nnz() == b.affinity.nnz());
    for (std::size_t e = 0; e < a.affinity.nnz(); ++e) {
        CHECK(a.affinity.column_ids[e] == b.affinity.column_ids[e]);
        CHECK(a.affinity.values[e] == doctest::Approx(b.affinity.values[e]).epsilon(1e-12));
    }
}

TEST_CASE("sparse pipeline agrees with the dense reference on complete neighbor sets") {
    const std::size_t n = 30;
    auto data = make_blob(n, 5, 10);
    auto labels = halves(n);

    SUBCASE("plain rows") {
        auto neighbors = neighbors_unsplit(data, n - 1);
        EmbedConfig cfg;
        cfg.method = Method::Tsne;
        cfg.perplexity = 8.0;
        auto sparse = build_affinities(data, nullptr, cfg, neighbors);

        auto rows = oracle::dense_conditional_rows(data, 8.0);
        auto sym = oracle::dense_symmetrize(rows, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                CHECK(aff_at(sparse.affinity, i, j) ==
                      doctest::Approx(sym[i * n + j]).epsilon(1e-9));
            }
    }
    SUBCASE("conditioned rows") {
        auto neighbors = neighbors_per_label(data, labels, n, n);
        EmbedConfig cfg;
        cfg.method = Method::Rctsne;
        cfg.perplexity = 8.0;
        cfg.beta = 0.37;
        auto sparse = build_affinities(data, &labels, cfg, neighbors);

        auto rows = oracle::dense_conditional_rows(data, 8.0);
        oracle::dense_condition(rows, n, labels, 1.0, 0.37);
        auto sym = oracle::dense_symmetrize(rows, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                CHECK(aff_at(sparse.affinity, i, j) ==
                      doctest::Approx(sym[i * n + j]).epsilon(1e-9));
            }
    }
}

TEST_CASE("achieved perplexity honors the tolerance in both modes") {
    auto data = make_blob(60, 4, 12);
    auto labels = halves(60);
    auto split = neighbors_per_label(data, labels, 12, 12);

    for (std::size_t i = 0; i < data.n; ++i) {
        std::vector<double> dists = split.primary[i].sq_dists;
        dists.insert(dists.end(), split.diff[i].sq_dists.begin(), split.diff[i].sq_dists.end());

        auto on_p = perplexity_search(dists, 8.0);
        REQUIRE(on_p.bandwidth.converged);
        CHECK(std::abs(std::log2(on_p.bandwidth.achieved_perplexity) - std::log2(8.0)) <= 1e-5);

        std::vector<double> weights(dists.size(), 1.0);
        for (std::size_t e = 0; e < split.primary[i].size(); ++e) weights[e] = 0.25;
        auto on_r = perplexity_search(dists, 8.0, 1e-5, 200, VarianceMode::OnR, weights);
        if (on_r.bandwidth.converged) {
            CHECK(std::abs(std::log2(effective_perplexity(on_r.p)) - std::log2(8.0)) <= 2e-5);
        }
    }
}

TEST_CASE("tiny beta drains the same-label mass on the synthetic benchmark") {
    auto ds = generate_synthetic(42);
    const std::size_t k = split_neighbor_count(30.0);
    auto split = neighbors_per_label(ds.data, ds.labels14, k, k, 4);
    EmbedConfig cfg;
    cfg.method = Method::Rctsne;
    cfg.perplexity = 30.0;
    cfg.beta = 1e-20;
    cfg.threads = 4;
    auto result = build_affinities(ds.data, &ds.labels14, cfg, split);

    const auto& aff = result.affinity;
    for (std::size_t i = 0; i < aff.n; ++i) {
        double same = 0.0, total = 0.0;
        for (std::size_t e = aff.row_begin(i); e < aff.row_end(i); ++e) {
            const double v = aff.values[e];
            total += v;
            if (ds.labels14.ids[aff.column_ids[e]] == ds.labels14.ids[i]) same += v;
        }
        CHECK(same / total <= 1e-6);
    }
    CHECK(result.diagnostics.converged_fraction > 0.99);
}
