#include <doctest.h>

#include <stdexcept>

#include "rctsne/core.hpp"
#include "rctsne/rng.hpp"

using namespace rctsne;

namespace {

DataMatrix make_blob(std::size_t n, std::size_t d, std::uint64_t seed) {
    DataMatrix data(n, d);
    Rng rng(seed);
    for (double& v : data.values) v = rng.gaussian();
    return data;
}

LabelVector cyclic_labels(std::size_t n, std::int32_t classes) {
    std::vector<std::int32_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<std::int32_t>(i) % classes;
    return LabelVector::from_ids(std::move(ids));
}

}  // namespace

TEST_CASE("validate_inputs accepts a well-formed bundle") {
    auto data = make_blob(10, 3, 1);
    auto labels = cyclic_labels(10, 2);
    EmbedConfig cfg;
    cfg.method = Method::Rctsne;
    cfg.perplexity = 3.0;
    auto v = validate_inputs(data, &labels, cfg);
    CHECK(v.k_unsplit == 9);
    CHECK(v.k_split == 5);
    CHECK(v.learning_rate == doctest::Approx(50.0));
}

TEST_CASE("validate_inputs rejects an oversized perplexity") {
    auto data = make_blob(10, 3, 2);
    EmbedConfig cfg;
    cfg.perplexity = 4.0;  // 3u = 12 >= 10
    CHECK_THROWS_WITH_AS(validate_inputs(data, nullptr, cfg),
                         doctest::Contains("perplexity too large"), std::invalid_argument);
}

TEST_CASE("validate_inputs requires labels for conditioned methods") {
    auto data = make_blob(10, 3, 3);
    EmbedConfig cfg;
    cfg.method = Method::Rctsne;
    cfg.perplexity = 3.0;
    CHECK_THROWS_WITH_AS(validate_inputs(data, nullptr, cfg),
                         doctest::Contains("labels required"), std::invalid_argument);
}

TEST_CASE("validate_inputs rejects structural defects") {
    EmbedConfig cfg;
    cfg.perplexity = 2.0;

    auto tiny = make_blob(1, 3, 4);
    CHECK_THROWS_AS(validate_inputs(tiny, nullptr, cfg), std::invalid_argument);

    auto bad = make_blob(10, 3, 5);
    bad.values[7] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate_inputs(bad, nullptr, cfg), std::invalid_argument);

    auto data = make_blob(10, 3, 6);
    auto labels = cyclic_labels(8, 2);
    EmbedConfig ccfg = cfg;
    ccfg.method = Method::Ctsne;
    CHECK_THROWS_AS(validate_inputs(data, &labels, ccfg), std::invalid_argument);

    EmbedConfig beta_cfg = cfg;
    beta_cfg.beta = 1.5;
    CHECK_THROWS_AS(validate_inputs(data, nullptr, beta_cfg), std::invalid_argument);

    EmbedConfig dim_cfg = cfg;
    dim_cfg.out_dim = 3;
    dim_cfg.theta = 0.5;
    CHECK_THROWS_AS(validate_inputs(data, nullptr, dim_cfg), std::invalid_argument);
}

TEST_CASE("validate_inputs is pure") {
    auto data = make_blob(12, 2, 7);
    EmbedConfig cfg;
    cfg.perplexity = 3.5;
    auto a = validate_inputs(data, nullptr, cfg);
    auto b = validate_inputs(data, nullptr, cfg);
    CHECK(a.k_unsplit == b.k_unsplit);
    CHECK(a.k_split == b.k_split);
    CHECK(a.learning_rate == b.learning_rate);
}

TEST_CASE("label vector derives counts and rejects gaps") {
    auto labels = LabelVector::from_ids({0, 1, 1, 2, 0});
    CHECK(labels.num_classes() == 3);
    CHECK(labels.class_counts == std::vector<std::size_t>{2, 2, 1});
    CHECK_THROWS_AS(LabelVector::from_ids({0, 2, 2}), std::invalid_argument);
}

TEST_CASE("rng streams are reproducible and well-behaved") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.gaussian() == b.gaussian());

    Rng rng(7);
    double mean = 0.0, var = 0.0;
    const int trials = 20000;
    std::vector<double> draws(trials);
    for (double& x : draws) {
        x = rng.gaussian();
        mean += x;
    }
    mean /= trials;
    for (double x : draws) var += (x - mean) * (x - mean);
    var /= trials - 1;
    CHECK(mean == doctest::Approx(0.0).epsilon(0.05).scale(1.0));
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}
