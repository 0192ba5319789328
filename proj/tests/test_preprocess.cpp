#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <string>

#include <grkmeans/grkmeans.hpp>

using namespace grkmeans;

namespace {

FeatureMatrix column_matrix(std::vector<double> v) {
    const auto m = v.size();
    return FeatureMatrix(m, 1, std::move(v));
}

WeightVector weights(std::vector<double> v, unsigned p = 1) {
    WeightVector w;
    w.values = std::move(v);
    w.exponent = p;
    w.scheme = WeightScheme::uniform;
    return w;
}

}

TEST(ComputeStats, TwoPointColumn) {
    auto s = compute_stats(column_matrix({0, 10}));
    EXPECT_DOUBLE_EQ(s.means[0], 5.0);
    EXPECT_DOUBLE_EQ(s.std_devs[0], 5.0);
}

TEST(ComputeStats, ConstantColumn) {
    auto s = compute_stats(column_matrix({5, 5, 5}));
    EXPECT_EQ(s.means[0], 5.0);
    EXPECT_EQ(s.std_devs[0], 0.0);
}

TEST(ComputeStats, IrisSepalLengthMean) {
    // Oracle: read the first CSV column directly and sum it.
    std::ifstream in(std::string(GRKMEANS_DATA_DIR) + "/iris.csv");
    std::string line;
    std::getline(in, line);
    double sum = 0;
    int count = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        sum += std::stod(line.substr(0, line.find(',')));
        ++count;
    }
    ASSERT_EQ(count, 150);
    const double oracle = sum / count;
    EXPECT_NEAR(oracle, 5.8433, 5e-5);

    auto iris = load_csv(std::string(GRKMEANS_DATA_DIR) + "/iris.csv", std::string("class"));
    EXPECT_NEAR(compute_stats(iris.features).means[0], oracle, 1e-12);
}

TEST(ComputeStats, EmptyMatrixThrows) {
    EXPECT_THROW(compute_stats(FeatureMatrix{}), std::invalid_argument);
}

TEST(Normalize, Examples) {
    auto m = column_matrix({0, 10});
    auto z = normalize(m, compute_stats(m));
    EXPECT_DOUBLE_EQ(z(0, 0), -1.0);
    EXPECT_DOUBLE_EQ(z(1, 0), 1.0);

    auto c = normalize(column_matrix({5, 5, 5}));
    EXPECT_EQ(c.column(0), (std::vector<double>{0, 0, 0}));
}

TEST(Normalize, DimensionMismatch) {
    FeatureStats s{{0, 0}, {1, 1}};
    EXPECT_THROW(normalize(column_matrix({1, 2}), s), std::invalid_argument);
}

TEST(Normalize, ZeroMeanUnitSd) {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 2 + rng.below(40), n = 1 + rng.below(6);
        FeatureMatrix x(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) x(i, j) = rng.normal(rng.uniform(-1e3, 1e3), rng.uniform(0.01, 100));
        auto z = normalize(x);
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0, q = 0;
            for (std::size_t i = 0; i < m; ++i) s += z(i, j);
            const double mu = s / static_cast<double>(m);
            for (std::size_t i = 0; i < m; ++i) q += (z(i, j) - mu) * (z(i, j) - mu);
            EXPECT_LT(std::abs(mu), 1e-9);
            EXPECT_LT(std::abs(std::sqrt(q / static_cast<double>(m)) - 1), 1e-9);
        }
        // Normalizing twice changes nothing beyond rounding.
        auto zz = normalize(z);
        for (std::size_t k = 0; k < zz.values().size(); ++k) {
            EXPECT_NEAR(zz.values()[k], z.values()[k], 1e-9);
        }
    }
}

TEST(FeatureMap, ExponentZeroIsIdentity) {
    FeatureMatrix x{{1, 2, 3}, {4, 5, 6}};
    EXPECT_EQ(apply_feature_map(x, weights({1.0 / 3, 1.0 / 3, 1.0 / 3}, 0)), x);
}

TEST(FeatureMap, ZeroWeightZeroesColumn) {
    FeatureMatrix x{{1, 2}, {3, 4}};
    auto y = apply_feature_map(x, weights({1, 0}));
    EXPECT_EQ(y, (FeatureMatrix{{1, 0}, {3, 0}}));
}

TEST(FeatureMap, SquareRootScaling) {
    auto y = apply_feature_map(FeatureMatrix{{10, 10}}, weights({0.64, 0.36}));
    EXPECT_NEAR(y(0, 0), 8.0, 1e-12);
    EXPECT_NEAR(y(0, 1), 6.0, 1e-12);

    auto y2 = apply_feature_map(FeatureMatrix{{10, 10}}, weights({0.64, 0.36}, 2));
    EXPECT_NEAR(y2(0, 0), 6.4, 1e-12);
    EXPECT_NEAR(y2(0, 1), 3.6, 1e-12);
}

TEST(FeatureMap, Errors) {
    FeatureMatrix x{{1, 2}};
    EXPECT_THROW(apply_feature_map(x, weights({1})), std::invalid_argument);
    EXPECT_THROW(apply_feature_map(x, weights({1.5, -0.5})), std::invalid_argument);
}

TEST(FeatureMap, EqualWeightsLeaveAssignmentsAlone) {
    Rng rng(8);
    std::vector<double> vals(90);
    for (auto& v : vals) v = rng.normal();
    FeatureMatrix x(30, 3, vals);
    KMeansConfig cfg;
    cfg.k = 3;
    cfg.seed = 5;
    const auto base = fit(x, cfg).assignments;
    for (double c : {0.25, 1.0, 16.0}) {
        EXPECT_EQ(fit(apply_feature_map(x, weights({c, c, c})), cfg).assignments, base) << c;
    }
}

// Weighted-norm K-means versus plain K-means on the mapped data.
TEST(FeatureMap, EquivalentToWeightedNorm) {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 6 + rng.below(30), n = 1 + rng.below(5);
        FeatureMatrix x(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) x(i, j) = rng.normal(0, 1 + 10 * static_cast<double>(j));
        std::vector<double> raw(n);
        double total = 0;
        for (auto& v : raw) total += (v = rng.uniform(0.05, 1));
        for (auto& v : raw) v /= total;
        const unsigned p = static_cast<unsigned>(rng.below(5));
        auto w = weights(raw, p);

        std::vector<double> metric(n);
        for (std::size_t j = 0; j < n; ++j) metric[j] = std::pow(raw[j], p);

        KMeansConfig cfg;
        cfg.k = 1 + rng.below(std::min<std::size_t>(4, m));
        cfg.n_init = 3;
        cfg.seed = rng.next_u64();

        auto direct = fit(x, cfg, metric);
        auto mapped = fit(apply_feature_map(x, w), cfg);
        ASSERT_EQ(direct.assignments, mapped.assignments) << "trial " << trial;
        EXPECT_NEAR(direct.objective, mapped.objective, 1e-9 * std::max(1.0, direct.objective)) << "trial " << trial;
        EXPECT_NEAR(direct.inertia, mapped.inertia, 1e-9 * std::max(1.0, direct.inertia)) << "trial " << trial;
    }
}
