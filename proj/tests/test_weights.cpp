#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <grkmeans/grkmeans.hpp>

using namespace grkmeans;

namespace {

FeatureMatrix from_columns(const std::vector<std::vector<double>>& cols) {
    FeatureMatrix x(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols[j].size(); ++i) x(i, j) = cols[j][i];
    return x;
}

// Random matrix of multiples of 1/8, so translations and power-of-two scalings are exact.
FeatureMatrix dyadic_matrix(Rng& rng, std::size_t m, std::size_t n) {
    FeatureMatrix x(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = static_cast<double>(rng.below(400)) / 8.0 + 1.0;
    return x;
}

// Hand-rolled gap ratio used as the oracle.
double oracle_gr(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::vector<double> gaps;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) gaps.push_back(v[i + 1] - v[i]);
    auto it = std::max_element(gaps.begin(), gaps.end());
    const double g = *it;
    if (g == 0) return 0;
    gaps.erase(it);
    const double mu = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
    const double eps = 1e-12 * (v.back() - v.front());
    return g / std::max(mu, eps);
}

}

TEST(CvWeights, RatiosOfCoefficients) {
    // (mu=10, sigma=2) and (mu=10, sigma=4)
    auto w = cv_weights(from_columns({{8, 12}, {6, 14}}));
    EXPECT_NEAR(w.values[0], 1.0 / 3, 1e-12);
    EXPECT_NEAR(w.values[1], 2.0 / 3, 1e-12);
    EXPECT_EQ(w.scheme, WeightScheme::cv);
}

TEST(CvWeights, PositiveScaleInvariant) {
    auto w = cv_weights(from_columns({{1, 2, 4, 7}, {3, 6, 12, 21}}));
    EXPECT_NEAR(w.values[0], 0.5, 1e-12);
    EXPECT_NEAR(w.values[1], 0.5, 1e-12);
}

TEST(CvWeights, NotTranslationInvariant) {
    auto a = cv_weights(from_columns({{1, 2, 3, 4}, {5, 1, 4, 2}}));
    auto b = cv_weights(from_columns({{101, 102, 103, 104}, {5, 1, 4, 2}}));
    EXPECT_NE(a.values[0], b.values[0]);
    EXPECT_GT(a.values[0], b.values[0]);
}

TEST(CvWeights, Degenerate) {
    EXPECT_THROW(cv_weights(from_columns({{3, 3, 3}, {1, 1, 1}})), DegenerateDataError);
    EXPECT_THROW(cv_weights(FeatureMatrix{{1, 2}}), std::invalid_argument);
}

TEST(CvWeights, ZeroMeanIsGuarded) {
    auto w = cv_weights(from_columns({{-1, 1}, {1, 3}}));
    EXPECT_TRUE(std::isfinite(w.values[0]));
    EXPECT_GT(w.values[0], 0.99);
}

TEST(GapRatio, Examples) {
    auto s = gap_ratio({8, 1, 4, 2});
    EXPECT_EQ(s.largest_gap, 4.0);
    EXPECT_EQ(s.largest_index, 2u);
    EXPECT_EQ(s.mean_other_gap, 1.5);
    EXPECT_DOUBLE_EQ(s.ratio, 8.0 / 3.0);

    auto sep = gap_ratio({0, 0, 1, 1});
    EXPECT_EQ(sep.largest_gap, 1.0);
    EXPECT_EQ(sep.mean_other_gap, 0.0);
    EXPECT_DOUBLE_EQ(sep.ratio, 1e12);

    EXPECT_EQ(gap_ratio({2, 2, 2}).ratio, 0.0);
    EXPECT_THROW(gap_ratio({1, 2}), std::invalid_argument);
}

TEST(GapRatio, FirstLargestGapExcludedOnly) {
    // gaps 2, 1, 2: first 2 is the max, the other 2 stays in the mean
    auto s = gap_ratio({0, 2, 3, 5});
    EXPECT_EQ(s.largest_index, 0u);
    EXPECT_EQ(s.mean_other_gap, 1.5);
}

TEST(GapRatio, MatchesOracle) {
    Rng rng(17);
    for (int t = 0; t < 300; ++t) {
        std::vector<double> v(3 + rng.below(30));
        for (auto& x : v) x = rng.normal(0, 5);
        EXPECT_NEAR(gap_ratio(v).ratio, oracle_gr(v), 1e-12 * oracle_gr(v));
    }
}

TEST(GrWeights, IdenticalMultisets) {
    auto w = gr_weights(from_columns({{1, 5, 2, 9}, {9, 2, 1, 5}}));
    EXPECT_EQ(w.values[0], 0.5);
    EXPECT_EQ(w.values[1], 0.5);
    EXPECT_EQ(w.scheme, WeightScheme::gr);
}

TEST(GrWeights, Degenerate) {
    EXPECT_THROW(gr_weights(from_columns({{4, 4, 4}, {0, 0, 0}})), DegenerateDataError);
    EXPECT_THROW(gr_weights(FeatureMatrix{{1, 2}, {3, 4}}), std::invalid_argument);
}

TEST(GrWeights, ConstantColumnGetsZero) {
    auto w = gr_weights(from_columns({{1, 2, 4, 8}, {3, 3, 3, 3}}));
    EXPECT_EQ(w.values[0], 1.0);
    EXPECT_EQ(w.values[1], 0.0);
}

TEST(UniformWeights, Values) {
    EXPECT_EQ(uniform_weights(4).values, (std::vector<double>{0.25, 0.25, 0.25, 0.25}));
    EXPECT_EQ(uniform_weights(1).values, (std::vector<double>{1.0}));
    EXPECT_THROW(uniform_weights(0), std::invalid_argument);
}

TEST(ComputeWeights, CarriesExponentAndScheme) {
    FeatureMatrix x{{1, 2}, {2, 5}, {4, 1}};
    auto w = compute_weights(WeightScheme::gr, x, 3);
    EXPECT_EQ(w.exponent, 3u);
    EXPECT_EQ(w.values, gr_weights(x).values);
    EXPECT_EQ(parse_scheme("none"), WeightScheme::uniform);
    EXPECT_EQ(parse_scheme("gr"), WeightScheme::gr);
    EXPECT_FALSE(parse_scheme("bogus").has_value());
}

TEST(WeightProperties, SumToOne) {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const std::size_t m = 3 + rng.below(40), n = 1 + rng.below(8);
        FeatureMatrix x(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) x(i, j) = rng.normal(rng.uniform(-50, 50), rng.uniform(0.1, 20));
        for (auto scheme : {WeightScheme::uniform, WeightScheme::cv, WeightScheme::gr}) {
            auto w = compute_weights(scheme, x);
            double s = 0;
            for (double v : w.values) {
                EXPECT_GE(v, 0.0);
                s += v;
            }
            EXPECT_NEAR(s, 1.0, 1e-9);
        }
    }
}

TEST(WeightProperties, GrTranslationAndScaleInvariantExact) {
    Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        const std::size_t m = 3 + rng.below(30), n = 1 + rng.below(5);
        auto x = dyadic_matrix(rng, m, n);
        if (x.rows() < 3) continue;
        bool all_constant = true;
        for (std::size_t j = 0; j < n && all_constant; ++j) {
            auto c = x.column(j);
            all_constant = *std::min_element(c.begin(), c.end()) == *std::max_element(c.begin(), c.end());
        }
        if (all_constant) continue;

        auto y = x;
        for (std::size_t j = 0; j < n; ++j) {
            const double shift = static_cast<double>(rng.below(2000)) - 1000.0;
            const double scale = std::ldexp(1.0, static_cast<int>(rng.below(9)) - 4);
            for (std::size_t i = 0; i < m; ++i) y(i, j) = scale * (x(i, j) + shift);
        }
        EXPECT_EQ(gr_weights(x).values, gr_weights(y).values) << "trial " << t;
    }
}

TEST(WeightProperties, GrAffineInvariantOnRealData) {
    Rng rng(32);
    for (int t = 0; t < 100; ++t) {
        FeatureMatrix x(20, 3);
        for (std::size_t i = 0; i < 20; ++i)
            for (std::size_t j = 0; j < 3; ++j) x(i, j) = rng.normal(0, 3);
        auto y = x;
        for (std::size_t j = 0; j < 3; ++j) {
            const double a = rng.uniform(0.1, 10), b = rng.uniform(-100, 100);
            for (std::size_t i = 0; i < 20; ++i) y(i, j) = a * x(i, j) + b;
        }
        auto wx = gr_weights(x).values, wy = gr_weights(y).values;
        for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(wx[j], wy[j], 1e-9 * wx[j]);
    }
}

TEST(WeightProperties, RowPermutationInvariant) {
    Rng rng(33);
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = 3 + rng.below(20);
        FeatureMatrix x(m, 3);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < 3; ++j) x(i, j) = rng.normal(10, 3);
        std::vector<std::size_t> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = m - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
        FeatureMatrix y(m, 3);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < 3; ++j) y(i, j) = x(perm[i], j);
        EXPECT_EQ(gr_weights(x).values, gr_weights(y).values);
        auto cx = cv_weights(x).values, cy = cv_weights(y).values;
        for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(cx[j], cy[j], 1e-12);
    }
}
