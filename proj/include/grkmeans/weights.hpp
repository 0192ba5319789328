#ifndef GRKMEANS_WEIGHTS_HPP
#define GRKMEANS_WEIGHTS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "feature_matrix.hpp"

/**
 * @file weights.hpp
 *
 * @brief Per-feature weights for weighted K-means.
 *
 * Three schemes are provided:
 *
 * - uniform: every feature weighs `1/N`, i.e. regular K-means.
 * - cv: weights proportional to the coefficient of variation `sd / |mean|`.
 *   Only meaningful for ratio-scale features; on interval-scale features it
 *   depends on the arbitrary origin.
 * - gr: weights proportional to the gap ratio of each feature. The values of
 *   the feature are sorted, the gaps between consecutive values computed, and
 *   the largest gap divided by the mean of the remaining gaps. A feature whose
 *   values fall into well separated groups has a large gap ratio. Since gaps
 *   are differences, the ratio is invariant to translating or positively
 *   rescaling a feature, which makes it usable on interval scales.
 *
 * All schemes normalize the weights to sum to one. The exponent `p` of a
 * `WeightVector` is applied when the weights enter the metric, as `w_j^p`.
 */

namespace grkmeans {

enum class WeightScheme { uniform, cv, gr };

inline std::string_view to_string(WeightScheme scheme) {
    switch (scheme) {
        case WeightScheme::uniform: return "uniform";
        case WeightScheme::cv: return "cv";
        case WeightScheme::gr: return "gr";
    }
    return "?";
}

/**
 * Accepts "uniform" (or its alias "none"), "cv" and "gr".
 */
inline std::optional<WeightScheme> parse_scheme(std::string_view name) {
    if (name == "uniform" || name == "none") return WeightScheme::uniform;
    if (name == "cv") return WeightScheme::cv;
    if (name == "gr") return WeightScheme::gr;
    return std::nullopt;
}

struct WeightVector {
    std::vector<double> values;
    unsigned exponent = 1;
    WeightScheme scheme = WeightScheme::uniform;

    WeightVector with_exponent(unsigned p) const {
        WeightVector out = *this;
        out.exponent = p;
        return out;
    }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

namespace weights_detail {

/// Guard for near-zero denominators: 1e-12 times the value range (or 1 if the range is 0).
inline double epsilon_for(const std::vector<double>& column) {
    auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    const double range = *hi - *lo;
    return 1e-12 * (range > 0 ? range : 1.0);
}

inline WeightVector normalized(std::vector<double> raw, WeightScheme scheme, const char* what) {
    const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
    if (!(total > 0)) {
        throw DegenerateDataError(std::string(what) + " weights: every feature is constant");
    }
    for (auto& v : raw) {
        v /= total;
    }
    return WeightVector{std::move(raw), 1, scheme};
}

}

/**
 * Gap statistics of one feature.
 */
struct GapSummary {
    /// Largest gap between consecutive sorted values.
    double largest_gap = 0;

    /// Position of the largest gap in sorted order (first one on ties).
    std::size_t largest_index = 0;

    /// Mean of all gaps except the largest one.
    double mean_other_gap = 0;

    /// Largest gap over guarded mean of the others; 0 for a constant feature.
    double ratio = 0;
};

/**
 * Gap ratio of a single feature. Duplicate values are kept and contribute zero
 * gaps. Requires at least 3 values so that at least one gap remains after
 * removing the largest.
 */
inline GapSummary gap_ratio(std::vector<double> values) {
    const auto m = values.size();
    if (m < 3) {
        throw std::invalid_argument("gap_ratio: need at least 3 values");
    }
    std::sort(values.begin(), values.end());

    GapSummary out;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double gap = values[i + 1] - values[i];
        if (gap > out.largest_gap) {
            out.largest_gap = gap;
            out.largest_index = i;
        }
    }

    // Sum the remaining gaps directly so that all-zero gaps give exactly zero.
    double rest = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (i != out.largest_index) {
            rest += values[i + 1] - values[i];
        }
    }
    out.mean_other_gap = rest / static_cast<double>(m - 2);

    if (out.largest_gap > 0) {
        const double eps = weights_detail::epsilon_for(values);
        out.ratio = out.largest_gap / std::max(out.mean_other_gap, eps);
    }
    return out;
}

/**
 * All weights equal to `1/n`.
 */
inline WeightVector uniform_weights(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("uniform_weights: n must be positive");
    }
    return WeightVector{std::vector<double>(n, 1.0 / static_cast<double>(n)), 1, WeightScheme::uniform};
}

/**
 * Coefficient-of-variation weights, computed on raw (unnormalized) features.
 * The mean is guarded away from zero by the range-relative epsilon.
 */
inline WeightVector cv_weights(const FeatureMatrix& features) {
    const auto m = features.rows();
    if (m < 2) {
        throw std::invalid_argument("cv_weights: need at least 2 rows");
    }
    std::vector<double> cv(features.cols());
    for (std::size_t j = 0; j < features.cols(); ++j) {
        const auto column = features.column(j);
        const double mean = std::accumulate(column.begin(), column.end(), 0.0) / static_cast<double>(m);
        double ss = 0;
        for (double v : column) {
            ss += (v - mean) * (v - mean);
        }
        const bool constant = std::all_of(column.begin(), column.end(), [&](double v) { return v == column.front(); });
        const double sd = constant ? 0.0 : std::sqrt(ss / static_cast<double>(m));
        cv[j] = sd / std::max(std::abs(mean), weights_detail::epsilon_for(column));
    }
    return weights_detail::normalized(std::move(cv), WeightScheme::cv, "cv");
}

/**
 * Gap-ratio weights, computed on raw features.
 */
inline WeightVector gr_weights(const FeatureMatrix& features) {
    if (features.rows() < 3) {
        throw std::invalid_argument("gr_weights: need at least 3 rows");
    }
    std::vector<double> gr(features.cols());
    for (std::size_t j = 0; j < features.cols(); ++j) {
        gr[j] = gap_ratio(features.column(j)).ratio;
    }
    return weights_detail::normalized(std::move(gr), WeightScheme::gr, "gr");
}

inline WeightVector compute_weights(WeightScheme scheme, const FeatureMatrix& features, unsigned exponent = 1) {
    WeightVector out;
    switch (scheme) {
        case WeightScheme::uniform: out = uniform_weights(features.cols()); break;
        case WeightScheme::cv: out = cv_weights(features); break;
        case WeightScheme::gr: out = gr_weights(features); break;
    }
    out.exponent = exponent;
    return out;
}

}

#endif
