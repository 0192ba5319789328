#ifndef GRKMEANS_PREPROCESS_HPP
#define GRKMEANS_PREPROCESS_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "feature_matrix.hpp"
#include "weights.hpp"

/**
 * @file preprocess.hpp
 *
 * @brief Z-score normalization and the weight-folding feature map.
 */

namespace grkmeans {

/**
 * Per-column mean and population standard deviation.
 */
struct FeatureStats {
    std::vector<double> means;
    std::vector<double> std_devs;
};

/**
 * Column means and population (1/M) standard deviations.
 * Uses a two-pass computation so constant columns give exactly zero.
 */
inline FeatureStats compute_stats(const FeatureMatrix& features) {
    const auto m = features.rows();
    const auto n = features.cols();
    if (m == 0 || n == 0) {
        throw std::invalid_argument("compute_stats: empty matrix");
    }

    FeatureStats stats;
    stats.means.assign(n, 0.0);
    stats.std_devs.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        auto r = features.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            stats.means[j] += r[j];
        }
    }
    for (auto& mu : stats.means) {
        mu /= static_cast<double>(m);
    }

    for (std::size_t i = 0; i < m; ++i) {
        auto r = features.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double d = r[j] - stats.means[j];
            stats.std_devs[j] += d * d;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        // All-equal columns can leave a rounding residue in the mean.
        bool constant = true;
        const double first = features(0, j);
        for (std::size_t i = 1; i < m && constant; ++i) {
            constant = features(i, j) == first;
        }
        stats.std_devs[j] = constant ? 0.0 : std::sqrt(stats.std_devs[j] / static_cast<double>(m));
        if (constant) {
            stats.means[j] = first;
        }
    }
    return stats;
}

/**
 * Z-score each column, `(x - mean) / sd`. Columns with zero standard deviation
 * carry no information and are mapped to zeros.
 */
inline FeatureMatrix normalize(const FeatureMatrix& features, const FeatureStats& stats) {
    const auto n = features.cols();
    if (stats.means.size() != n || stats.std_devs.size() != n) {
        throw std::invalid_argument("normalize: statistics do not match the matrix dimension");
    }
    FeatureMatrix out(features.rows(), n);
    for (std::size_t i = 0; i < features.rows(); ++i) {
        auto src = features.row(i);
        auto dst = out.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            dst[j] = stats.std_devs[j] > 0 ? (src[j] - stats.means[j]) / stats.std_devs[j] : 0.0;
        }
    }
    return out;
}

inline FeatureMatrix normalize(const FeatureMatrix& features) {
    return normalize(features, compute_stats(features));
}

/**
 * Per-column factors `sqrt(w_j^p)` used by the feature map.
 */
inline std::vector<double> feature_map_scales(const WeightVector& weights) {
    std::vector<double> scales(weights.values.size());
    for (std::size_t j = 0; j < scales.size(); ++j) {
        if (weights.values[j] < 0) {
            throw std::invalid_argument("feature map: negative weight");
        }
        scales[j] = std::sqrt(std::pow(weights.values[j], weights.exponent));
    }
    return scales;
}

/**
 * Scale column j by `sqrt(w_j^p)`. Plain Euclidean K-means on the result
 * is weighted K-means with metric `sum_j w_j^p (x_j - c_j)^2` on the input.
 */
inline FeatureMatrix apply_feature_map(const FeatureMatrix& features, const WeightVector& weights) {
    const auto n = features.cols();
    if (weights.values.size() != n) {
        throw std::invalid_argument("apply_feature_map: weight count does not match the matrix dimension");
    }
    const auto scales = feature_map_scales(weights);
    FeatureMatrix out(features.rows(), n);
    for (std::size_t i = 0; i < features.rows(); ++i) {
        auto src = features.row(i);
        auto dst = out.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            dst[j] = scales[j] * src[j];
        }
    }
    return out;
}

}

#endif
