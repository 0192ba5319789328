#ifndef GRKMEANS_DATASET_HPP
#define GRKMEANS_DATASET_HPP

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "feature_matrix.hpp"

/**
 * @file dataset.hpp
 *
 * @brief Feature matrix with ground-truth class labels.
 */

namespace grkmeans {

struct LabeledDataset {
    FeatureMatrix features;

    /// One class id per row, dense in [0, n_classes).
    std::vector<int> labels;

    std::vector<std::string> feature_names;

    int n_classes = 0;

    std::size_t size() const { return features.rows(); }
    std::size_t dimension() const { return features.cols(); }

    friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

/**
 * Check the dataset invariants, throwing `DataError` on the first violation.
 */
inline void validate(const LabeledDataset& data) {
    const auto m = data.features.rows();
    const auto n = data.features.cols();
    if (n == 0) {
        throw DataError("dataset has no feature columns");
    }
    if (data.n_classes < 1) {
        throw DataError("dataset must have at least one class");
    }
    if (m < static_cast<std::size_t>(data.n_classes)) {
        throw DataError("dataset has fewer rows (" + std::to_string(m) + ") than classes ("
            + std::to_string(data.n_classes) + ")");
    }
    if (data.labels.size() != m) {
        throw DataError("label count " + std::to_string(data.labels.size())
            + " does not match row count " + std::to_string(m));
    }
    if (data.feature_names.size() != n) {
        throw DataError("feature name count does not match column count");
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (data.labels[i] < 0 || data.labels[i] >= data.n_classes) {
            throw DataError("label out of range at row " + std::to_string(i));
        }
    }
    for (double v : data.features.values()) {
        if (!std::isfinite(v)) {
            throw DataError("dataset contains a non-finite feature value");
        }
    }
}

/**
 * Default feature names `f0, f1, ...`.
 */
inline std::vector<std::string> default_feature_names(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        names.push_back("f" + std::to_string(j));
    }
    return names;
}

}

#endif
