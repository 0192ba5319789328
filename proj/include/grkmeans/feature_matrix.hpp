#ifndef GRKMEANS_FEATURE_MATRIX_HPP
#define GRKMEANS_FEATURE_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

/**
 * @file feature_matrix.hpp
 *
 * @brief Dense row-major matrix of observations by features.
 */

namespace grkmeans {

/**
 * @brief M x N table of real feature values, stored row-major.
 *
 * Each row is one observation, each column one feature. Centroid tables
 * (K x N) use the same type.
 */
class FeatureMatrix {
public:
    FeatureMatrix() = default;

    FeatureMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : nrow_(rows), ncol_(cols), values_(rows * cols, fill) {}

    FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
        : nrow_(rows), ncol_(cols), values_(std::move(values)) {
        if (values_.size() != nrow_ * ncol_) {
            throw std::invalid_argument("FeatureMatrix: value count does not match "
                + std::to_string(rows) + "x" + std::to_string(cols));
        }
    }

    /**
     * Build from nested row lists; every row must have the same length.
     */
    FeatureMatrix(std::initializer_list<std::initializer_list<double>> rows) {
        nrow_ = rows.size();
        ncol_ = nrow_ ? rows.begin()->size() : 0;
        values_.reserve(nrow_ * ncol_);
        for (const auto& r : rows) {
            if (r.size() != ncol_) {
                throw std::invalid_argument("FeatureMatrix: ragged initializer");
            }
            values_.insert(values_.end(), r.begin(), r.end());
        }
    }

    std::size_t rows() const { return nrow_; }
    std::size_t cols() const { return ncol_; }
    bool empty() const { return nrow_ == 0 || ncol_ == 0; }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * ncol_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * ncol_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * ncol_, ncol_};
    }
    std::span<double> row(std::size_t i) {
        return {values_.data() + i * ncol_, ncol_};
    }

    std::vector<double> column(std::size_t j) const {
        std::vector<double> out(nrow_);
        for (std::size_t i = 0; i < nrow_; ++i) {
            out[i] = values_[i * ncol_ + j];
        }
        return out;
    }

    void append_row(std::span<const double> r) {
        if (nrow_ == 0 && ncol_ == 0) {
            ncol_ = r.size();
        } else if (r.size() != ncol_) {
            throw std::invalid_argument("FeatureMatrix: appended row has wrong length");
        }
        values_.insert(values_.end(), r.begin(), r.end());
        ++nrow_;
    }

    const std::vector<double>& values() const { return values_; }

    friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

private:
    std::size_t nrow_ = 0;
    std::size_t ncol_ = 0;
    std::vector<double> values_;
};

}

#endif
