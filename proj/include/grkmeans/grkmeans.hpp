#ifndef GRKMEANS_GRKMEANS_HPP
#define GRKMEANS_GRKMEANS_HPP

/**
 * @file grkmeans.hpp
 *
 * @brief Umbrella header for the weighted K-means library.
 */

#include "csv.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "evaluation.hpp"
#include "feature_matrix.hpp"
#include "generators.hpp"
#include "kmeans.hpp"
#include "matching.hpp"
#include "preprocess.hpp"
#include "random.hpp"
#include "weights.hpp"

#endif
