#ifndef GRKMEANS_GENERATORS_HPP
#define GRKMEANS_GENERATORS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "errors.hpp"
#include "random.hpp"

/**
 * @file generators.hpp
 *
 * @brief Synthetic datasets: toy examples and camera-like brick measurements.
 */

namespace grkmeans {

/// Nominal appearance of one brick class: RGB colour and length/width in cm.
struct BrickPrototype {
    std::string name;
    std::array<double, 3> rgb{};
    double length = 0;
    double width = 0;
};

/**
 * Brick measurement model. Every call draws one lighting shift, added to all
 * colour channels of all bricks, plus independent Gaussian noise per brick and
 * feature. `blue_shift` is then subtracted from the blue channel and colours
 * are clamped to [0, 255].
 */
struct LegoGenConfig {
    std::vector<BrickPrototype> prototypes;

    /// Bricks per class, parallel to `prototypes`.
    std::vector<int> n_bricks_per_class;

    double lighting_min = 0;
    double lighting_max = 0;

    /// Noise standard deviation of R, G, B, length, width.
    std::array<double, 5> noise_sd{};

    double blue_shift = 0;

    std::uint64_t seed = 0;

    /**
     * Three classes of three bricks each: big green, small green, small red.
     */
    static LegoGenConfig defaults() {
        LegoGenConfig c;
        c.prototypes = {
            {"big-green", {70, 160, 70}, 6.4, 3.2},
            {"small-green", {70, 160, 70}, 3.2, 3.2},
            {"small-red", {180, 60, 60}, 3.2, 3.2},
        };
        c.n_bricks_per_class = {3, 3, 3};
        c.lighting_min = -60;
        c.lighting_max = 60;
        c.noise_sd = {12, 12, 12, 0.15, 0.15};
        return c;
    }
};

/// Smallest generated length or width, in cm.
inline constexpr double min_brick_dimension = 1e-3;

inline void validate(const LegoGenConfig& config) {
    if (config.prototypes.empty()) {
        throw std::invalid_argument("lego config: no prototypes");
    }
    if (config.prototypes.size() != config.n_bricks_per_class.size()) {
        throw std::invalid_argument("lego config: one brick count per prototype required");
    }
    for (int n : config.n_bricks_per_class) {
        if (n < 1) throw std::invalid_argument("lego config: class sizes must be positive");
    }
    for (const auto& p : config.prototypes) {
        for (double c : p.rgb) {
            if (!(c >= 0 && c <= 255)) throw std::invalid_argument("lego config: prototype colour outside [0, 255]");
        }
        if (!(p.length > 0 && p.width > 0)) {
            throw std::invalid_argument("lego config: prototype dimensions must be positive");
        }
    }
    if (!(config.lighting_min <= config.lighting_max)) {
        throw std::invalid_argument("lego config: empty lighting range");
    }
    for (double sd : config.noise_sd) {
        if (!(sd >= 0)) throw std::invalid_argument("lego config: negative noise level");
    }
}

/**
 * Bricks as rows of (R, G, B, length, width), grouped by class in prototype order.
 */
inline LabeledDataset gen_lego(const LegoGenConfig& config) {
    validate(config);
    Rng rng(config.seed);
    const double lighting = rng.uniform(config.lighting_min, config.lighting_max);

    LabeledDataset out;
    out.feature_names = {"R", "G", "B", "length", "width"};
    out.n_classes = static_cast<int>(config.prototypes.size());

    for (std::size_t c = 0; c < config.prototypes.size(); ++c) {
        const auto& proto = config.prototypes[c];
        for (int b = 0; b < config.n_bricks_per_class[c]; ++b) {
            std::array<double, 5> x{};
            for (int ch = 0; ch < 3; ++ch) {
                x[ch] = proto.rgb[ch] + lighting + rng.normal(0, config.noise_sd[ch]);
            }
            x[3] = proto.length + rng.normal(0, config.noise_sd[3]);
            x[4] = proto.width + rng.normal(0, config.noise_sd[4]);

            x[2] -= config.blue_shift;
            for (int ch = 0; ch < 3; ++ch) {
                x[ch] = std::clamp(x[ch], 0.0, 255.0);
            }
            x[3] = std::max(x[3], min_brick_dimension);
            x[4] = std::max(x[4], min_brick_dimension);

            out.features.append_row(x);
            out.labels.push_back(static_cast<int>(c));
        }
    }
    return out;
}

/// Ratio between the units of the two axes of the normalization toy.
inline constexpr double norm_toy_scale = 1000.0;

/**
 * Two clusters that are translated copies of one Gaussian shape (unit spread
 * in natural units), 8 spreads apart along y. The x axis is then expressed in a
 * unit 1000 times smaller, so raw Euclidean distances are dominated by x even
 * though only y separates the clusters.
 */
inline LabeledDataset gen_norm_toy(int n_per_cluster, std::uint64_t seed) {
    if (n_per_cluster < 1) {
        throw std::invalid_argument("gen_norm_toy: n_per_cluster must be positive");
    }
    Rng rng(seed);
    std::vector<std::array<double, 2>> shape(static_cast<std::size_t>(n_per_cluster));
    for (auto& s : shape) {
        s = {rng.normal(), rng.normal()};
    }

    LabeledDataset out;
    out.feature_names = {"x", "y"};
    out.n_classes = 2;
    const double centre_y[2] = {-4.0, 4.0};
    for (int c = 0; c < 2; ++c) {
        for (const auto& s : shape) {
            const std::array<double, 2> row{norm_toy_scale * s[0], centre_y[c] + s[1]};
            out.features.append_row(row);
            out.labels.push_back(c);
        }
    }
    return out;
}

/**
 * Both axes centred near 10. Along x the points form an even continuum over
 * [0, 20] with the classes alternating, so x carries variance but no class
 * structure. Along y the classes sit in two narrow bands (width 0.5) centred
 * at 9 and 11, leaving a gap of at least 1.5 between them.
 */
inline LabeledDataset gen_gapratio_toy(int n_per_cluster, std::uint64_t seed) {
    if (n_per_cluster < 1) {
        throw std::invalid_argument("gen_gapratio_toy: n_per_cluster must be positive");
    }
    Rng rng(seed);
    const auto total = static_cast<std::size_t>(2 * n_per_cluster);
    const double stratum = 20.0 / static_cast<double>(total);

    LabeledDataset out;
    out.feature_names = {"x", "y"};
    out.n_classes = 2;
    FeatureMatrix rows(total, 2);
    std::vector<int> labels(total);
    for (std::size_t s = 0; s < total; ++s) {
        const int c = static_cast<int>(s % 2);
        const double x = stratum * (static_cast<double>(s) + rng.uniform());
        const double y = (c == 0 ? 9.0 : 11.0) + rng.uniform(-0.25, 0.25);
        // Class 0 rows first, then class 1.
        const std::size_t i = static_cast<std::size_t>(c) * static_cast<std::size_t>(n_per_cluster) + s / 2;
        rows(i, 0) = x;
        rows(i, 1) = y;
        labels[i] = c;
    }
    out.features = std::move(rows);
    out.labels = std::move(labels);
    return out;
}

}

#endif
