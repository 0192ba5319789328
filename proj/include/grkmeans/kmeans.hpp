#ifndef GRKMEANS_KMEANS_HPP
#define GRKMEANS_KMEANS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "feature_matrix.hpp"
#include "random.hpp"

/**
 * @file kmeans.hpp
 *
 * @brief Lloyd's algorithm with K-means++ seeding.
 *
 * Distances are Euclidean by default. Every routine optionally takes a vector
 * of non-negative per-feature metric weights `m_j`, giving the distance
 * `sqrt(sum_j m_j (x_j - c_j)^2)`. Weighted K-means is normally run by
 * transforming the data with `apply_feature_map()` and using the plain metric;
 * the metric weights exist so the two routes can be checked against each other.
 */

namespace grkmeans {

struct KMeansConfig {
    /// Number of clusters.
    std::size_t k = 2;

    /// Upper bound on Lloyd iterations per restart.
    std::size_t max_iter = 300;

    /**
     * Stop once the largest centroid displacement in an iteration falls below
     * `tol` times the diagonal of the data's bounding box. 0 disables the test,
     * leaving only assignment stability and `max_iter`.
     */
    double tol = 1e-4;

    /// Restarts from independent seedings; the lowest-inertia run is kept.
    std::size_t n_init = 10;

    std::uint64_t seed = 0;
};

struct ClusteringModel {
    /// K x N centroid table.
    FeatureMatrix centroids;

    /// Cluster index of each row.
    std::vector<std::size_t> assignments;

    /// Sum of distances from each point to its centroid.
    double objective = 0;

    /// Sum of squared distances, the quantity Lloyd's algorithm decreases.
    double inertia = 0;

    /// Lloyd iterations (E-step + M-step rounds) of the returned run.
    std::size_t n_iter = 0;

    /// Whether the returned run stopped before `max_iter`.
    bool converged = false;

    /// Inertia after every E-step of the returned run, in order.
    std::vector<double> inertia_trace;

    friend bool operator==(const ClusteringModel&, const ClusteringModel&) = default;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b, std::span<const double> metric = {}) {
    double d = 0;
    if (metric.empty()) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double diff = a[j] - b[j];
            d += diff * diff;
        }
    } else {
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double diff = a[j] - b[j];
            d += metric[j] * diff * diff;
        }
    }
    return d;
}

namespace kmeans_detail {

inline void check_metric(std::span<const double> metric, std::size_t n) {
    if (!metric.empty() && metric.size() != n) {
        throw std::invalid_argument("metric weight count does not match the dimension");
    }
}

inline double bounding_box_diagonal(const FeatureMatrix& x, std::span<const double> metric = {}) {
    double total = 0;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t i = 0; i < x.rows(); ++i) {
            lo = std::min(lo, x(i, j));
            hi = std::max(hi, x(i, j));
        }
        total += (metric.empty() ? 1.0 : metric[j]) * (hi - lo) * (hi - lo);
    }
    return std::sqrt(total);
}

inline std::size_t count_distinct_rows(const FeatureMatrix& x) {
    std::vector<std::size_t> order(x.rows());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto less = [&](std::size_t a, std::size_t b) {
        auto ra = x.row(a), rb = x.row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    };
    std::sort(order.begin(), order.end(), less);
    std::size_t distinct = order.empty() ? 0 : 1;
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (less(order[i - 1], order[i])) ++distinct;
    }
    return distinct;
}

}

/**
 * K-means++ seeding. The first centroid is a uniformly drawn row; each further
 * centroid is a row drawn with probability proportional to its squared distance
 * to the nearest centroid chosen so far. When every remaining distance is zero
 * (fewer distinct rows than `k`) the draw falls back to a uniform choice among
 * rows not yet used.
 */
inline FeatureMatrix kmeanspp_init(const FeatureMatrix& features, std::size_t k, Rng& rng, std::span<const double> metric = {}) {
    const auto m = features.rows();
    if (k == 0) {
        throw std::invalid_argument("kmeans++: k must be positive");
    }
    if (k > m) {
        throw std::invalid_argument("kmeans++: k (" + std::to_string(k) + ") exceeds the number of rows ("
            + std::to_string(m) + ")");
    }
    kmeans_detail::check_metric(metric, features.cols());

    FeatureMatrix centroids(k, features.cols());
    std::vector<char> used(m, 0);
    std::vector<double> nearest(m, std::numeric_limits<double>::infinity());

    auto take = [&](std::size_t c, std::size_t row) {
        used[row] = 1;
        std::copy_n(features.row(row).begin(), features.cols(), centroids.row(c).begin());
        for (std::size_t i = 0; i < m; ++i) {
            nearest[i] = std::min(nearest[i], squared_distance(features.row(i), centroids.row(c), metric));
        }
    };

    take(0, static_cast<std::size_t>(rng.below(m)));
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0;
        for (double d : nearest) total += d;

        std::size_t chosen = m;
        if (total > 0) {
            const double target = rng.uniform() * total;
            double running = 0;
            for (std::size_t i = 0; i < m; ++i) {
                if (nearest[i] <= 0) continue;
                chosen = i;
                running += nearest[i];
                if (running > target) break;
            }
        } else {
            std::size_t remaining = 0;
            for (char u : used) remaining += !u;
            auto pick = rng.below(remaining);
            for (std::size_t i = 0; i < m; ++i) {
                if (used[i]) continue;
                if (pick-- == 0) {
                    chosen = i;
                    break;
                }
            }
        }
        take(c, chosen);
    }
    return centroids;
}

/**
 * Assign each row to its nearest centroid; ties go to the lowest index.
 */
inline std::vector<std::size_t> e_step(const FeatureMatrix& features, const FeatureMatrix& centroids, std::span<const double> metric = {}) {
    if (features.cols() != centroids.cols()) {
        throw std::invalid_argument("e_step: centroid dimension does not match the data");
    }
    std::vector<std::size_t> out(features.rows());
    for (std::size_t i = 0; i < features.rows(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_k = 0;
        for (std::size_t c = 0; c < centroids.rows(); ++c) {
            const double d = squared_distance(features.row(i), centroids.row(c), metric);
            if (d < best) {
                best = d;
                best_k = c;
            }
        }
        out[i] = best_k;
    }
    return out;
}

/**
 * Centroids as cluster means. An empty cluster is relocated onto the point
 * farthest from its own cluster's new centroid; when several clusters are
 * empty, each takes the farthest point not already taken.
 */
inline FeatureMatrix m_step(const FeatureMatrix& features, std::span<const std::size_t> assignments, std::size_t k, std::span<const double> metric = {}) {
    const auto m = features.rows();
    const auto n = features.cols();
    if (assignments.size() != m) {
        throw std::invalid_argument("m_step: assignment count does not match the data");
    }

    FeatureMatrix centroids(k, n);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const auto c = assignments[i];
        if (c >= k) {
            throw std::invalid_argument("m_step: assignment out of range");
        }
        ++counts[c];
        auto dst = centroids.row(c);
        auto src = features.row(i);
        for (std::size_t j = 0; j < n; ++j) dst[j] += src[j];
    }

    bool any_empty = false;
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) {
            any_empty = true;
            continue;
        }
        for (auto& v : centroids.row(c)) v /= static_cast<double>(counts[c]);
    }
    if (!any_empty) {
        return centroids;
    }

    std::vector<double> dist(m);
    for (std::size_t i = 0; i < m; ++i) {
        dist[i] = squared_distance(features.row(i), centroids.row(assignments[i]), metric);
    }
    std::vector<char> taken(m, 0);
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] != 0) continue;
        std::size_t far = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (taken[i]) continue;
            if (far == m || dist[i] > dist[far]) far = i;
        }
        if (far == m) break;
        taken[far] = 1;
        std::copy_n(features.row(far).begin(), n, centroids.row(c).begin());
    }
    return centroids;
}

/**
 * Sum of squared distances and sum of distances of each row to its centroid.
 */
inline std::pair<double, double> clustering_cost(const FeatureMatrix& features, const FeatureMatrix& centroids, std::span<const std::size_t> assignments, std::span<const double> metric = {}) {
    double sq = 0, plain = 0;
    for (std::size_t i = 0; i < features.rows(); ++i) {
        const double d = squared_distance(features.row(i), centroids.row(assignments[i]), metric);
        sq += d;
        plain += std::sqrt(d);
    }
    return {sq, plain};
}

/**
 * Run Lloyd iterations from the given centroids until the assignments stop
 * changing, the centroid shift drops under tolerance, or `max_iter` rounds.
 */
inline ClusteringModel lloyd(const FeatureMatrix& features, FeatureMatrix centroids, const KMeansConfig& config, std::span<const double> metric = {}) {
    const auto k = centroids.rows();
    const double shift_limit = config.tol * kmeans_detail::bounding_box_diagonal(features, metric);

    ClusteringModel model;
    std::vector<std::size_t> previous;
    std::vector<std::size_t> assign = e_step(features, centroids, metric);

    while (true) {
        model.inertia_trace.push_back(clustering_cost(features, centroids, assign, metric).first);
        if (!previous.empty() && assign == previous) {
            model.converged = true;
            break;
        }
        if (model.n_iter >= config.max_iter) {
            break;
        }

        auto updated = m_step(features, assign, k, metric);
        ++model.n_iter;

        double max_shift = 0;
        for (std::size_t c = 0; c < k; ++c) {
            max_shift = std::max(max_shift, std::sqrt(squared_distance(updated.row(c), centroids.row(c), metric)));
        }
        centroids = std::move(updated);
        previous = std::move(assign);
        assign = e_step(features, centroids, metric);

        if (config.tol > 0 && max_shift < shift_limit) {
            model.inertia_trace.push_back(clustering_cost(features, centroids, assign, metric).first);
            model.converged = true;
            break;
        }
    }

    // Repair any cluster left empty by the final E-step.
    auto has_empty = [&] {
        std::vector<char> seen(k, 0);
        for (auto a : assign) seen[a] = 1;
        return std::find(seen.begin(), seen.end(), 0) != seen.end();
    };
    for (std::size_t attempt = 0; attempt < k && has_empty(); ++attempt) {
        centroids = m_step(features, assign, k, metric);
        assign = e_step(features, centroids, metric);
    }

    auto [sq, plain] = clustering_cost(features, centroids, assign, metric);
    model.centroids = std::move(centroids);
    model.assignments = std::move(assign);
    model.inertia = sq;
    model.objective = plain;
    return model;
}

/**
 * K-means with `config.n_init` independent K-means++ seedings. Restart `r`
 * draws from `Rng(derive_seed(config.seed, r))`. The model with the lowest
 * inertia is returned, the earliest one on ties.
 */
inline ClusteringModel fit(const FeatureMatrix& features, const KMeansConfig& config, std::span<const double> metric = {}) {
    if (config.k == 0 || config.n_init == 0 || config.max_iter == 0) {
        throw std::invalid_argument("fit: k, n_init and max_iter must be positive");
    }
    if (config.tol < 0) {
        throw std::invalid_argument("fit: tol must be non-negative");
    }
    if (config.k > features.rows()) {
        throw std::invalid_argument("fit: k (" + std::to_string(config.k) + ") exceeds the number of rows ("
            + std::to_string(features.rows()) + ")");
    }
    kmeans_detail::check_metric(metric, features.cols());
    if (kmeans_detail::count_distinct_rows(features) < config.k) {
        throw DegenerateDataError("fit: fewer distinct rows than clusters");
    }

    ClusteringModel best;
    bool have_best = false;
    for (std::size_t r = 0; r < config.n_init; ++r) {
        Rng rng(derive_seed(config.seed, r));
        auto model = lloyd(features, kmeanspp_init(features, config.k, rng, metric), config, metric);
        if (!have_best || model.inertia < best.inertia) {
            best = std::move(model);
            have_best = true;
        }
    }
    return best;
}

}

#endif
