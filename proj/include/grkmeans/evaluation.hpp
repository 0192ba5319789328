#ifndef GRKMEANS_EVALUATION_HPP
#define GRKMEANS_EVALUATION_HPP

#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "kmeans.hpp"
#include "matching.hpp"
#include "preprocess.hpp"
#include "random.hpp"
#include "weights.hpp"

/**
 * @file evaluation.hpp
 *
 * @brief Error rates against ground truth and replicated experiments.
 */

namespace grkmeans {

/**
 * Fraction of misclassified points under the best injective mapping between
 * clusters and classes. `k` is the number of clusters; classes are taken as
 * `0..max(labels)`. Unmatched clusters count as errors.
 */
inline double error_rate(std::span<const std::size_t> assignments, std::span<const int> labels, std::size_t k) {
    if (assignments.size() != labels.size()) {
        throw std::invalid_argument("error_rate: assignment and label counts differ");
    }
    if (assignments.empty()) {
        throw std::invalid_argument("error_rate: no points");
    }
    std::size_t n_classes = 0;
    for (int l : labels) {
        if (l < 0) throw std::invalid_argument("error_rate: negative label");
        n_classes = std::max(n_classes, static_cast<std::size_t>(l) + 1);
    }
    CountMatrix confusion;
    confusion.size = std::max(k, n_classes);
    confusion.counts.assign(confusion.size * confusion.size, 0);
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] >= k) throw std::invalid_argument("error_rate: assignment out of range");
        ++confusion(assignments[i], static_cast<std::size_t>(labels[i]));
    }
    const long matched = max_matching(confusion);
    return 1.0 - static_cast<double>(matched) / static_cast<double>(assignments.size());
}

/// One weighted K-means variant: weight scheme, exponent and whether to z-score.
struct MethodSpec {
    WeightScheme scheme = WeightScheme::uniform;
    unsigned exponent = 1;
    bool scaling = true;

    /// Short name such as "kmeans", "gr", "cv^2".
    std::string name() const {
        std::string base = scheme == WeightScheme::uniform ? "kmeans" : std::string(to_string(scheme));
        if (scheme != WeightScheme::uniform && exponent != 1) {
            base += "^" + std::to_string(exponent);
        }
        return base;
    }

    friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

/// The five variants compared on the UCI benchmarks: K-means, gr, cv, gr^2, cv^2.
inline std::vector<MethodSpec> benchmark_methods(bool scaling) {
    return {
        {WeightScheme::uniform, 1, scaling},
        {WeightScheme::gr, 1, scaling},
        {WeightScheme::cv, 1, scaling},
        {WeightScheme::gr, 2, scaling},
        {WeightScheme::cv, 2, scaling},
    };
}

/// K-means settings shared by every run of an experiment (k and seed are set per run).
struct RunOptions {
    std::size_t n_init = 10;
    std::size_t max_iter = 300;
    double tol = 1e-4;
};

struct PipelineResult {
    WeightVector weights;
    FeatureMatrix transformed;
    ClusteringModel model;
};

/**
 * The weighted K-means pipeline: weights from the raw features, optional
 * z-scoring, the feature map with exponent `method.exponent`, then K-means.
 */
inline PipelineResult run_pipeline(const FeatureMatrix& raw, const MethodSpec& method, std::size_t k, std::uint64_t seed, const RunOptions& options = {}) {
    PipelineResult out;
    out.weights = compute_weights(method.scheme, raw, method.exponent);
    out.transformed = apply_feature_map(method.scaling ? normalize(raw) : raw, out.weights);
    KMeansConfig config;
    config.k = k;
    config.n_init = options.n_init;
    config.max_iter = options.max_iter;
    config.tol = options.tol;
    config.seed = seed;
    out.model = fit(out.transformed, config);
    return out;
}

struct ExperimentReport {
    MethodSpec method;
    std::size_t n_runs = 0;
    double mean_error_rate = 0;

    /// Fraction of runs with at least one misclassified point.
    double failure_rate = 0;

    std::vector<double> per_run_errors;

    /// K-means seed of each run.
    std::vector<std::uint64_t> seeds;

    friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// Seed of run `r` of an experiment with base seed `base_seed`.
inline std::uint64_t run_seed(std::uint64_t base_seed, std::size_t r) {
    return derive_seed(base_seed, r);
}

/// Seed handed to a dataset generator for run `r`.
inline std::uint64_t run_data_seed(std::uint64_t base_seed, std::size_t r) {
    return derive_seed(run_seed(base_seed, r), 1);
}

/// Produces the dataset of one run from its data seed.
using DatasetGenerator = std::function<LabeledDataset(std::uint64_t)>;

namespace evaluation_detail {

inline void finish(ExperimentReport& report) {
    report.n_runs = report.per_run_errors.size();
    double sum = 0;
    std::size_t failures = 0;
    for (double e : report.per_run_errors) {
        sum += e;
        failures += e > 0;
    }
    report.mean_error_rate = sum / static_cast<double>(report.n_runs);
    report.failure_rate = static_cast<double>(failures) / static_cast<double>(report.n_runs);
}

inline void check_runs(std::size_t n_runs) {
    if (n_runs == 0) throw std::invalid_argument("experiment: n_runs must be positive");
}

}

/**
 * Cluster a fixed dataset `n_runs` times with k = number of classes, run `r`
 * seeded by `run_seed(base_seed, r)`.
 */
inline ExperimentReport run_experiment(const LabeledDataset& data, const MethodSpec& method, std::size_t n_runs, std::uint64_t base_seed, const RunOptions& options = {}) {
    evaluation_detail::check_runs(n_runs);
    validate(data);
    const auto k = static_cast<std::size_t>(data.n_classes);

    // Weights and the transformed matrix do not depend on the seed.
    const auto weights = compute_weights(method.scheme, data.features, method.exponent);
    const auto transformed = apply_feature_map(method.scaling ? normalize(data.features) : data.features, weights);

    ExperimentReport report;
    report.method = method;
    for (std::size_t r = 0; r < n_runs; ++r) {
        KMeansConfig config;
        config.k = k;
        config.n_init = options.n_init;
        config.max_iter = options.max_iter;
        config.tol = options.tol;
        config.seed = run_seed(base_seed, r);
        const auto model = fit(transformed, config);
        report.seeds.push_back(config.seed);
        report.per_run_errors.push_back(error_rate(model.assignments, data.labels, k));
    }
    evaluation_detail::finish(report);
    return report;
}

/**
 * Like `run_experiment`, but each run clusters a freshly generated dataset,
 * produced from `run_data_seed(base_seed, r)`. This is the trial protocol for
 * the synthetic brick data, where every trial sees new lighting.
 */
inline ExperimentReport run_experiment(const DatasetGenerator& generate, const MethodSpec& method, std::size_t n_runs, std::uint64_t base_seed, const RunOptions& options = {}) {
    evaluation_detail::check_runs(n_runs);
    ExperimentReport report;
    report.method = method;
    for (std::size_t r = 0; r < n_runs; ++r) {
        const auto data = generate(run_data_seed(base_seed, r));
        validate(data);
        const auto k = static_cast<std::size_t>(data.n_classes);
        const auto seed = run_seed(base_seed, r);
        const auto result = run_pipeline(data.features, method, k, seed, options);
        report.seeds.push_back(seed);
        report.per_run_errors.push_back(error_rate(result.model.assignments, data.labels, k));
    }
    evaluation_detail::finish(report);
    return report;
}

/**
 * One report per exponent in `[p_min, p_max]`, all with the same seeds so the
 * curves differ only through the exponent.
 */
template <typename Source>
std::vector<ExperimentReport> sweep_exponent(const Source& source, WeightScheme scheme, unsigned p_min, unsigned p_max, bool scaling, std::size_t n_runs, std::uint64_t base_seed, const RunOptions& options = {}) {
    if (p_min > p_max) {
        throw std::invalid_argument("sweep_exponent: empty exponent range");
    }
    std::vector<ExperimentReport> out;
    for (unsigned p = p_min; p <= p_max; ++p) {
        out.push_back(run_experiment(source, MethodSpec{scheme, p, scaling}, n_runs, base_seed, options));
    }
    return out;
}

}

#endif
