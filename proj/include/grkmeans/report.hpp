#ifndef GRKMEANS_REPORT_HPP
#define GRKMEANS_REPORT_HPP

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "csv.hpp"
#include "errors.hpp"
#include "evaluation.hpp"
#include "kmeans.hpp"
#include "weights.hpp"

/**
 * @file report.hpp
 *
 * @brief JSON and CSV serialization of weights, models and experiment reports.
 *
 * JSON layouts:
 *
 *     weights:    {"scheme": "gr", "exponent": 2, "values": [...]}
 *     method:     {"name": "gr^2", "scheme": "gr", "exponent": 2, "scaling": true}
 *     model:      {"k": K, "assignments": [...], "centroids": [[...], ...],
 *                  "objective": x, "inertia": x, "n_iter": n, "converged": b}
 *     experiment: {"method": {...}, "n_runs": R, "mean_error_rate": x,
 *                  "failure_rate": x, "per_run_errors": [...], "seeds": [...]}
 *
 * CSV layouts (header line included):
 *
 *     summary table:   method,scheme,exponent,scaling,n_runs,mean_error_rate,failure_rate
 *     exponent curve:  scheme,p,mean_error_rate,failure_rate
 */

namespace grkmeans {

inline nlohmann::ordered_json to_json(const WeightVector& w) {
    return {{"scheme", std::string(to_string(w.scheme))}, {"exponent", w.exponent}, {"values", w.values}};
}

inline WeightVector weights_from_json(const nlohmann::json& j) {
    WeightVector w;
    auto scheme = parse_scheme(j.at("scheme").get<std::string>());
    if (!scheme) throw DataError("unknown weight scheme in JSON");
    w.scheme = *scheme;
    w.exponent = j.at("exponent").get<unsigned>();
    w.values = j.at("values").get<std::vector<double>>();
    return w;
}

inline nlohmann::ordered_json to_json(const MethodSpec& m) {
    return {{"name", m.name()}, {"scheme", std::string(to_string(m.scheme))}, {"exponent", m.exponent}, {"scaling", m.scaling}};
}

inline nlohmann::ordered_json to_json(const ClusteringModel& model) {
    nlohmann::ordered_json centroids = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < model.centroids.rows(); ++c) {
        auto r = model.centroids.row(c);
        centroids.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return {
        {"k", model.centroids.rows()},
        {"assignments", model.assignments},
        {"centroids", std::move(centroids)},
        {"objective", model.objective},
        {"inertia", model.inertia},
        {"n_iter", model.n_iter},
        {"converged", model.converged},
    };
}

inline nlohmann::ordered_json to_json(const ExperimentReport& r) {
    return {
        {"method", to_json(r.method)},
        {"n_runs", r.n_runs},
        {"mean_error_rate", r.mean_error_rate},
        {"failure_rate", r.failure_rate},
        {"per_run_errors", r.per_run_errors},
        {"seeds", r.seeds},
    };
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
    ExperimentReport r;
    const auto& m = j.at("method");
    auto scheme = parse_scheme(m.at("scheme").get<std::string>());
    if (!scheme) throw DataError("unknown weight scheme in JSON");
    r.method = MethodSpec{*scheme, m.at("exponent").get<unsigned>(), m.at("scaling").get<bool>()};
    r.n_runs = j.at("n_runs").get<std::size_t>();
    r.mean_error_rate = j.at("mean_error_rate").get<double>();
    r.failure_rate = j.at("failure_rate").get<double>();
    r.per_run_errors = j.at("per_run_errors").get<std::vector<double>>();
    r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    return r;
}

/// One line of the summary table or exponent curve.
struct SummaryRow {
    std::string method;
    WeightScheme scheme = WeightScheme::uniform;
    unsigned exponent = 1;
    bool scaling = true;
    std::size_t n_runs = 0;
    double mean_error_rate = 0;
    double failure_rate = 0;

    friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

inline SummaryRow summarize(const ExperimentReport& r) {
    return {r.method.name(), r.method.scheme, r.method.exponent, r.method.scaling, r.n_runs, r.mean_error_rate, r.failure_rate};
}

inline void write_summary_csv(std::ostream& out, const std::vector<ExperimentReport>& reports) {
    out << "method,scheme,exponent,scaling,n_runs,mean_error_rate,failure_rate\n";
    for (const auto& r : reports) {
        out << r.method.name() << ',' << to_string(r.method.scheme) << ',' << r.method.exponent << ','
            << (r.method.scaling ? 1 : 0) << ',' << r.n_runs << ',' << format_number(r.mean_error_rate) << ','
            << format_number(r.failure_rate) << '\n';
    }
}

inline void write_curve_csv(std::ostream& out, const std::vector<ExperimentReport>& reports) {
    out << "scheme,p,mean_error_rate,failure_rate\n";
    for (const auto& r : reports) {
        out << to_string(r.method.scheme) << ',' << r.method.exponent << ',' << format_number(r.mean_error_rate) << ','
            << format_number(r.failure_rate) << '\n';
    }
}

namespace report_detail {

inline std::vector<std::vector<std::string>> read_table(std::istream& in, const std::string& expected_header) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("report CSV: empty input");
    if (csv_detail::trim(line) != expected_header) {
        throw DataError("report CSV: unexpected header '" + line + "'");
    }
    std::vector<std::vector<std::string>> rows;
    std::size_t number = 1;
    const auto width = csv_detail::split(expected_header).size();
    while (std::getline(in, line)) {
        ++number;
        if (csv_detail::trim(line).empty()) continue;
        auto cells = csv_detail::split(line);
        if (cells.size() != width) {
            throw DataError("report CSV: row " + std::to_string(number) + " has " + std::to_string(cells.size()) + " cells");
        }
        rows.emplace_back(cells.begin(), cells.end());
    }
    return rows;
}

inline double number(const std::string& s) {
    auto v = csv_detail::parse_number(s);
    if (!v) throw DataError("report CSV: bad number '" + s + "'");
    return *v;
}

inline WeightScheme scheme(const std::string& s) {
    auto v = parse_scheme(s);
    if (!v) throw DataError("report CSV: bad scheme '" + s + "'");
    return *v;
}

}

inline std::vector<SummaryRow> read_summary_csv(std::istream& in) {
    std::vector<SummaryRow> out;
    for (const auto& c : report_detail::read_table(in, "method,scheme,exponent,scaling,n_runs,mean_error_rate,failure_rate")) {
        SummaryRow r;
        r.method = c[0];
        r.scheme = report_detail::scheme(c[1]);
        r.exponent = static_cast<unsigned>(report_detail::number(c[2]));
        r.scaling = report_detail::number(c[3]) != 0;
        r.n_runs = static_cast<std::size_t>(report_detail::number(c[4]));
        r.mean_error_rate = report_detail::number(c[5]);
        r.failure_rate = report_detail::number(c[6]);
        out.push_back(std::move(r));
    }
    return out;
}

struct CurvePoint {
    WeightScheme scheme = WeightScheme::uniform;
    unsigned p = 1;
    double mean_error_rate = 0;
    double failure_rate = 0;

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

inline std::vector<CurvePoint> read_curve_csv(std::istream& in) {
    std::vector<CurvePoint> out;
    for (const auto& c : report_detail::read_table(in, "scheme,p,mean_error_rate,failure_rate")) {
        out.push_back({report_detail::scheme(c[0]), static_cast<unsigned>(report_detail::number(c[1])),
                       report_detail::number(c[2]), report_detail::number(c[3])});
    }
    return out;
}

}

#endif
