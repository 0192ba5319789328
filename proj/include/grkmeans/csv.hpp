#ifndef GRKMEANS_CSV_HPP
#define GRKMEANS_CSV_HPP

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dataset.hpp"
#include "errors.hpp"

/**
 * @file csv.hpp
 *
 * @brief Reading and writing labelled datasets as CSV.
 *
 * Dialect: comma separator, '.' decimal point, optional single header line.
 * Without a named label column, the first line is treated as a header when any
 * of its feature cells is non-numeric. Class labels are arbitrary strings and
 * are mapped to dense integers in order of first appearance.
 */

namespace grkmeans {

/**
 * Which column holds the class label. `std::monostate` means no label column
 * (all rows get class 0); an integer is a 0-based index where negative values
 * count from the end (-1 is the last column); a string names a header column.
 */
using LabelColumn = std::variant<std::monostate, long, std::string>;

namespace csv_detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return cells;
}

inline std::optional<double> parse_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}

/**
 * Parse CSV text into a dataset. `source` names the input in error messages.
 */
inline LabeledDataset parse_csv(std::istream& in, const LabelColumn& label_column, const std::string& source = "<csv>") {
    using namespace csv_detail;

    std::vector<std::string> lines;
    std::vector<std::size_t> line_numbers;
    {
        std::string line;
        std::size_t number = 0;
        while (std::getline(in, line)) {
            ++number;
            if (trim(line).empty()) continue;
            lines.push_back(std::move(line));
            line_numbers.push_back(number);
        }
    }
    if (lines.empty()) {
        throw DataError(source + ": empty file");
    }

    const auto first = split(lines.front());
    const std::size_t ncells = first.size();

    std::optional<std::size_t> label_index;
    bool has_header = false;

    if (std::holds_alternative<std::string>(label_column)) {
        const auto& name = std::get<std::string>(label_column);
        for (std::size_t c = 0; c < ncells; ++c) {
            if (first[c] == name) {
                label_index = c;
                break;
            }
        }
        if (!label_index) {
            throw DataError(source + ": label column '" + name + "' not found in header");
        }
        has_header = true;
    } else if (std::holds_alternative<long>(label_column)) {
        long idx = std::get<long>(label_column);
        if (idx < 0) idx += static_cast<long>(ncells);
        if (idx < 0 || idx >= static_cast<long>(ncells)) {
            throw DataError(source + ": label column index out of range");
        }
        label_index = static_cast<std::size_t>(idx);
    }

    if (!has_header) {
        for (std::size_t c = 0; c < ncells; ++c) {
            if (label_index && c == *label_index) continue;
            if (!parse_number(first[c])) {
                has_header = true;
                break;
            }
        }
    }

    LabeledDataset out;
    const std::size_t nfeat = ncells - (label_index ? 1 : 0);
    if (nfeat == 0) {
        throw DataError(source + ": no feature columns");
    }

    for (std::size_t c = 0; c < ncells; ++c) {
        if (label_index && c == *label_index) continue;
        out.feature_names.push_back(has_header ? std::string(first[c]) : "f" + std::to_string(out.feature_names.size()));
    }

    std::map<std::string, int, std::less<>> label_ids;
    std::vector<double> row(nfeat);
    FeatureMatrix features;

    for (std::size_t l = has_header ? 1 : 0; l < lines.size(); ++l) {
        const auto cells = split(lines[l]);
        const auto where = source + ": row " + std::to_string(line_numbers[l]);
        if (cells.size() != ncells) {
            throw DataError(where + ": expected " + std::to_string(ncells) + " cells, found "
                + std::to_string(cells.size()));
        }
        std::size_t f = 0;
        for (std::size_t c = 0; c < ncells; ++c) {
            if (label_index && c == *label_index) {
                auto it = label_ids.find(cells[c]);
                if (it == label_ids.end()) {
                    it = label_ids.emplace(std::string(cells[c]), static_cast<int>(label_ids.size())).first;
                }
                out.labels.push_back(it->second);
                continue;
            }
            auto v = parse_number(cells[c]);
            if (!v) {
                throw DataError(where + ": non-numeric feature cell '" + std::string(cells[c]) + "'");
            }
            if (!std::isfinite(*v)) {
                throw DataError(where + ": non-finite feature value");
            }
            row[f++] = *v;
        }
        if (!label_index) out.labels.push_back(0);
        features.append_row(row);
    }

    if (features.rows() == 0) {
        throw DataError(source + ": no data rows");
    }

    out.features = std::move(features);
    out.n_classes = label_index ? static_cast<int>(label_ids.size()) : 1;
    validate(out);
    return out;
}

/**
 * Load a dataset from a CSV file.
 */
inline LabeledDataset load_csv(const std::string& path, const LabelColumn& label_column) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path + "'");
    }
    return parse_csv(in, label_column, path);
}

/**
 * Shortest decimal text that parses back to exactly `value`.
 */
inline std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

/**
 * Write a dataset with a header line; the integer label goes in a final column
 * called `label`. Reading it back with label column "label" reproduces the
 * dataset exactly, provided labels first appear in increasing order.
 */
inline void write_csv(std::ostream& out, const LabeledDataset& data) {
    for (const auto& name : data.feature_names) {
        out << name << ',';
    }
    out << "label\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (double v : data.features.row(i)) {
            out << format_number(v) << ',';
        }
        out << data.labels[i] << '\n';
    }
}

inline void save_csv(const std::string& path, const LabeledDataset& data) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path + "'");
    }
    write_csv(out, data);
}

}

#endif
