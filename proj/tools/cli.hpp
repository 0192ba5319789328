#ifndef GRKMEANS_TOOLS_CLI_HPP
#define GRKMEANS_TOOLS_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <grkmeans/grkmeans.hpp>
#include <grkmeans/report.hpp>

// Command-line front end. Kept in a header so the test suites can drive it
// in-process through run_cli().

namespace grkmeans::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_data = 2,
    exit_degenerate = 3,
};

/// Environment variable consulted for the default seed.
inline constexpr const char* seed_env = "GRKMEANS_SEED";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CliConfig {
    std::string command;
    std::string input;
    std::string label_col;
    std::string generator;
    std::size_t k = 0;
    std::string scheme = "none";
    unsigned p = 1;
    unsigned p_min = 1;
    unsigned p_max = 20;
    bool scale = false;
    bool no_scale = false;
    std::size_t runs = 1000;
    std::uint64_t seed = 0;
    std::size_t n_init = 10;
    int n_per_cluster = 50;
    double blue_shift = 0;
    std::string output;
    std::string format;
};

inline std::uint64_t default_seed() {
    if (const char* env = std::getenv(seed_env)) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string(seed_env) + " is not an unsigned integer");
        }
    }
    return 0;
}

inline LabelColumn label_column_of(const std::string& spec) {
    if (spec.empty()) return std::monostate{};
    char* end = nullptr;
    const long idx = std::strtol(spec.c_str(), &end, 10);
    if (end && *end == '\0') return idx;
    return spec;
}

/// The brick generator configuration used by the CLI, with the given seed.
inline LegoGenConfig lego_config(const CliConfig& cfg, std::uint64_t seed) {
    auto c = LegoGenConfig::defaults();
    c.blue_shift = cfg.blue_shift;
    c.seed = seed;
    return c;
}

/**
 * Labelled load for bench and sweep. Without --label-col the label is the
 * header column named "class" or "label" when present, otherwise the last one.
 */
inline LabeledDataset load_labelled(const CliConfig& cfg) {
    if (!cfg.label_col.empty()) {
        return load_csv(cfg.input, label_column_of(cfg.label_col));
    }
    std::ifstream in(cfg.input);
    if (!in) throw DataError("cannot open '" + cfg.input + "'");
    std::string header;
    std::getline(in, header);
    for (auto cell : csv_detail::split(header)) {
        if (cell == "class" || cell == "label") {
            return load_csv(cfg.input, std::string(cell));
        }
    }
    return load_csv(cfg.input, -1L);
}

inline bool is_generator(const std::string& name) {
    return name == "lego" || name == "norm-toy" || name == "gapratio-toy";
}

inline DatasetGenerator generator_for(const CliConfig& cfg) {
    if (cfg.generator == "lego") {
        return [cfg](std::uint64_t s) { return gen_lego(lego_config(cfg, s)); };
    }
    if (cfg.generator == "norm-toy") {
        return [n = cfg.n_per_cluster](std::uint64_t s) { return gen_norm_toy(n, s); };
    }
    if (cfg.generator == "gapratio-toy") {
        return [n = cfg.n_per_cluster](std::uint64_t s) { return gen_gapratio_toy(n, s); };
    }
    throw UsageError("unknown generator '" + cfg.generator + "' (expected lego, norm-toy or gapratio-toy)");
}

inline void check_source(const CliConfig& cfg) {
    if (cfg.input.empty() == cfg.generator.empty()) {
        throw UsageError("exactly one of --input and --gen is required");
    }
    if (!cfg.generator.empty() && !is_generator(cfg.generator)) {
        throw UsageError("unknown generator '" + cfg.generator + "' (expected lego, norm-toy or gapratio-toy)");
    }
    if (!cfg.label_col.empty() && cfg.input.empty()) {
        throw UsageError("--label-col only applies to --input");
    }
    if (cfg.blue_shift != 0 && cfg.generator != "lego") {
        throw UsageError("--blue-shift only applies to --gen lego");
    }
}

inline WeightScheme scheme_of(const CliConfig& cfg) {
    auto s = parse_scheme(cfg.scheme);
    if (!s) throw UsageError("unknown scheme '" + cfg.scheme + "' (expected none, cv or gr)");
    return *s;
}

inline std::string source_name(const CliConfig& cfg) {
    return cfg.input.empty() ? "gen:" + cfg.generator : cfg.input;
}

inline RunOptions run_options(const CliConfig& cfg) {
    RunOptions o;
    o.n_init = cfg.n_init;
    return o;
}

inline void emit(const CliConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output.empty() || cfg.output == "-") {
        out << text;
        return;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) throw DataError("cannot write '" + cfg.output + "'");
    file << text;
}

inline int cmd_cluster(const CliConfig& cfg, std::ostream& out) {
    check_source(cfg);
    if (cfg.k == 0) throw UsageError("--k is required and must be positive");
    const auto scheme = scheme_of(cfg);

    LabeledDataset data = cfg.input.empty() ? generator_for(cfg)(cfg.seed) : load_csv(cfg.input, label_column_of(cfg.label_col));
    const MethodSpec method{scheme, cfg.p, cfg.scale};
    const auto result = run_pipeline(data.features, method, cfg.k, cfg.seed, run_options(cfg));

    nlohmann::ordered_json j;
    j["source"] = source_name(cfg);
    j["n_rows"] = data.size();
    j["feature_names"] = data.feature_names;
    j["method"] = to_json(method);
    j["seed"] = cfg.seed;
    j["weights"] = to_json(result.weights);
    j["model"] = to_json(result.model);
    const bool labelled = !cfg.label_col.empty() || !cfg.generator.empty();
    if (labelled) {
        j["error_rate"] = error_rate(result.model.assignments, data.labels, cfg.k);
    }
    emit(cfg, j.dump(2) + "\n", out);
    return exit_ok;
}

inline int cmd_bench(const CliConfig& cfg, std::ostream& out) {
    check_source(cfg);
    if (cfg.runs == 0) throw UsageError("--runs must be positive");
    const auto options = run_options(cfg);

    std::vector<ExperimentReport> reports;
    std::optional<LabeledDataset> data;
    if (!cfg.input.empty()) {
        data = load_labelled(cfg);
    }
    const auto gen = cfg.generator.empty() ? DatasetGenerator{} : generator_for(cfg);
    for (bool scaling : {true, false}) {
        for (const auto& method : benchmark_methods(scaling)) {
            reports.push_back(data ? run_experiment(*data, method, cfg.runs, cfg.seed, options)
                                   : run_experiment(gen, method, cfg.runs, cfg.seed, options));
        }
    }

    std::ostringstream text;
    if (cfg.format == "csv") {
        write_summary_csv(text, reports);
    } else {
        nlohmann::ordered_json j;
        j["source"] = source_name(cfg);
        j["runs"] = cfg.runs;
        j["base_seed"] = cfg.seed;
        j["n_init"] = cfg.n_init;
        j["cells"] = nlohmann::ordered_json::array();
        for (const auto& r : reports) j["cells"].push_back(to_json(r));
        text << j.dump(2) << '\n';
    }
    emit(cfg, text.str(), out);
    return exit_ok;
}

inline int cmd_sweep(const CliConfig& cfg, std::ostream& out) {
    check_source(cfg);
    if (cfg.runs == 0) throw UsageError("--runs must be positive");
    if (cfg.p_min > cfg.p_max) throw UsageError("--p-min must not exceed --p-max");
    if (cfg.scale && cfg.no_scale) throw UsageError("--scale and --no-scale are exclusive");
    const auto scheme = scheme_of(cfg);
    const bool scaling = !cfg.no_scale;
    const auto options = run_options(cfg);

    std::vector<ExperimentReport> reports;
    if (!cfg.input.empty()) {
        const auto data = load_labelled(cfg);
        reports = sweep_exponent(data, scheme, cfg.p_min, cfg.p_max, scaling, cfg.runs, cfg.seed, options);
    } else {
        reports = sweep_exponent(generator_for(cfg), scheme, cfg.p_min, cfg.p_max, scaling, cfg.runs, cfg.seed, options);
    }

    std::ostringstream text;
    if (cfg.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& r : reports) j.push_back(to_json(r));
        text << j.dump(2) << '\n';
    } else {
        write_curve_csv(text, reports);
    }
    emit(cfg, text.str(), out);
    return exit_ok;
}

inline int cmd_gen(const CliConfig& cfg, std::ostream& out) {
    if (cfg.generator.empty()) throw UsageError("--gen is required");
    std::ostringstream text;
    write_csv(text, generator_for(cfg)(cfg.seed));
    emit(cfg, text.str(), out);
    return exit_ok;
}

/**
 * Run the command line `args` (without the program name). Normal output goes
 * to `out`, diagnostics to `err`; the return value is the process exit code.
 */
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    try {
        cfg.seed = default_seed();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    CLI::App app{"Weighted K-means clustering (uniform, cv and gap-ratio weights)", "grkmeans"};
    app.require_subcommand(1);

    auto add_source = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "CSV dataset");
        sub->add_option("--label-col", cfg.label_col, "Label column: header name or 0-based index (negative counts from the end)");
        sub->add_option("--gen", cfg.generator, "Built-in generator: lego, norm-toy, gapratio-toy");
        sub->add_option("--n", cfg.n_per_cluster, "Points per cluster for the toy generators")->check(CLI::PositiveNumber);
        sub->add_option("--blue-shift", cfg.blue_shift, "Amount subtracted from the blue channel of generated bricks");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, std::string("Base seed (default: $") + seed_env + " or 0)");
        sub->add_option("--n-init", cfg.n_init, "K-means++ restarts per run")->check(CLI::PositiveNumber);
        sub->add_option("--output,-o", cfg.output, "Output file (default: stdout)");
    };

    auto* cluster = app.add_subcommand("cluster", "Cluster one dataset and write the model as JSON");
    add_source(cluster);
    add_common(cluster);
    cluster->add_option("--k", cfg.k, "Number of clusters")->required();
    cluster->add_option("--scheme", cfg.scheme, "Weight scheme: none, cv, gr");
    cluster->add_option("--p", cfg.p, "Weight exponent");
    cluster->add_flag("--scale", cfg.scale, "Z-score the features before weighting");

    auto* bench = app.add_subcommand("bench", "Run the 5-method x {scaling, no scaling} benchmark grid");
    add_source(bench);
    add_common(bench);
    bench->add_option("--runs", cfg.runs, "Replicated runs per cell");
    bench->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* sweep = app.add_subcommand("sweep", "Failure and error rates over a range of weight exponents");
    add_source(sweep);
    add_common(sweep);
    sweep->add_option("--scheme", cfg.scheme, "Weight scheme: none, cv, gr");
    sweep->add_option("--p-min", cfg.p_min, "Smallest exponent");
    sweep->add_option("--p-max", cfg.p_max, "Largest exponent");
    sweep->add_option("--runs", cfg.runs, "Replicated runs per exponent");
    sweep->add_flag("--scale", cfg.scale, "Z-score the features (default)");
    sweep->add_flag("--no-scale", cfg.no_scale, "Cluster the raw features");
    sweep->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"json", "csv"}));

    auto* gen = app.add_subcommand("gen", "Write a generated dataset as CSV");
    gen->add_option("--gen", cfg.generator, "Generator: lego, norm-toy, gapratio-toy")->required();
    gen->add_option("--n", cfg.n_per_cluster, "Points per cluster for the toy generators")->check(CLI::PositiveNumber);
    gen->add_option("--blue-shift", cfg.blue_shift, "Amount subtracted from the blue channel of generated bricks");
    gen->add_option("--seed", cfg.seed, std::string("Seed (default: $") + seed_env + " or 0)");
    gen->add_option("--output,-o", cfg.output, "Output file (default: stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    try {
        if (cluster->parsed()) return cmd_cluster(cfg, out);
        if (bench->parsed()) return cmd_bench(cfg, out);
        if (sweep->parsed()) return cmd_sweep(cfg, out);
        return cmd_gen(cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const DegenerateDataError& e) {
        err << "error: " << e.what() << '\n';
        return exit_degenerate;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    }
}

}

#endif
