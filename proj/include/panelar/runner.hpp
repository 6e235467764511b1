#pragma once

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "csv.hpp"
#include "estimate.hpp"
#include "inference.hpp"
#include "montecarlo.hpp"
#include "panel.hpp"
#include "report.hpp"
#include "stats.hpp"
#include "wiener.hpp"

namespace panelar {

namespace detail {

inline PanelCsvFormat parse_panel_format(const std::string& name) {
    if (name == "long_csv") return PanelCsvFormat::LongCsv;
    if (name == "wide_csv") return PanelCsvFormat::WideCsv;
    throw ConfigParse("unknown panel format '" + name + "'; expected long_csv|wide_csv");
}

struct PairSummary {
    double mean_first = 0.0;
    double var_first = 0.0;
    double mean_second = 0.0;
    double var_second = 0.0;
};

inline PairSummary summarize_pairs(const std::vector<std::pair<double, double>>& sample) {
    std::vector<double> first(sample.size()), second(sample.size());
    for (std::size_t k = 0; k < sample.size(); ++k) {
        first[k] = sample[k].first;
        second[k] = sample[k].second;
    }
    PairSummary s;
    s.mean_first = sample_mean(first);
    s.var_first = sample_variance(first);
    s.mean_second = sample_mean(second);
    s.var_second = sample_variance(second);
    return s;
}

}  // namespace detail

// Executes a fully resolved RunConfig and returns the paths written.
// All parameters are validated before any simulation or file output starts.
inline std::vector<std::string> execute_run(const RunConfig& config) {
    const OrderedJson& p = config.parameters;
    const OrderedJson echo = run_config_to_json(config);
    std::vector<std::string> written;

    switch (config.command) {
        case Command::Simulate: {
            const RegimeSpec spec = regime_from_json(p.at("regime"));
            const InnovationSpec innov = innovations_from_json(p.at("innovations"));
            const auto n = detail::get_number<std::int64_t>(p, "n");
            const auto t_len = detail::get_number<std::int64_t>(p, "t_len");
            const auto seed = detail::get_number<std::uint64_t>(p, "seed");
            const bool keep = p.at("keep_innovations").get<bool>();
            const PanelCsvFormat fmt = detail::parse_panel_format(detail::get_string(p, "format"));
            const int workers = detail::get_number<int>(p, "workers");

            const PanelData panel = simulate_panel(spec, innov, n, t_len, seed, keep, workers);
            write_panel_csv(panel, config.output_path, fmt);
            written.push_back(config.output_path);

            for (const std::string& f : config.emit) {
                if (f != "json") continue;
                OrderedJson meta{{"n", panel.n},
                                 {"t_len", panel.t_len},
                                 {"rho_used", panel.rho_used ? OrderedJson(*panel.rho_used) : OrderedJson(nullptr)},
                                 {"seed", panel.seed},
                                 {"warnings", panel.warnings}};
                const std::string meta_path = config.output_path + ".meta.json";
                write_file_atomic(meta_path, report_envelope(echo, OrderedJson{{"panel", meta}}));
                written.push_back(meta_path);
            }
            return written;
        }

        case Command::Mc: {
            const McConfig cfg = mc_config_from_json(p);
            const int workers = detail::get_number<int>(p, "workers");
            const McReport report = run_replications(cfg, workers);
            return emit_report(report, config.emit, config.output_path, echo);
        }

        case Command::BerryEsseen: {
            McConfig cfg;
            cfg.regime = regime_from_json(p.at("regime"));
            cfg.innovations = innovations_from_json(p.at("innovations"));
            cfg.t_len = detail::get_number<std::int64_t>(p, "t_len");
            cfg.replications = detail::get_number<std::int64_t>(p, "replications");
            cfg.seed = detail::get_number<std::uint64_t>(p, "seed");
            const std::vector<std::int64_t> n_grid = int_grid_from_json(p, "n_grid");
            if (n_grid.empty()) throw InsufficientGrid("n_grid is empty");
            cfg.n = n_grid.front();
            cfg.validate();
            const int workers = detail::get_number<int>(p, "workers");

            const BerryEsseenCurve curve = berry_esseen_curve(cfg, n_grid, workers);
            OrderedJson points = OrderedJson::array();
            std::string csv = "n,ks\n";
            for (const auto& [n, ks] : curve.points) {
                points.push_back(OrderedJson{{"n", n}, {"ks", ks}});
                csv += format_double(n) + "," + format_double(ks) + "\n";
            }
            const OrderedJson report{{"points", points}, {"fitted_slope", curve.fitted_slope}};
            for (const std::string& f : config.emit) {
                if (f == "json") {
                    write_file_atomic(config.output_path, report_envelope(echo, report));
                    written.push_back(config.output_path);
                } else if (f == "csv_stats") {
                    const std::string path = config.output_path + ".stats.csv";
                    write_file_atomic(path, csv);
                    written.push_back(path);
                }
            }
            return written;
        }

        case Command::VarianceCurve: {
            const RegimeSpec spec = regime_from_json(p.at("regime"));
            const InnovationSpec innov = innovations_from_json(p.at("innovations"));
            const auto n = detail::get_number<std::int64_t>(p, "n");
            const auto replications = detail::get_number<std::int64_t>(p, "replications");
            const auto seed = detail::get_number<std::uint64_t>(p, "seed");
            const std::vector<std::int64_t> t_grid = int_grid_from_json(p, "t_grid");
            const int workers = detail::get_number<int>(p, "workers");

            const std::vector<VariancePoint> points = variance_convergence(spec, innov, t_grid, n,
                                                                           replications, seed, workers);
            OrderedJson jpoints = OrderedJson::array();
            std::string csv = "t,empirical_var,limit_var\n";
            for (const VariancePoint& pt : points) {
                jpoints.push_back(OrderedJson{{"t_len", pt.t_len},
                                              {"empirical_var", pt.empirical_var},
                                              {"limit_var", pt.limit_var}});
                csv += std::to_string(pt.t_len) + "," + format_double(pt.empirical_var) + "," +
                       format_double(pt.limit_var) + "\n";
            }
            const OrderedJson report{{"points", jpoints}};
            for (const std::string& f : config.emit) {
                if (f == "json") {
                    write_file_atomic(config.output_path, report_envelope(echo, report));
                    written.push_back(config.output_path);
                } else if (f == "csv_stats") {
                    const std::string path = config.output_path + ".stats.csv";
                    write_file_atomic(path, csv);
                    written.push_back(path);
                }
            }
            return written;
        }

        case Command::Infer: {
            const std::string input_path = detail::get_string(p, "input_path");
            if (input_path.empty()) throw MissingParameters("infer needs parameters.input_path");
            const PanelCsvFormat fmt = detail::parse_panel_format(detail::get_string(p, "format"));
            const std::string mode = detail::get_string(p, "mode");
            const double level = detail::get_number<double>(p, "level");

            const PanelData panel = ingest_panel(input_path, fmt);
            InferenceResult result;
            if (mode == "ci") {
                const RegimeKind kind = parse_regime_kind(detail::get_string(p, "regime_kind"));
                RegimeParams params;
                if (p.contains("c") && !p.at("c").is_null()) params.c = p.at("c").get<double>();
                if (p.contains("kt_exponent") && !p.at("kt_exponent").is_null())
                    params.kt_exponent = p.at("kt_exponent").get<double>();
                result = confidence_interval(panel, kind, level, params);
            } else if (mode == "test") {
                result = unit_root_test(panel, parse_alternative(detail::get_string(p, "alternative")), level);
            } else {
                throw ConfigParse("unknown infer mode '" + mode + "'; expected ci|test");
            }
            return emit_report(result, config.emit, config.output_path, echo);
        }

        case Command::Wiener: {
            const std::string functional = detail::get_string(p, "functional");
            const auto replications = detail::get_number<std::int64_t>(p, "replications");
            const auto seed = detail::get_number<std::uint64_t>(p, "seed");
            const int workers = detail::get_number<int>(p, "workers");

            std::vector<std::pair<double, double>> sample;
            if (functional == "unit_root") {
                const auto grid_steps = detail::get_number<std::int64_t>(p, "grid_steps");
                sample = sample_unit_root_functionals(grid_steps, replications, seed, workers);
            } else if (functional == "local_to_unity") {
                const auto grid_steps = detail::get_number<std::int64_t>(p, "grid_steps");
                const double c = detail::get_number<double>(p, "c");
                sample = sample_local_to_unity_functionals(c, grid_steps, replications, seed, workers);
            } else if (functional == "mildly_explosive") {
                const double c = detail::get_number<double>(p, "c");
                sample = mildly_explosive_limit_sample(c, replications, seed, workers);
            } else {
                throw ConfigParse("unknown functional '" + functional +
                                  "'; expected unit_root|local_to_unity|mildly_explosive");
            }

            const detail::PairSummary s = detail::summarize_pairs(sample);
            const OrderedJson report{{"functional", functional},
                                     {"summary", OrderedJson{{"mean_first", s.mean_first},
                                                             {"var_first", s.var_first},
                                                             {"mean_second", s.mean_second},
                                                             {"var_second", s.var_second}}}};
            for (const std::string& f : config.emit) {
                if (f == "json") {
                    write_file_atomic(config.output_path, report_envelope(echo, report));
                    written.push_back(config.output_path);
                } else if (f == "csv_stats") {
                    std::string csv = "first,second\n";
                    for (const auto& [a, b] : sample)
                        csv += format_double(a) + "," + format_double(b) + "\n";
                    const std::string path = config.output_path + ".stats.csv";
                    write_file_atomic(path, csv);
                    written.push_back(path);
                }
            }
            return written;
        }
    }
    return written;
}

// Spec-shaped entry point: load config, apply overrides, execute, map errors
// to exit codes (config 2, data 3, numerical 4, io 5).
inline int run(const std::string& config_path, const std::vector<std::string>& overrides,
               const std::string& command_arg = "", const std::string& out_arg = "",
               const std::string& emit_arg = "", const std::string& seed_arg = "",
               std::ostream& err = std::cerr) {
    try {
        const RunConfig config =
            load_run_config(config_path, overrides, command_arg, out_arg, emit_arg, seed_arg);
        const std::vector<std::string> written = execute_run(config);
        for (const std::string& path : written) std::cout << path << "\n";
        return 0;
    } catch (const Error& e) {
        err << "error [" << e.name() << "]: " << e.what() << "\n";
        return error_exit_code(e.error_class());
    } catch (const nlohmann::json::exception& e) {
        err << "error [ConfigParse]: " << e.what() << "\n";
        return error_exit_code(ErrorClass::Config);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace panelar
