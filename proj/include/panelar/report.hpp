#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "config.hpp"
#include "inference.hpp"
#include "io_util.hpp"
#include "montecarlo.hpp"

namespace panelar {

inline constexpr int kSchemaVersion = 1;

inline OrderedJson run_config_to_json(const RunConfig& config) {
    return OrderedJson{{"command", command_name(config.command)},
                       {"output_path", config.output_path},
                       {"emit", config.emit},
                       {"parameters", config.parameters}};
}

inline OrderedJson mc_report_to_json(const McReport& report) {
    OrderedJson quantiles = OrderedJson::array();
    for (const QuantilePair& q : report.quantile_pairs)
        quantiles.push_back(OrderedJson{{"prob", q.prob}, {"empirical", q.empirical}, {"limit", q.limit}});
    return OrderedJson{{"empirical_mean", report.empirical_mean},
                       {"empirical_var", report.empirical_var},
                       {"ks_to_limit", report.ks_to_limit},
                       {"quantile_pairs", quantiles},
                       {"runtime_seconds", report.runtime_seconds},
                       {"scaled_stats", report.scaled_stats}};
}

inline OrderedJson inference_to_json(const InferenceResult& result) {
    OrderedJson j{{"rho_hat", result.rho_hat},
                  {"regime_assumed", regime_name(result.regime_assumed)},
                  {"rate", result.rate},
                  {"ci_low", result.ci_low},
                  {"ci_high", result.ci_high},
                  {"level", result.level}};
    j["test_statistic"] = result.test_statistic ? OrderedJson(*result.test_statistic) : OrderedJson(nullptr);
    j["p_value"] = result.p_value ? OrderedJson(*result.p_value) : OrderedJson(nullptr);
    return j;
}

// Stable-key-order envelope shared by every JSON output; the embedded config
// makes any report re-runnable from its own metadata.
inline std::string report_envelope(const OrderedJson& config_echo, const OrderedJson& report) {
    const OrderedJson root{{"schema_version", kSchemaVersion}, {"config", config_echo}, {"report", report}};
    return root.dump(2) + "\n";
}

inline std::string scaled_stats_csv(const std::vector<double>& stats) {
    std::string out = "scaled_stat\n";
    for (const double v : stats) out += format_double(v) + "\n";
    return out;
}

inline std::string quantile_pairs_csv(const std::vector<QuantilePair>& pairs) {
    std::string out = "prob,empirical,limit\n";
    for (const QuantilePair& q : pairs)
        out += format_double(q.prob) + "," + format_double(q.empirical) + "," + format_double(q.limit) + "\n";
    return out;
}

inline std::vector<std::string> emit_report(const McReport& report, const std::vector<std::string>& formats,
                                            const std::string& path,
                                            const OrderedJson& config_echo = OrderedJson::object()) {
    std::vector<std::string> written;
    for (const std::string& fmt : formats) {
        if (fmt == "json") {
            write_file_atomic(path, report_envelope(config_echo, mc_report_to_json(report)));
            written.push_back(path);
        } else if (fmt == "csv_stats") {
            const std::string p = path + ".stats.csv";
            write_file_atomic(p, scaled_stats_csv(report.scaled_stats));
            written.push_back(p);
        } else if (fmt == "csv_quantiles") {
            const std::string p = path + ".quantiles.csv";
            write_file_atomic(p, quantile_pairs_csv(report.quantile_pairs));
            written.push_back(p);
        }
    }
    return written;
}

// Inference results have no per-replication sample; only JSON applies.
inline std::vector<std::string> emit_report(const InferenceResult& result,
                                            const std::vector<std::string>& formats, const std::string& path,
                                            const OrderedJson& config_echo = OrderedJson::object()) {
    std::vector<std::string> written;
    for (const std::string& fmt : formats) {
        if (fmt == "json") {
            write_file_atomic(path, report_envelope(config_echo, inference_to_json(result)));
            written.push_back(path);
        }
    }
    return written;
}

}  // namespace panelar
