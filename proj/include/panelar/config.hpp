#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "estimate.hpp"
#include "inference.hpp"
#include "innovations.hpp"
#include "io_util.hpp"
#include "montecarlo.hpp"
#include "regime.hpp"

namespace panelar {

using OrderedJson = nlohmann::ordered_json;

enum class Command { Simulate, Mc, BerryEsseen, VarianceCurve, Infer, Wiener };

inline const char* command_name(Command c) {
    switch (c) {
        case Command::Simulate: return "simulate";
        case Command::Mc: return "mc";
        case Command::BerryEsseen: return "berry_esseen";
        case Command::VarianceCurve: return "variance_curve";
        case Command::Infer: return "infer";
        case Command::Wiener: return "wiener";
    }
    return "?";
}

inline Command parse_command(const std::string& name) {
    if (name == "simulate") return Command::Simulate;
    if (name == "mc") return Command::Mc;
    if (name == "berry_esseen" || name == "berry-esseen") return Command::BerryEsseen;
    if (name == "variance_curve" || name == "variance-curve") return Command::VarianceCurve;
    if (name == "infer") return Command::Infer;
    if (name == "wiener") return Command::Wiener;
    throw ConfigParse("unknown command '" + name +
                      "'; expected simulate|mc|berry-esseen|variance-curve|infer|wiener");
}

struct RunConfig {
    Command command = Command::Mc;
    OrderedJson parameters;
    std::string output_path;
    std::vector<std::string> emit = {"json"};
};

inline OrderedJson default_regime_json() {
    return OrderedJson{{"kind", "UnitRoot"}, {"rho", 1.0}, {"c", 1.0}, {"kt_exponent", 0.5}};
}

inline OrderedJson default_innovations_json() {
    return OrderedJson{{"family", "StandardNormal"}, {"df", 8.0}};
}

inline OrderedJson default_parameters(Command command) {
    const std::uint64_t seed = 20260814ull;
    switch (command) {
        case Command::Simulate:
            return OrderedJson{{"regime", default_regime_json()},
                               {"innovations", default_innovations_json()},
                               {"n", 10},
                               {"t_len", 50},
                               {"seed", seed},
                               {"keep_innovations", false},
                               {"format", "long_csv"},
                               {"workers", 0}};
        case Command::Mc:
            return OrderedJson{{"regime", default_regime_json()},
                               {"innovations", default_innovations_json()},
                               {"n", 200},
                               {"t_len", 100},
                               {"replications", 2000},
                               {"seed", seed},
                               {"standardization", "exact_finite_t"},
                               {"workers", 0}};
        case Command::BerryEsseen:
            return OrderedJson{{"regime", default_regime_json()},
                               {"innovations", default_innovations_json()},
                               {"t_len", 100},
                               {"replications", 5000},
                               {"n_grid", OrderedJson::array({25, 50, 100, 200, 400})},
                               {"seed", seed},
                               {"workers", 0}};
        case Command::VarianceCurve:
            return OrderedJson{{"regime", default_regime_json()},
                               {"innovations", default_innovations_json()},
                               {"n", 200},
                               {"t_grid", OrderedJson::array({50, 200, 800})},
                               {"replications", 2000},
                               {"seed", seed},
                               {"workers", 0}};
        case Command::Infer:
            return OrderedJson{{"input_path", ""},
                               {"format", "long_csv"},
                               {"mode", "ci"},
                               {"regime_kind", "UnitRoot"},
                               {"level", 0.95},
                               {"c", nullptr},
                               {"kt_exponent", nullptr},
                               {"alternative", "two_sided"}};
        case Command::Wiener:
            return OrderedJson{{"functional", "unit_root"},
                               {"c", 1.0},
                               {"grid_steps", 10000},
                               {"replications", 10000},
                               {"seed", seed},
                               {"workers", 0}};
    }
    return OrderedJson::object();
}

namespace detail {

inline std::string json_type_name(const OrderedJson& v) {
    if (v.is_null()) return "null";
    if (v.is_boolean()) return "bool";
    if (v.is_number()) return "number";
    if (v.is_string()) return "string";
    if (v.is_array()) return "array";
    return "object";
}

// Overlays `user` onto `base`; every user key must already exist in the
// defaults and keep its type (null defaults accept anything).
inline void merge_parameters(OrderedJson& base, const OrderedJson& user, const std::string& prefix) {
    if (!user.is_object())
        throw ConfigParse("'" + (prefix.empty() ? std::string("parameters") : prefix) + "' must be an object");
    for (const auto& [key, value] : user.items()) {
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        if (!base.contains(key)) throw UnknownKey("unknown parameter '" + path + "'");
        OrderedJson& slot = base[key];
        if (slot.is_object() && value.is_object()) {
            merge_parameters(slot, value, path);
            continue;
        }
        if (!slot.is_null() && !value.is_null() && json_type_name(slot) != json_type_name(value))
            throw ConfigParse("parameter '" + path + "' expects " + json_type_name(slot) + ", got " +
                              json_type_name(value));
        slot = value;
    }
}

}  // namespace detail

// Applies one CLI override "dotted.path=value" within the parameters tree.
// Values are parsed as JSON when possible, otherwise taken as strings.
inline void apply_override(RunConfig& config, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigParse("override must look like key=value, got '" + assignment + "'");
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    OrderedJson value = OrderedJson::parse(raw, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) value = raw;

    OrderedJson* slot = &config.parameters;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty()) throw ConfigParse("override path '" + path + "' has an empty segment");
        if (!slot->is_object() || !slot->contains(key))
            throw UnknownKey("override references unknown key '" + path + "'");
        slot = &(*slot)[key];
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    if (slot->is_object())
        throw ConfigParse("override path '" + path + "' names a group, not a value");
    if (!slot->is_null() && !value.is_null() &&
        detail::json_type_name(*slot) != detail::json_type_name(value))
        throw ConfigParse("override '" + path + "' expects " + detail::json_type_name(*slot) + ", got " +
                          detail::json_type_name(value));
    *slot = value;
}

// Loads a RunConfig from an optional JSON file plus CLI-level settings.
// Precedence: command defaults < config file < --set/--seed/--out/--emit.
inline RunConfig load_run_config(const std::string& config_path, const std::vector<std::string>& overrides,
                                 const std::string& command_arg = "", const std::string& out_arg = "",
                                 const std::string& emit_arg = "", const std::string& seed_arg = "") {
    OrderedJson file_json = OrderedJson::object();
    if (!config_path.empty()) {
        const std::string text = read_file(config_path);
        file_json = OrderedJson::parse(text, nullptr, /*allow_exceptions=*/false);
        if (file_json.is_discarded()) throw ConfigParse("config file is not valid JSON: " + config_path);
        if (!file_json.is_object()) throw ConfigParse("config root must be a JSON object: " + config_path);
    }

    RunConfig config;
    if (!command_arg.empty())
        config.command = parse_command(command_arg);
    else if (file_json.contains("command"))
        config.command = parse_command(file_json.at("command").get<std::string>());
    else
        throw ConfigParse("no command given (CLI subcommand or \"command\" key in the config file)");

    config.parameters = default_parameters(config.command);
    for (const auto& [key, value] : file_json.items()) {
        if (key == "command") continue;
        if (key == "output_path") {
            if (!value.is_string()) throw ConfigParse("output_path must be a string");
            config.output_path = value.get<std::string>();
        } else if (key == "emit") {
            if (!value.is_array()) throw ConfigParse("emit must be an array of format names");
            config.emit.clear();
            for (const auto& fmt : value) config.emit.push_back(fmt.get<std::string>());
        } else if (key == "parameters") {
            detail::merge_parameters(config.parameters, value, "");
        } else {
            throw UnknownKey("unknown config key '" + key + "'");
        }
    }

    for (const auto& assignment : overrides) apply_override(config, assignment);
    if (!seed_arg.empty()) apply_override(config, "seed=" + seed_arg);
    if (!out_arg.empty()) config.output_path = out_arg;
    if (!emit_arg.empty()) {
        config.emit.clear();
        std::size_t start = 0;
        while (start <= emit_arg.size()) {
            const std::size_t comma = emit_arg.find(',', start);
            const std::string fmt =
                emit_arg.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!fmt.empty()) config.emit.push_back(fmt);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }

    if (config.output_path.empty())
        config.output_path = std::string(command_name(config.command)) + "_report.json";
    for (const auto& fmt : config.emit)
        if (fmt != "json" && fmt != "csv_stats" && fmt != "csv_quantiles")
            throw ConfigParse("unknown emit format '" + fmt + "'; expected json|csv_stats|csv_quantiles");
    return config;
}

// ---- typed builders from the parameters tree ----

namespace detail {

template <typename T>
inline T get_number(const OrderedJson& params, const std::string& key) {
    if (!params.contains(key)) throw MissingParameters("missing parameter '" + key + "'");
    const OrderedJson& v = params.at(key);
    if (!v.is_number()) throw ConfigParse("parameter '" + key + "' must be a number");
    return v.get<T>();
}

inline std::string get_string(const OrderedJson& params, const std::string& key) {
    if (!params.contains(key)) throw MissingParameters("missing parameter '" + key + "'");
    const OrderedJson& v = params.at(key);
    if (!v.is_string()) throw ConfigParse("parameter '" + key + "' must be a string");
    return v.get<std::string>();
}

}  // namespace detail

inline RegimeKind parse_regime_kind(const std::string& name) {
    if (name == "Stationary") return RegimeKind::Stationary;
    if (name == "UnitRoot") return RegimeKind::UnitRoot;
    if (name == "LocalToUnity") return RegimeKind::LocalToUnity;
    if (name == "MildlyIntegrated") return RegimeKind::MildlyIntegrated;
    if (name == "MildlyExplosive") return RegimeKind::MildlyExplosive;
    if (name == "Explosive") return RegimeKind::Explosive;
    throw InvalidRegime("unknown regime kind '" + name +
                        "'; expected Stationary|UnitRoot|LocalToUnity|MildlyIntegrated|MildlyExplosive|Explosive");
}

inline RegimeSpec regime_from_json(const OrderedJson& j) {
    if (!j.is_object()) throw ConfigParse("'regime' must be an object");
    RegimeSpec spec;
    spec.kind = parse_regime_kind(detail::get_string(j, "kind"));
    spec.rho = detail::get_number<double>(j, "rho");
    spec.c = detail::get_number<double>(j, "c");
    spec.kt_exponent = detail::get_number<double>(j, "kt_exponent");
    spec.validate();
    return spec;
}

inline InnovationFamily parse_innovation_family(const std::string& name) {
    if (name == "StandardNormal") return InnovationFamily::StandardNormal;
    if (name == "Rademacher") return InnovationFamily::Rademacher;
    if (name == "UniformStandardized") return InnovationFamily::UniformStandardized;
    if (name == "StudentTStandardized") return InnovationFamily::StudentTStandardized;
    throw InvalidInnovation("unknown innovation family '" + name +
                            "'; expected StandardNormal|Rademacher|UniformStandardized|StudentTStandardized");
}

inline InnovationSpec innovations_from_json(const OrderedJson& j) {
    if (!j.is_object()) throw ConfigParse("'innovations' must be an object");
    InnovationSpec spec;
    spec.family = parse_innovation_family(detail::get_string(j, "family"));
    spec.df = detail::get_number<double>(j, "df");
    spec.validate();
    return spec;
}

inline Standardization parse_standardization(const std::string& name) {
    if (name == "exact_finite_t") return Standardization::ExactFiniteT;
    if (name == "asymptotic") return Standardization::Asymptotic;
    throw ConfigParse("unknown standardization '" + name + "'; expected exact_finite_t|asymptotic");
}

inline Alternative parse_alternative(const std::string& name) {
    if (name == "two_sided") return Alternative::TwoSided;
    if (name == "stationary_side") return Alternative::StationarySide;
    if (name == "explosive_side") return Alternative::ExplosiveSide;
    throw ConfigParse("unknown alternative '" + name + "'; expected two_sided|stationary_side|explosive_side");
}

inline McConfig mc_config_from_json(const OrderedJson& params) {
    McConfig cfg;
    cfg.regime = regime_from_json(params.at("regime"));
    cfg.innovations = innovations_from_json(params.at("innovations"));
    cfg.n = detail::get_number<std::int64_t>(params, "n");
    cfg.t_len = detail::get_number<std::int64_t>(params, "t_len");
    cfg.replications = detail::get_number<std::int64_t>(params, "replications");
    cfg.seed = detail::get_number<std::uint64_t>(params, "seed");
    cfg.standardization = parse_standardization(detail::get_string(params, "standardization"));
    cfg.validate();
    return cfg;
}

inline std::vector<std::int64_t> int_grid_from_json(const OrderedJson& params, const std::string& key) {
    if (!params.contains(key)) throw MissingParameters("missing parameter '" + key + "'");
    const OrderedJson& v = params.at(key);
    if (!v.is_array()) throw ConfigParse("parameter '" + key + "' must be an array of integers");
    std::vector<std::int64_t> out;
    for (const auto& item : v) {
        if (!item.is_number()) throw ConfigParse("parameter '" + key + "' must contain only numbers");
        out.push_back(item.get<std::int64_t>());
    }
    return out;
}

}  // namespace panelar
