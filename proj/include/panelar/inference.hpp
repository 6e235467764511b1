#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "errors.hpp"
#include "estimate.hpp"
#include "limits.hpp"
#include "panel.hpp"
#include "regime.hpp"
#include "stats.hpp"

namespace panelar {

struct InferenceResult {
    double rho_hat = 0.0;
    RegimeKind regime_assumed = RegimeKind::UnitRoot;
    double rate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double level = 0.0;
    std::optional<double> test_statistic;
    std::optional<double> p_value;
};

// Declared drift parameters for the regimes whose rate is not identifiable
// from a single panel.
struct RegimeParams {
    std::optional<double> c;
    std::optional<double> kt_exponent;
};

// Regime-conditional normal-limit interval: rho_hat +/- z * sqrt(var)/rate.
// The regime is a user declaration; rates differ across regimes, so no
// attempt is made to infer the regime from the data.
inline InferenceResult confidence_interval(const PanelData& panel, RegimeKind kind, double level,
                                           const RegimeParams& params = {}) {
    if (!(level > 0.0 && level < 1.0)) throw InvalidParameter("confidence level must lie in (0,1)");
    panel.validate();

    const LseResult fit = lse(panel);
    const double n = static_cast<double>(panel.n);
    const double t = static_cast<double>(panel.t_len);

    double rate = 0.0;
    double variance = 0.0;
    switch (kind) {
        case RegimeKind::Stationary: {
            // Plug-in rate: the true rho is replaced by rho_hat.
            if (!(std::fabs(fit.rho_hat) < 1.0))
                throw RegimeMismatch("declared stationary but |rho_hat| >= 1 (rho_hat=" +
                                     std::to_string(fit.rho_hat) + ")");
            rate = std::sqrt(n * t / (1.0 - fit.rho_hat * fit.rho_hat));
            variance = 1.0;
            break;
        }
        case RegimeKind::UnitRoot: {
            rate = std::sqrt(n) * t;
            variance = 2.0;
            break;
        }
        case RegimeKind::LocalToUnity: {
            if (!params.c) throw MissingParameters("local-to-unity interval needs a declared c");
            const RegimeSpec spec = RegimeSpec::local_to_unity(*params.c);
            rate = std::sqrt(n) * t;
            variance = local_to_unity_variance(spec.c);
            break;
        }
        case RegimeKind::MildlyIntegrated: {
            if (!params.c || !params.kt_exponent)
                throw MissingParameters("mildly integrated interval needs declared c and kt_exponent");
            const RegimeSpec spec = RegimeSpec::mildly_integrated(*params.c, *params.kt_exponent);
            const double kt = spec.kt(panel.t_len);
            rate = std::sqrt(n * t * kt);
            variance = 2.0 * spec.c;
            break;
        }
        case RegimeKind::MildlyExplosive: {
            if (!params.c || !params.kt_exponent)
                throw MissingParameters("mildly explosive interval needs declared c and kt_exponent");
            const RegimeSpec spec = RegimeSpec::mildly_explosive(*params.c, *params.kt_exponent);
            const double kt = spec.kt(panel.t_len);
            const double rho_t = resolve_rho(spec, panel.t_len);
            rate = std::sqrt(n) * kt * std::pow(rho_t, t);
            variance = 4.0 * spec.c * spec.c;
            break;
        }
        case RegimeKind::Explosive: {
            if (!(std::fabs(fit.rho_hat) > 1.0))
                throw RegimeMismatch("declared explosive but |rho_hat| <= 1 (rho_hat=" +
                                     std::to_string(fit.rho_hat) + ")");
            rate = std::sqrt(n) * std::pow(std::fabs(fit.rho_hat), t - 2.0);
            variance = 1.0;
            break;
        }
    }

    const double z = normal_quantile(0.5 * (1.0 + level));
    const double half_width = z * std::sqrt(variance) / rate;

    InferenceResult out;
    out.rho_hat = fit.rho_hat;
    out.regime_assumed = kind;
    out.rate = rate;
    out.ci_low = fit.rho_hat - half_width;
    out.ci_high = fit.rho_hat + half_width;
    out.level = level;
    return out;
}

enum class Alternative { TwoSided, StationarySide, ExplosiveSide };

inline const char* alternative_name(Alternative a) {
    switch (a) {
        case Alternative::TwoSided: return "two_sided";
        case Alternative::StationarySide: return "stationary_side";
        case Alternative::ExplosiveSide: return "explosive_side";
    }
    return "two_sided";
}

// Z = sqrt(N)*T*(rho_hat - 1)/sqrt(2), asymptotically standard normal under
// the unit root null. Also carries the unit-root interval at `level`, making
// the two-sided test and the interval exactly dual.
inline InferenceResult unit_root_test(const PanelData& panel, Alternative alternative,
                                      double level = 0.95) {
    panel.validate();
    if (panel.n < 2) throw InvalidParameter("unit root test needs N >= 2 cross sections");

    InferenceResult out = confidence_interval(panel, RegimeKind::UnitRoot, level);
    const double z = std::sqrt(static_cast<double>(panel.n)) * static_cast<double>(panel.t_len) *
                     (out.rho_hat - 1.0) / std::sqrt(2.0);
    out.test_statistic = z;
    switch (alternative) {
        case Alternative::TwoSided:
            out.p_value = 2.0 * normal_cdf(-std::fabs(z));
            break;
        case Alternative::StationarySide:
            out.p_value = normal_cdf(z);
            break;
        case Alternative::ExplosiveSide:
            out.p_value = normal_cdf(-z);
            break;
    }
    return out;
}

}  // namespace panelar
