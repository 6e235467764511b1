#ifndef PANELAR_REGIME_HPP
#define PANELAR_REGIME_HPP

#include <cmath>
#include <string>

#include "panelar/errors.hpp"

namespace panelar {

enum class RegimeKind {
    Stationary,       // fixed |rho| < 1
    UnitRoot,         // rho = 1
    LocalToUnity,     // rho_T = 1 - c/T, c != 0
    MildlyIntegrated, // rho_T = 1 - c/k_T, c > 0, k_T = T^alpha
    MildlyExplosive,  // rho_T = 1 - c/k_T, c < 0, k_T = T^alpha
    Explosive,        // fixed |rho| > 1
};

inline const char* regime_name(RegimeKind kind) noexcept {
    switch (kind) {
        case RegimeKind::Stationary: return "Stationary";
        case RegimeKind::UnitRoot: return "UnitRoot";
        case RegimeKind::LocalToUnity: return "LocalToUnity";
        case RegimeKind::MildlyIntegrated: return "MildlyIntegrated";
        case RegimeKind::MildlyExplosive: return "MildlyExplosive";
        case RegimeKind::Explosive: return "Explosive";
    }
    return "?";
}

// Which of the six rho-regimes, with its parameters. rho is meaningful
// only for the fixed-rho regimes, c for the drifting ones, kt_exponent
// (alpha, with k_T = T^alpha) only for the Mildly* pair.
struct RegimeSpec {
    RegimeKind kind = RegimeKind::UnitRoot;
    double rho = 0.0;
    double c = 0.0;
    double kt_exponent = 0.0;

    static RegimeSpec stationary(double rho) {
        RegimeSpec s{RegimeKind::Stationary, rho, 0.0, 0.0};
        s.validate();
        return s;
    }
    static RegimeSpec unit_root() { return RegimeSpec{RegimeKind::UnitRoot, 1.0, 0.0, 0.0}; }
    static RegimeSpec local_to_unity(double c) {
        RegimeSpec s{RegimeKind::LocalToUnity, 0.0, c, 0.0};
        s.validate();
        return s;
    }
    static RegimeSpec mildly_integrated(double c, double alpha) {
        RegimeSpec s{RegimeKind::MildlyIntegrated, 0.0, c, alpha};
        s.validate();
        return s;
    }
    static RegimeSpec mildly_explosive(double c, double alpha) {
        RegimeSpec s{RegimeKind::MildlyExplosive, 0.0, c, alpha};
        s.validate();
        return s;
    }
    static RegimeSpec explosive(double rho) {
        RegimeSpec s{RegimeKind::Explosive, rho, 0.0, 0.0};
        s.validate();
        return s;
    }

    void validate() const {
        switch (kind) {
            case RegimeKind::Stationary:
                if (!(std::abs(rho) < 1.0))
                    throw InvalidRegime("Stationary requires |rho| < 1, got rho=" + std::to_string(rho));
                break;
            case RegimeKind::UnitRoot:
                break;
            case RegimeKind::LocalToUnity:
                if (!(c != 0.0) || !std::isfinite(c))
                    throw InvalidRegime("LocalToUnity requires finite c != 0");
                break;
            case RegimeKind::MildlyIntegrated:
                if (!(c > 0.0) || !std::isfinite(c))
                    throw InvalidRegime("MildlyIntegrated requires c > 0, got c=" + std::to_string(c));
                require_alpha();
                break;
            case RegimeKind::MildlyExplosive:
                if (!(c < 0.0) || !std::isfinite(c))
                    throw InvalidRegime("MildlyExplosive requires c < 0, got c=" + std::to_string(c));
                require_alpha();
                break;
            case RegimeKind::Explosive:
                if (!(std::abs(rho) > 1.0) || !std::isfinite(rho))
                    throw InvalidRegime("Explosive requires |rho| > 1, got rho=" + std::to_string(rho));
                break;
        }
    }

    // k_T = T^alpha for the Mildly* regimes.
    double kt(long long t_len) const {
        return std::pow(static_cast<double>(t_len), kt_exponent);
    }

  private:
    void require_alpha() const {
        if (!(kt_exponent > 0.0) || !(kt_exponent < 1.0))
            throw InvalidRegime("Mildly* regimes require kt_exponent in (0,1), got " +
                                std::to_string(kt_exponent));
    }
};

// The autoregressive coefficient actually used at time horizon T.
inline double resolve_rho(const RegimeSpec& spec, long long t_len) {
    spec.validate();
    if (t_len < 1) throw InvalidParameter("T must be >= 1");
    switch (spec.kind) {
        case RegimeKind::Stationary:
        case RegimeKind::Explosive:
            return spec.rho;
        case RegimeKind::UnitRoot:
            return 1.0;
        case RegimeKind::LocalToUnity:
            return 1.0 - spec.c / static_cast<double>(t_len);
        case RegimeKind::MildlyIntegrated: {
            double rho = 1.0 - spec.c / spec.kt(t_len);
            if (!(rho > 0.0 && rho < 1.0))
                throw DegenerateT("MildlyIntegrated rho = " + std::to_string(rho) +
                                  " falls outside (0,1); T too small for c=" + std::to_string(spec.c));
            return rho;
        }
        case RegimeKind::MildlyExplosive: {
            double rho = 1.0 - spec.c / spec.kt(t_len);
            if (!(rho > 1.0))
                throw DegenerateT("MildlyExplosive rho = " + std::to_string(rho) +
                                  " does not exceed 1; T too small for c=" + std::to_string(spec.c));
            return rho;
        }
    }
    throw InvalidRegime("unknown regime kind");
}

} // namespace panelar

#endif // PANELAR_REGIME_HPP
