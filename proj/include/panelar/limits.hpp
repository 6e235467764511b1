#ifndef PANELAR_LIMITS_HPP
#define PANELAR_LIMITS_HPP

#include <cmath>

#include "panelar/errors.hpp"
#include "panelar/regime.hpp"

namespace panelar {

// Limiting variance of the local-to-unity statistic, 4c^2/(2c-1+e^{-2c}).
// Written with expm1 so the denominator survives c near 0, where the naive
// form cancels to noise; the c->0 limit of the whole expression is 2.
inline double local_to_unity_variance(double c) {
    double denom = 2.0 * c + std::expm1(-2.0 * c);
    return 4.0 * c * c / denom;
}

// T -> infinity limit of Var(A_1^T) = E[B_1^T], the second moment of the
// normalized per-section sums. For |rho| > 1 the limit is rho^4/(rho^2-1)^2,
// which is NOT the reciprocal of the catalog limit_variance below; the other
// five regimes satisfy the reciprocal relation (see README on the explosive
// catalog entry).
inline double limit_second_moment(const RegimeSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case RegimeKind::Stationary:
            return 1.0;
        case RegimeKind::UnitRoot:
            return 0.5;
        case RegimeKind::LocalToUnity:
            return (2.0 * spec.c + std::expm1(-2.0 * spec.c)) / (4.0 * spec.c * spec.c);
        case RegimeKind::MildlyIntegrated:
            return 1.0 / (2.0 * spec.c);
        case RegimeKind::MildlyExplosive:
            return 1.0 / (4.0 * spec.c * spec.c);
        case RegimeKind::Explosive: {
            double r2 = spec.rho * spec.rho;
            return r2 * r2 / ((r2 - 1.0) * (r2 - 1.0));
        }
    }
    throw InvalidRegime("unknown regime kind");
}

// Normalization pair and limit law for the composite statistic
// sqrt(N) (P(T)/Q(T)) (rho_hat - rho). Q = P^2 in every regime, which is
// what ties the per-section denominator mean to the numerator variance.
struct LimitLaw {
    double p_of_t = 0.0;
    double q_of_t = 0.0;
    double rate = 0.0;           // sqrt(N) * p_of_t / q_of_t
    double limit_variance = 0.0; // variance of the limiting normal
    // Limits of Var(A_1^T) and E[B_1^T]; used by the "asymptotic"
    // standardization mode. Equal to each other in every regime.
    double limit_var_a = 0.0;
    double limit_e_b = 0.0;
};

inline LimitLaw limit_law(const RegimeSpec& spec, long long n, long long t_len) {
    spec.validate();
    if (n < 1) throw InvalidParameter("N must be >= 1");
    if (t_len < 2) throw InvalidParameter("T must be >= 2");
    double rho = resolve_rho(spec, t_len);
    double t = static_cast<double>(t_len);
    LimitLaw law;
    switch (spec.kind) {
        case RegimeKind::Stationary:
            law.p_of_t = std::sqrt((1.0 - rho * rho) / t);
            law.limit_variance = 1.0;
            break;
        case RegimeKind::UnitRoot:
            law.p_of_t = 1.0 / t;
            law.limit_variance = 2.0;
            break;
        case RegimeKind::LocalToUnity:
            law.p_of_t = 1.0 / t;
            law.limit_variance = local_to_unity_variance(spec.c);
            break;
        case RegimeKind::MildlyIntegrated:
            law.p_of_t = 1.0 / std::sqrt(t * spec.kt(t_len));
            law.limit_variance = 2.0 * spec.c;
            break;
        case RegimeKind::MildlyExplosive:
            law.p_of_t = 1.0 / (std::pow(rho, t) * spec.kt(t_len));
            law.limit_variance = 4.0 * spec.c * spec.c;
            break;
        case RegimeKind::Explosive:
            // Signed power: for rho < -1 the rate carries the sign of
            // rho^(T-2). Dividing by a signed rate only flips the sign of
            // the statistic, immaterial for a symmetric limit.
            law.p_of_t = std::pow(rho, -static_cast<double>(t_len - 2));
            law.limit_variance = 1.0;
            break;
    }
    law.q_of_t = law.p_of_t * law.p_of_t;
    law.rate = std::sqrt(static_cast<double>(n)) * law.p_of_t / law.q_of_t;
    law.limit_var_a = limit_second_moment(spec);
    law.limit_e_b = law.limit_var_a;
    return law;
}

} // namespace panelar

#endif // PANELAR_LIMITS_HPP
