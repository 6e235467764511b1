#ifndef PANELAR_MOMENTS_HPP
#define PANELAR_MOMENTS_HPP

#include <cmath>
#include <limits>

#include "panelar/errors.hpp"
#include "panelar/limits.hpp"
#include "panelar/regime.hpp"

namespace panelar {

// Exact finite-T second moments of the normalized per-section statistics:
//   e_a    = E[A_1^T]      (0 in-model: the numerator is a martingale sum)
//   var_a  = E[(A_1^T)^2]  = P(T)^2 * sum_t E[y_{t-1}^2]
//   e_b    = E[B_1^T]      = Q(T)   * sum_t E[y_{t-1}^2]
// The shared inner sum is the martingale identity: the numerator's second
// moment equals the denominator's mean before normalization.
struct MomentReport {
    double e_a = 0.0;
    double var_a = 0.0;
    double e_b = 0.0;
    double limit_var_a = std::numeric_limits<double>::quiet_NaN();
    double limit_e_b = std::numeric_limits<double>::quiet_NaN();
};

// sum_{t=1}^{T} E[y_{t-1}^2] with E[y_{t-1}^2] = (1-rho^{2(t-1)})/(1-rho^2)
// for rho^2 != 1 and t-1 at the unit root. Closed form, evaluated in long
// double: explosive rho at large T exceeds double range but not extended
// range. expm1/log1p keep the rho^2 -> 1 approach stable; below
// |rho^2 - 1| = 1e-12 the unit-root branch takes over, where the closed
// form would cancel catastrophically.
inline long double inner_second_moment_sum(double rho, long long t_len) {
    if (t_len < 1) throw InvalidParameter("T must be >= 1");
    long double t = static_cast<long double>(t_len);
    long double d = static_cast<long double>(rho) * rho - 1.0L;
    if (std::fabs(static_cast<double>(d)) < 1e-12)
        return t * (t - 1.0L) / 2.0L;
    // (rho^{2T} - 1)/d = expm1(T log1p(d))/d, so the sum telescopes to
    // (expm1(T log1p(d))/d - T)/d.
    long double geo = std::expm1l(t * std::log1pl(d)) / d;
    return (geo - t) / d;
}

inline MomentReport exact_second_moment(double rho, long long t_len,
                                        double p_of_t, double q_of_t) {
    if (t_len < 2) throw InvalidParameter("T must be >= 2");
    long double s = inner_second_moment_sum(rho, t_len);
    long double p = static_cast<long double>(p_of_t);
    long double q = static_cast<long double>(q_of_t);
    MomentReport report;
    report.e_a = 0.0;
    report.var_a = static_cast<double>(p * p * s);
    report.e_b = static_cast<double>(q * s);
    return report;
}

// Regime-aware variant: normalizers from the limit catalog, limit fields
// filled so var_a -> limit_var_a and e_b -> limit_e_b can be tested on a
// T-grid.
inline MomentReport exact_second_moment(const RegimeSpec& spec, long long t_len) {
    LimitLaw law = limit_law(spec, 1, t_len);
    double rho = resolve_rho(spec, t_len);
    MomentReport report = exact_second_moment(rho, t_len, law.p_of_t, law.q_of_t);
    report.limit_var_a = law.limit_var_a;
    report.limit_e_b = law.limit_e_b;
    return report;
}

} // namespace panelar

#endif // PANELAR_MOMENTS_HPP
