#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "errors.hpp"
#include "limits.hpp"
#include "moments.hpp"
#include "panel.hpp"
#include "stats.hpp"
#include "summation.hpp"

namespace panelar {

// Pooled least squares on the lagged regressor.
// rho_hat = numerator/denominator with numerator = sum_i sum_t y_{it} y_{i,t-1}
// and denominator = sum_i sum_t y^2_{i,t-1}.
struct LseResult {
    double rho_hat = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
    std::vector<double> per_section_num;  // sum_t y_{i,t-1} e_{it}; true innovations when available
    std::vector<double> per_section_den;  // sum_t y^2_{i,t-1}
    bool innovations_used = false;        // false means per_section_num is residual-based
};

inline LseResult lse(const PanelData& panel) {
    panel.validate();
    const std::int64_t n = panel.n;
    const std::int64_t t_len = panel.t_len;

    LseResult out;
    out.per_section_num.assign(static_cast<std::size_t>(n), 0.0);
    out.per_section_den.assign(static_cast<std::size_t>(n), 0.0);
    out.innovations_used = panel.has_innovations();

    std::vector<double> per_section_cross(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        CascadeAccumulator cross, den;
        for (std::int64_t t = 1; t <= t_len; ++t) {
            const double prev = panel.at(i, t - 1);
            cross.add(panel.at(i, t) * prev);
            den.add(prev * prev);
        }
        per_section_cross[static_cast<std::size_t>(i)] = cross.total();
        out.per_section_den[static_cast<std::size_t>(i)] = den.total();
    }

    out.numerator = pairwise_sum(per_section_cross);
    out.denominator = pairwise_sum(out.per_section_den);
    if (out.denominator == 0.0)
        throw ZeroDenominator("sum of squared lags is zero; T too small or degenerate panel");
    out.rho_hat = out.numerator / out.denominator;

    for (std::int64_t i = 0; i < n; ++i) {
        CascadeAccumulator num;
        for (std::int64_t t = 1; t <= t_len; ++t) {
            const double prev = panel.at(i, t - 1);
            const double e = panel.has_innovations() ? panel.eps_at(i, t)
                                                     : panel.at(i, t) - out.rho_hat * prev;
            num.add(prev * e);
        }
        out.per_section_num[static_cast<std::size_t>(i)] = num.total();
    }
    return out;
}

namespace detail {

// Scaled per-section sums for |rho| > 1, computed without forming the raw
// (geometrically exploding) series sums. With beta = 1/rho and
// u_t = sum_{s<=t} beta^{s-1} e_s:
//   scaled_num = beta^(T-2) * sum_t y_{t-1} e_t   via  A_t = beta*A_{t-1} + u_{t-1} e_t
//   scaled_den = beta^(2(T-2)) * sum_t y^2_{t-1}  via  D_t = beta^2*D_{t-1} + u^2_{t-1}
// Every factor stays O(1); early-term underflow only drops negligible mass.
struct ScaledSectionSums {
    double scaled_num = 0.0;
    double scaled_den = 0.0;
    double u = 0.0;  // u_{T-1} = sum_{s=1}^{T-1} beta^(s-1) e_s
    double v = 0.0;  // sum_{s=1}^{T} beta^(T-s) e_s
};

inline ScaledSectionSums explosive_scaled_sums(const double* eps_row, std::int64_t t_len, double beta) {
    ScaledSectionSums out;
    double u_prev = 0.0;  // u_{t-1}
    double pow_beta = 1.0;  // beta^(t-1)
    double a = 0.0;
    double d = 0.0;
    const double beta2 = beta * beta;
    for (std::int64_t t = 1; t <= t_len; ++t) {
        const double e = eps_row[t - 1];
        a = beta * a + u_prev * e;
        d = beta2 * d + u_prev * u_prev;
        if (t < t_len) {
            u_prev += pow_beta * e;
            pow_beta *= beta;
        } else {
            out.u = u_prev;
        }
    }
    out.scaled_num = a;
    out.scaled_den = d;
    double g = 1.0;  // beta^(T-s), s descending from T
    double v = 0.0;
    for (std::int64_t s = t_len; s >= 1; --s) {
        v += g * eps_row[s - 1];
        g *= beta;
    }
    out.v = v;
    return out;
}

}  // namespace detail

// Per-section normalized statistics a_i = P(T)*sum_t y_{i,t-1} e_{it} and
// b_i = Q(T)*sum_t y^2_{i,t-1}, their standardized cross-sectional summaries
// s = (1/sqrt(N)) * sum_i a_i / sqrt(var_a_used) and
// r = (1/N) * sum_i b_i / mean_b_used, and the standardization constants used.
struct CrossSectionStats {
    std::vector<double> a;
    std::vector<double> b;
    double s = 0.0;
    double r = 0.0;
    double var_a_used = 0.0;
    double mean_b_used = 0.0;

    // Recombines to sqrt(N)*(P/Q)*(rho_hat - rho): (s/r)*sqrt(var_a_used)/mean_b_used.
    double composite_scaled_error() const {
        return (s / r) * std::sqrt(var_a_used) / mean_b_used;
    }
};

enum class Standardization { ExactFiniteT, Asymptotic };

inline const char* standardization_name(Standardization s) {
    return s == Standardization::ExactFiniteT ? "exact_finite_t" : "asymptotic";
}

inline CrossSectionStats cross_section_stats(const PanelData& panel, const LimitLaw& law,
                                             Standardization standardization,
                                             bool accept_residuals = false) {
    panel.validate();
    const std::int64_t n = panel.n;
    const std::int64_t t_len = panel.t_len;

    if (!panel.has_innovations() && !accept_residuals)
        throw MissingInnovations("true innovations absent and residual mode not accepted");

    CrossSectionStats out;
    out.a.assign(static_cast<std::size_t>(n), 0.0);
    out.b.assign(static_cast<std::size_t>(n), 0.0);

    const bool have_rho = panel.rho_used.has_value();
    const double rho = have_rho ? *panel.rho_used : 0.0;
    const bool rescaled = have_rho && std::fabs(rho) > 1.0 && panel.has_innovations();

    if (rescaled) {
        // P*sum = (P*rho^(T-2)) * scaled_num; the prefactor is O(1) by the
        // regime's construction (exactly 1 for the geometric P = rho^-(T-2)).
        const double beta = 1.0 / rho;
        const double num_factor = law.p_of_t * std::pow(rho, static_cast<double>(t_len - 2));
        const double den_factor = num_factor * num_factor;  // Q = P^2 throughout the catalog
        for (std::int64_t i = 0; i < n; ++i) {
            const double* erow = panel.eps.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(t_len);
            const auto sums = detail::explosive_scaled_sums(erow, t_len, beta);
            out.a[static_cast<std::size_t>(i)] = num_factor * sums.scaled_num;
            out.b[static_cast<std::size_t>(i)] = den_factor * sums.scaled_den;
        }
    } else {
        double rho_for_residuals = 0.0;
        if (!panel.has_innovations()) rho_for_residuals = lse(panel).rho_hat;
        for (std::int64_t i = 0; i < n; ++i) {
            CascadeAccumulator num, den;
            for (std::int64_t t = 1; t <= t_len; ++t) {
                const double prev = panel.at(i, t - 1);
                const double e = panel.has_innovations()
                                     ? panel.eps_at(i, t)
                                     : panel.at(i, t) - rho_for_residuals * prev;
                num.add(prev * e);
                den.add(prev * prev);
            }
            out.a[static_cast<std::size_t>(i)] = law.p_of_t * num.total();
            out.b[static_cast<std::size_t>(i)] = law.q_of_t * den.total();
        }
    }

    if (standardization == Standardization::ExactFiniteT) {
        if (!have_rho && !panel.has_innovations())
            throw MissingParameters("exact standardization needs the true coefficient; none recorded");
        const double rho_exact = have_rho ? rho : lse(panel).rho_hat;
        const MomentReport mom = exact_second_moment(rho_exact, t_len, law.p_of_t, law.q_of_t);
        out.var_a_used = mom.var_a;
        out.mean_b_used = mom.e_b;
    } else {
        out.var_a_used = law.limit_var_a;
        out.mean_b_used = law.limit_e_b;
    }
    if (!(out.var_a_used > 0.0)) throw ZeroVariance("standardization variance is zero (T too small)");
    if (!(out.mean_b_used > 0.0)) throw ZeroVariance("standardization mean is zero (T too small)");

    const double sum_a = pairwise_sum(out.a);
    const double sum_b = pairwise_sum(out.b);
    const double n_d = static_cast<double>(n);
    out.s = sum_a / (std::sqrt(n_d) * std::sqrt(out.var_a_used));
    out.r = sum_b / (n_d * out.mean_b_used);
    return out;
}

// Diagnostics for |rho| > 1: u_iT = sum_{s=1}^{T-1} beta^(s-1) e_is and
// v_iT = sum_{s=1}^{T} beta^(T-s) e_is, plus the gaps between the scaled
// series sums and their u/v approximants.
struct ExplosiveUvStats {
    double mean_uv = 0.0;        // (1/N) sum_i u_iT v_iT
    double mean_u2 = 0.0;        // (1/N) sum_i u_iT^2
    double num_residual = 0.0;   // |beta^(T-2)(1/N) sum sum y_{t-1}e_t - mean_uv|
    double den_residual = 0.0;   // |beta^(2(T-2))(1/N) sum sum y^2_{t-1} - mean_u2|
};

inline ExplosiveUvStats explosive_uv_stats(const PanelData& panel) {
    panel.validate();
    if (!panel.rho_used.has_value())
        throw WrongRegime("panel has no recorded coefficient; u/v statistics need |rho| > 1");
    const double rho = *panel.rho_used;
    if (!(std::fabs(rho) > 1.0))
        throw WrongRegime("u/v statistics require |rho| > 1, got rho=" + std::to_string(rho));
    if (!panel.has_innovations())
        throw MissingInnovations("u/v statistics need the true innovations");

    const std::int64_t n = panel.n;
    const std::int64_t t_len = panel.t_len;
    const double beta = 1.0 / rho;

    std::vector<double> uv(static_cast<std::size_t>(n)), u2(static_cast<std::size_t>(n)),
        snum(static_cast<std::size_t>(n)), sden(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const double* erow = panel.eps.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(t_len);
        const auto sums = detail::explosive_scaled_sums(erow, t_len, beta);
        uv[static_cast<std::size_t>(i)] = sums.u * sums.v;
        u2[static_cast<std::size_t>(i)] = sums.u * sums.u;
        snum[static_cast<std::size_t>(i)] = sums.scaled_num;
        sden[static_cast<std::size_t>(i)] = sums.scaled_den;
    }

    ExplosiveUvStats out;
    const double n_d = static_cast<double>(n);
    out.mean_uv = pairwise_sum(uv) / n_d;
    out.mean_u2 = pairwise_sum(u2) / n_d;
    out.num_residual = std::fabs(pairwise_sum(snum) / n_d - out.mean_uv);
    out.den_residual = std::fabs(pairwise_sum(sden) / n_d - out.mean_u2);
    return out;
}

}  // namespace panelar
