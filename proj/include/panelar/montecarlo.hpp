#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "estimate.hpp"
#include "innovations.hpp"
#include "limits.hpp"
#include "moments.hpp"
#include "panel.hpp"
#include "parallel.hpp"
#include "regime.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace panelar {

struct McConfig {
    RegimeSpec regime;
    InnovationSpec innovations;
    std::int64_t n = 0;
    std::int64_t t_len = 0;
    std::int64_t replications = 0;
    std::uint64_t seed = 0;
    Standardization standardization = Standardization::ExactFiniteT;

    void validate() const {
        regime.validate();
        innovations.validate();
        if (n < 1) throw InvalidParameter("n must be >= 1");
        if (t_len < 2) throw InvalidParameter("t_len must be >= 2");
        if (replications < 1) throw InvalidParameter("replications must be >= 1");
    }
};

struct QuantilePair {
    double prob = 0.0;
    double empirical = 0.0;
    double limit = 0.0;
};

inline constexpr double kQuantileProbs[] = {0.01, 0.05, 0.10, 0.25, 0.50, 0.75, 0.90, 0.95, 0.99};

struct McReport {
    std::vector<double> scaled_stats;  // per replication: sqrt(N)*(P/Q)*(rho_hat - rho)
    double empirical_mean = 0.0;
    double empirical_var = 0.0;
    double ks_to_limit = 0.0;  // KS distance to N(0, limit_variance)
    std::vector<QuantilePair> quantile_pairs;
    double runtime_seconds = 0.0;
};

// Simulates cfg.replications independent panels (replication j reseeded by
// mixing j into the master seed), scales each estimator error by the regime's
// composite rate, and summarizes the scaled sample against the limit law.
// The per-replication values depend only on cfg, never on worker count.
inline McReport run_replications(const McConfig& cfg, int workers = 0) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    const LimitLaw law = limit_law(cfg.regime, cfg.n, cfg.t_len);

    McReport report;
    report.scaled_stats.assign(static_cast<std::size_t>(cfg.replications), 0.0);
    parallel_for_index(cfg.replications, resolve_workers(workers), [&](std::int64_t j) {
        try {
            const std::uint64_t rep_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(j));
            const PanelData panel = simulate_panel(cfg.regime, cfg.innovations, cfg.n, cfg.t_len,
                                                   rep_seed, /*keep_innovations=*/true, /*workers=*/1);
            const CrossSectionStats css = cross_section_stats(panel, law, cfg.standardization);
            report.scaled_stats[static_cast<std::size_t>(j)] = css.composite_scaled_error();
        } catch (const ZeroDenominator& e) {
            throw ZeroDenominator("replication " + std::to_string(j) + ": " + e.what());
        }
    });

    report.empirical_mean = sample_mean(report.scaled_stats);
    report.empirical_var = cfg.replications > 1 ? sample_variance(report.scaled_stats)
                                                : 0.0;
    report.ks_to_limit = ks_distance(report.scaled_stats, law.limit_variance);

    std::vector<double> sorted = report.scaled_stats;
    std::sort(sorted.begin(), sorted.end());
    const double limit_sd = std::sqrt(law.limit_variance);
    for (const double p : kQuantileProbs)
        report.quantile_pairs.push_back({p, sorted_quantile(sorted, p), limit_sd * normal_quantile(p)});

    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

struct BerryEsseenCurve {
    std::vector<std::pair<double, double>> points;  // (N, KS of S/R against standard normal)
    double fitted_slope = 0.0;
};

// For each N in n_grid, runs the replication engine and measures the KS
// distance of the standardized ratio S/R (exact finite-T standardization)
// from the standard normal; then fits log(KS) on log(N) by least squares.
inline BerryEsseenCurve berry_esseen_curve(const McConfig& base_cfg,
                                           const std::vector<std::int64_t>& n_grid,
                                           int workers = 0) {
    if (n_grid.size() < 4) throw InsufficientGrid("Berry-Esseen grid needs at least 4 points");
    for (std::size_t k = 1; k < n_grid.size(); ++k)
        if (n_grid[k] <= n_grid[k - 1]) throw InsufficientGrid("Berry-Esseen grid must be strictly increasing");
    if (base_cfg.t_len < 2) throw InvalidParameter("t_len must be >= 2");
    if (!std::isfinite(base_cfg.innovations.abs_third_moment()))
        throw InvalidInnovation("Berry-Esseen experiment needs a finite third absolute moment");

    McConfig cfg = base_cfg;
    cfg.standardization = Standardization::ExactFiniteT;

    // S/R = composite * mean_b/sqrt(var_a); the factor is deterministic in T.
    const double rho = resolve_rho(cfg.regime, cfg.t_len);

    BerryEsseenCurve curve;
    for (const std::int64_t n : n_grid) {
        cfg.n = n;
        const LimitLaw law = limit_law(cfg.regime, cfg.n, cfg.t_len);
        const MomentReport mom = exact_second_moment(rho, cfg.t_len, law.p_of_t, law.q_of_t);
        const double to_ratio = mom.e_b / std::sqrt(mom.var_a);

        const McReport rep = run_replications(cfg, workers);
        std::vector<double> sr(rep.scaled_stats.size());
        for (std::size_t j = 0; j < sr.size(); ++j) sr[j] = rep.scaled_stats[j] * to_ratio;

        curve.points.emplace_back(static_cast<double>(n), ks_distance(sr, 1.0));
    }
    curve.fitted_slope = loglog_slope(curve.points);
    return curve;
}

struct VariancePoint {
    std::int64_t t_len = 0;
    double empirical_var = 0.0;
    double limit_var = 0.0;
};

// Empirical variance of the composite-scaled statistic along a T grid,
// paired with the regime's limit variance. Approach need not be monotone;
// only terminal closeness is meaningful.
inline std::vector<VariancePoint> variance_convergence(const RegimeSpec& spec,
                                                       const InnovationSpec& innovations,
                                                       const std::vector<std::int64_t>& t_grid,
                                                       std::int64_t n, std::int64_t replications,
                                                       std::uint64_t seed, int workers = 0) {
    if (t_grid.size() < 3) throw InsufficientGrid("variance curve needs at least 3 T points");
    for (std::size_t k = 1; k < t_grid.size(); ++k)
        if (t_grid[k] <= t_grid[k - 1]) throw InsufficientGrid("T grid must be strictly increasing");

    std::vector<VariancePoint> out;
    for (const std::int64_t t_len : t_grid) {
        McConfig cfg;
        cfg.regime = spec;
        cfg.innovations = innovations;
        cfg.n = n;
        cfg.t_len = t_len;
        cfg.replications = replications;
        cfg.seed = seed;
        cfg.standardization = Standardization::Asymptotic;
        const McReport rep = run_replications(cfg, workers);
        out.push_back({t_len, rep.empirical_var, limit_law(spec, n, t_len).limit_variance});
    }
    return out;
}

}  // namespace panelar
