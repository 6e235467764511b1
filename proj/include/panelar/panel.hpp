#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "innovations.hpp"
#include "parallel.hpp"
#include "regime.hpp"
#include "rng.hpp"

namespace panelar {

// Balanced panel with N cross sections observed on t = 0..T.
// y is row-major N x (T+1); y[i*(T+1) + 0] is always the zero start value.
// eps, when retained, is row-major N x T with eps[i*T + (t-1)] driving y_{it}.
struct PanelData {
    std::int64_t n = 0;
    std::int64_t t_len = 0;
    std::vector<double> y;
    std::vector<double> eps;
    std::optional<double> rho_used;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;

    bool has_innovations() const { return !eps.empty(); }

    double& at(std::int64_t i, std::int64_t t) { return y[static_cast<std::size_t>(i * (t_len + 1) + t)]; }
    double at(std::int64_t i, std::int64_t t) const { return y[static_cast<std::size_t>(i * (t_len + 1) + t)]; }

    double eps_at(std::int64_t i, std::int64_t t) const {
        return eps[static_cast<std::size_t>(i * t_len + (t - 1))];
    }

    void validate() const {
        if (n < 1) throw InvalidParameter("panel needs N >= 1 cross sections");
        if (t_len < 1) throw InvalidParameter("panel needs T >= 1 periods");
        if (y.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(t_len + 1))
            throw UnbalancedPanel("y storage does not match N x (T+1)");
        if (!eps.empty() && eps.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(t_len))
            throw UnbalancedPanel("eps storage does not match N x T");
        for (std::int64_t i = 0; i < n; ++i) {
            if (at(i, 0) != 0.0)
                throw NonzeroInitial("cross section " + std::to_string(i) + " does not start at zero");
        }
    }
};

// Simulates y_{it} = rho_T y_{i,t-1} + eps_{it}, y_{i0} = 0, with rho_T resolved
// from the regime at this T. Cross section i consumes RNG stream i of `seed`,
// so the draw sequence is independent of worker count.
inline PanelData simulate_panel(const RegimeSpec& spec, const InnovationSpec& innov,
                                std::int64_t n, std::int64_t t_len, std::uint64_t seed,
                                bool keep_innovations = false, int workers = 0) {
    spec.validate();
    innov.validate();
    if (n < 1) throw InvalidParameter("N must be >= 1");
    if (t_len < 2) throw InvalidParameter("T must be >= 2");

    const double rho = resolve_rho(spec, t_len);

    PanelData panel;
    panel.n = n;
    panel.t_len = t_len;
    panel.seed = seed;
    panel.rho_used = rho;
    panel.y.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(t_len + 1), 0.0);
    if (keep_innovations)
        panel.eps.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(t_len), 0.0);

    const int nworkers = resolve_workers(workers);
    parallel_for_index(n, nworkers, [&](std::int64_t i) {
        SubStream stream(seed, static_cast<std::uint64_t>(i));
        double* yrow = panel.y.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(t_len + 1);
        double* erow = keep_innovations
                           ? panel.eps.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(t_len)
                           : nullptr;
        yrow[0] = 0.0;
        double prev = 0.0;
        for (std::int64_t t = 1; t <= t_len; ++t) {
            const double e = innov.draw(stream);
            const double cur = rho * prev + e;
            yrow[t] = cur;
            if (erow) erow[t - 1] = e;
            prev = cur;
        }
    });

    return panel;
}

}  // namespace panelar
