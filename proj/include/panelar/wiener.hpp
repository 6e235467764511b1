#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace panelar {

namespace detail {

// One standard normal per counter slot, independent across slots.
inline double normal_at(const Philox4x32& gen, std::uint64_t counter) {
    const auto blk = gen.block(counter);
    const std::uint64_t a = (static_cast<std::uint64_t>(blk[1]) << 32) | blk[0];
    const std::uint64_t b = (static_cast<std::uint64_t>(blk[3]) << 32) | blk[2];
    const double u1 = to_open_unit(a);
    const double u2 = to_open_unit(b);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Counter layout for one path: level l of the bridge refinement owns the
// counter range [l*kLevelStride, l*kLevelStride + nodes<l>).
inline constexpr std::uint64_t kLevelStride = 1ull << 44;

}  // namespace detail

// Standard Brownian path on grid_steps+1 equispaced nodes of [0,1], W(0)=0.
// Built hierarchically: an odd-size base walk plus dyadic bridge-midpoint
// levels, each level drawing from its own counter range. Doubling grid_steps
// adds one level and leaves every shared node's value unchanged, so a refined
// grid refines the same paths instead of resampling them.
inline std::vector<double> build_wiener_path(std::uint64_t seed, std::uint64_t draw_index,
                                             std::int64_t grid_steps) {
    if (grid_steps < 1) throw InsufficientGrid("grid_steps must be >= 1");

    std::int64_t base = grid_steps;
    int levels = 0;
    while (base % 2 == 0) {
        base /= 2;
        ++levels;
    }

    Philox4x32 gen(seed, draw_index);
    std::vector<double> w(static_cast<std::size_t>(grid_steps) + 1, 0.0);

    std::int64_t stride = std::int64_t{1} << levels;
    const double base_sd = std::sqrt(1.0 / static_cast<double>(base));
    for (std::int64_t k = 0; k < base; ++k)
        w[static_cast<std::size_t>((k + 1) * stride)] =
            w[static_cast<std::size_t>(k * stride)] +
            base_sd * detail::normal_at(gen, static_cast<std::uint64_t>(k));

    for (int level = 1; level <= levels; ++level) {
        const std::int64_t half = stride / 2;
        const std::int64_t intervals = base << (level - 1);
        const double mid_sd = std::sqrt(1.0 / (4.0 * static_cast<double>(intervals)));
        const std::uint64_t offset = static_cast<std::uint64_t>(level) * detail::kLevelStride;
        for (std::int64_t k = 0; k < intervals; ++k) {
            const double left = w[static_cast<std::size_t>(k * stride)];
            const double right = w[static_cast<std::size_t>((k + 1) * stride)];
            w[static_cast<std::size_t>(k * stride + half)] =
                0.5 * (left + right) + mid_sd * detail::normal_at(gen, offset + static_cast<std::uint64_t>(k));
        }
        stride = half;
    }
    return w;
}

// R draws of ((W(1)^2 - 1)/2, int_0^1 W^2 dt), the integral by left-endpoint
// Riemann sum on the path grid.
inline std::vector<std::pair<double, double>> sample_unit_root_functionals(std::int64_t grid_steps,
                                                                           std::int64_t replications,
                                                                           std::uint64_t seed,
                                                                           int workers = 0) {
    if (grid_steps < 100) throw InsufficientGrid("grid_steps must be >= 100");
    if (replications < 1) throw InvalidParameter("replications must be >= 1");

    std::vector<std::pair<double, double>> out(static_cast<std::size_t>(replications));
    parallel_for_index(replications, resolve_workers(workers), [&](std::int64_t j) {
        const std::vector<double> w = build_wiener_path(seed, static_cast<std::uint64_t>(j), grid_steps);
        const double dt = 1.0 / static_cast<double>(grid_steps);
        double integral = 0.0;
        for (std::int64_t k = 0; k < grid_steps; ++k) {
            const double wk = w[static_cast<std::size_t>(k)];
            integral += wk * wk;
        }
        integral *= dt;
        const double w1 = w.back();
        out[static_cast<std::size_t>(j)] = {0.5 * (w1 * w1 - 1.0), integral};
    });
    return out;
}

// R draws of ((b/2c) int (1+bt)^-1 W dW, (b/2c)^2 int (1+bt)^-2 W^2 dt) with
// b = e^{2c} - 1; the stochastic integral uses the Ito left-endpoint sum.
inline std::vector<std::pair<double, double>> sample_local_to_unity_functionals(double c,
                                                                                std::int64_t grid_steps,
                                                                                std::int64_t replications,
                                                                                std::uint64_t seed,
                                                                                int workers = 0) {
    if (c == 0.0 || !std::isfinite(c)) throw InvalidParameter("local-to-unity drift c must be finite and nonzero");
    if (grid_steps < 100) throw InsufficientGrid("grid_steps must be >= 100");
    if (replications < 1) throw InvalidParameter("replications must be >= 1");

    const double b = std::expm1(2.0 * c);
    const double scale = b / (2.0 * c);

    std::vector<std::pair<double, double>> out(static_cast<std::size_t>(replications));
    parallel_for_index(replications, resolve_workers(workers), [&](std::int64_t j) {
        const std::vector<double> w = build_wiener_path(seed, static_cast<std::uint64_t>(j), grid_steps);
        const double dt = 1.0 / static_cast<double>(grid_steps);
        double ito = 0.0;
        double integral = 0.0;
        for (std::int64_t k = 0; k < grid_steps; ++k) {
            const double tk = static_cast<double>(k) * dt;
            const double wk = w[static_cast<std::size_t>(k)];
            const double weight = 1.0 / (1.0 + b * tk);
            ito += weight * wk * (w[static_cast<std::size_t>(k + 1)] - wk);
            integral += weight * weight * wk * wk;
        }
        integral *= dt;
        out[static_cast<std::size_t>(j)] = {scale * ito, scale * scale * integral};
    });
    return out;
}

// R draws of (X*Y, Y^2) with X, Y independent N(0, 1/(-2c)); the reference
// limit pair for mildly explosive per-section statistics.
inline std::vector<std::pair<double, double>> mildly_explosive_limit_sample(double c,
                                                                            std::int64_t replications,
                                                                            std::uint64_t seed,
                                                                            int workers = 0) {
    if (!(c < 0.0)) throw InvalidParameter("mildly explosive limit needs c < 0");
    if (replications < 1) throw InvalidParameter("replications must be >= 1");

    const double sd = std::sqrt(1.0 / (-2.0 * c));
    std::vector<std::pair<double, double>> out(static_cast<std::size_t>(replications));
    parallel_for_index(replications, resolve_workers(workers), [&](std::int64_t j) {
        SubStream stream(seed, static_cast<std::uint64_t>(j));
        const double x = sd * stream.next_normal();
        const double y = sd * stream.next_normal();
        out[static_cast<std::size_t>(j)] = {x * y, y * y};
    });
    return out;
}

}  // namespace panelar
