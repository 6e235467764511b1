#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "summation.hpp"

namespace panelar {

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Wichura's PPND16 rational approximations; |error| < 1e-15 over (0,1).
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("quantile probability must lie in (0,1)");
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r + 6.7265770927008700853e+4) * r +
                    4.5921953931549871457e+4) * r + 1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r + 3.9307895800092710610e+4) * r +
                    2.1213794301586595867e+4) * r + 5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r + 2.41780725177450611770e-1) * r +
                   1.27045825245236838258e+0) * r + 3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r + 1.51986665636164571966e-2) * r +
                   1.48103976427480074590e-1) * r + 6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 1.24266094738807843860e-3) * r +
                   2.65321895265761230930e-2) * r + 2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r + 1.84631831751005468180e-5) * r +
                   7.86869131145613259100e-4) * r + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -val : val;
}

inline double sample_mean(std::span<const double> xs) {
    if (xs.empty()) throw EmptySample("mean of empty sample");
    return pairwise_sum(xs) / static_cast<double>(xs.size());
}

// Unbiased (n-1) two-pass variance.
inline double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) throw EmptySample("variance needs at least two observations");
    const double m = sample_mean(xs);
    std::vector<double> dev(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = xs[i] - m;
        dev[i] = d * d;
    }
    return pairwise_sum(dev) / static_cast<double>(xs.size() - 1);
}

// Linear-interpolation quantile (type 7) on an already sorted sample.
inline double sorted_quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw EmptySample("quantile of empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("quantile probability must lie in [0,1]");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

// Exact one-sample KS statistic of `sample` against N(0, variance):
// max over the sorted sample of (i/n - F(x_i), F(x_i) - (i-1)/n).
// Standardizing by sqrt(variance) first makes the statistic depend only on
// x_i/sqrt(variance), so ks(s, k^2 v) == ks(s/k, v) holds as written.
inline double ks_distance(std::span<const double> sample, double variance) {
    if (sample.empty()) throw EmptySample("KS distance of empty sample");
    if (!(variance > 0.0)) throw InvalidParameter("KS reference variance must be > 0");
    const double scale = std::sqrt(variance);
    std::vector<double> z(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) z[i] = sample[i] / scale;
    std::sort(z.begin(), z.end());
    const double n = static_cast<double>(z.size());
    double d = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double f = normal_cdf(z[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

// Least-squares slope of log(y) on log(x); used for decay-rate fits.
inline double loglog_slope(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw InsufficientGrid("slope fit needs at least two points");
    std::vector<double> lx(points.size()), ly(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].first > 0.0) || !(points[i].second > 0.0))
            throw InvalidParameter("log-log fit needs strictly positive coordinates");
        lx[i] = std::log(points[i].first);
        ly[i] = std::log(points[i].second);
    }
    const double mx = sample_mean(lx);
    const double my = sample_mean(ly);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx == 0.0) throw InvalidParameter("log-log fit needs distinct x coordinates");
    return sxy / sxx;
}

}  // namespace panelar
