#ifndef PANELAR_INNOVATIONS_HPP
#define PANELAR_INNOVATIONS_HPP

#include <cmath>
#include <numbers>
#include <string>

#include "panelar/errors.hpp"
#include "panelar/rng.hpp"

namespace panelar {

enum class InnovationFamily {
    StandardNormal,
    Rademacher,
    UniformStandardized,
    StudentTStandardized,
};

inline const char* innovation_name(InnovationFamily family) noexcept {
    switch (family) {
        case InnovationFamily::StandardNormal: return "StandardNormal";
        case InnovationFamily::Rademacher: return "Rademacher";
        case InnovationFamily::UniformStandardized: return "UniformStandardized";
        case InnovationFamily::StudentTStandardized: return "StudentTStandardized";
    }
    return "?";
}

// Innovation distribution; every family has mean 0 and variance 1 by
// analytic standardization. Student-t requires df > 3 so the third
// absolute moment (consumed by the rate experiment) stays finite.
struct InnovationSpec {
    InnovationFamily family = InnovationFamily::StandardNormal;
    double df = 0.0; // StudentTStandardized only

    static InnovationSpec standard_normal() { return {InnovationFamily::StandardNormal, 0.0}; }
    static InnovationSpec rademacher() { return {InnovationFamily::Rademacher, 0.0}; }
    static InnovationSpec uniform() { return {InnovationFamily::UniformStandardized, 0.0}; }
    static InnovationSpec student_t(double df) {
        InnovationSpec s{InnovationFamily::StudentTStandardized, df};
        s.validate();
        return s;
    }

    void validate() const {
        if (family == InnovationFamily::StudentTStandardized &&
            !(df > 3.0 && std::isfinite(df)))
            throw InvalidInnovation("StudentTStandardized requires df > 3, got df=" +
                                    std::to_string(df));
    }

    double draw(SubStream& stream) const {
        switch (family) {
            case InnovationFamily::StandardNormal:
                return stream.next_normal();
            case InnovationFamily::Rademacher:
                return stream.next_rademacher();
            case InnovationFamily::UniformStandardized:
                return (2.0 * stream.next_open_unit() - 1.0) * std::numbers::sqrt3;
            case InnovationFamily::StudentTStandardized:
                return stream.next_student_t(df) * std::sqrt((df - 2.0) / df);
        }
        return 0.0;
    }

    // E|eps|^3, exact per family.
    double abs_third_moment() const {
        switch (family) {
            case InnovationFamily::StandardNormal:
                return 2.0 * std::sqrt(2.0 / std::numbers::pi);
            case InnovationFamily::Rademacher:
                return 1.0;
            case InnovationFamily::UniformStandardized:
                // density 1/(2 sqrt 3) on [-sqrt3, sqrt3]: 2 * (sqrt3)^4/4 / (2 sqrt3)
                return 3.0 * std::numbers::sqrt3 / 4.0;
            case InnovationFamily::StudentTStandardized:
                // (df-2)^{3/2} Gamma((df-3)/2) / (sqrt(pi) Gamma(df/2))
                return std::exp(1.5 * std::log(df - 2.0) + std::lgamma((df - 3.0) / 2.0) -
                                std::lgamma(0.5) - std::lgamma(df / 2.0));
        }
        return 0.0;
    }
};

} // namespace panelar

#endif // PANELAR_INNOVATIONS_HPP
