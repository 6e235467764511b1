#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <panelar/csv.hpp>
#include <panelar/errors.hpp>
#include <panelar/estimate.hpp>
#include <panelar/io_util.hpp>
#include <panelar/limits.hpp>
#include <panelar/panel.hpp>
#include <panelar/stats.hpp>

using namespace panelar;

namespace {

std::string temp_path(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "panelar_tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

// Manual panel with explicit series and optional innovations; rho_used unset.
PanelData manual_panel(std::int64_t n, std::int64_t t_len, const std::vector<double>& y,
                       const std::vector<double>& eps = {}) {
    PanelData p;
    p.n = n;
    p.t_len = t_len;
    p.y = y;
    p.eps = eps;
    return p;
}

}  // namespace

// ---------------------------------------------------------------- simulation

TEST_CASE("zero coefficient collapses the recursion to the innovations") {
    const PanelData p = simulate_panel(RegimeSpec::stationary(0.0), InnovationSpec::standard_normal(),
                                       4, 20, 99, /*keep_innovations=*/true);
    for (std::int64_t i = 0; i < p.n; ++i) {
        CHECK(p.at(i, 0) == 0.0);
        for (std::int64_t t = 1; t <= p.t_len; ++t) CHECK(p.at(i, t) == p.eps_at(i, t));
    }
}

TEST_CASE("rademacher random walk has unit increments") {
    const PanelData p = simulate_panel(RegimeSpec::unit_root(), InnovationSpec::rademacher(), 1, 3, 7);
    for (std::int64_t t = 1; t <= p.t_len; ++t)
        CHECK(std::fabs(p.at(0, t) - p.at(0, t - 1)) == 1.0);
}

TEST_CASE("unit-root terminal variance matches the walk scaling") {
    const std::int64_t n = 500, t_len = 200;
    const PanelData p = simulate_panel(RegimeSpec::unit_root(), InnovationSpec::standard_normal(),
                                       n, t_len, 20260814);
    std::vector<double> endpoints(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        endpoints[static_cast<std::size_t>(i)] = p.at(i, t_len) / std::sqrt(static_cast<double>(t_len));
    const double v = sample_variance(endpoints);
    CHECK(v > 0.8);
    CHECK(v < 1.25);
}

TEST_CASE("simulation is bit-identical across worker counts") {
    const auto one = simulate_panel(RegimeSpec::local_to_unity(1.0), InnovationSpec::student_t(5.0),
                                    7, 40, 11, true, /*workers=*/1);
    const auto three = simulate_panel(RegimeSpec::local_to_unity(1.0), InnovationSpec::student_t(5.0),
                                      7, 40, 11, true, /*workers=*/3);
    CHECK(one.y == three.y);
    CHECK(one.eps == three.eps);
    CHECK(one.rho_used == three.rho_used);
}

TEST_CASE("recursion exactness: y rebuilds bit-for-bit from eps") {
    const PanelData p = simulate_panel(RegimeSpec::explosive(1.3), InnovationSpec::uniform(),
                                       3, 30, 5, true);
    REQUIRE(p.rho_used.has_value());
    const double rho = *p.rho_used;
    for (std::int64_t i = 0; i < p.n; ++i) {
        double prev = 0.0;
        for (std::int64_t t = 1; t <= p.t_len; ++t) {
            const double cur = rho * prev + p.eps_at(i, t);
            CHECK(cur == p.at(i, t));
            prev = cur;
        }
    }
}

TEST_CASE("simulation rejects degenerate shapes") {
    CHECK_THROWS_AS(simulate_panel(RegimeSpec::unit_root(), InnovationSpec::standard_normal(), 1, 1, 0),
                    InvalidParameter);
    CHECK_THROWS_AS(simulate_panel(RegimeSpec::unit_root(), InnovationSpec::standard_normal(), 0, 10, 0),
                    InvalidParameter);
}

// ---------------------------------------------------------------- pooled LSE

TEST_CASE("exhaustive rademacher N=1 T=2: estimator error is uniform on {-1,+1}") {
    // Under a unit root the error rho_hat - 1 equals eps2/eps1.
    std::map<double, int> counts;
    for (const double e1 : {-1.0, 1.0}) {
        for (const double e2 : {-1.0, 1.0}) {
            PanelData p = manual_panel(1, 2, {0.0, e1, e1 + e2}, {e1, e2});
            p.rho_used = 1.0;
            const LseResult r = lse(p);
            CHECK(r.rho_hat - 1.0 == e2 / e1);
            counts[r.rho_hat - 1.0] += 1;
        }
    }
    REQUIRE(counts.size() == 2);
    CHECK(counts.at(-1.0) == 2);
    CHECK(counts.at(1.0) == 2);
}

TEST_CASE("T=1 panel has a zero denominator") {
    const PanelData p = manual_panel(1, 1, {0.0, 1.5});
    CHECK_THROWS_AS(lse(p), ZeroDenominator);
}

TEST_CASE("pooled LSE is consistent in the stationary regime") {
    const std::int64_t reps = 500;
    double sum = 0.0;
    for (std::int64_t j = 0; j < reps; ++j) {
        const PanelData p = simulate_panel(RegimeSpec::stationary(0.5), InnovationSpec::standard_normal(),
                                           200, 200, mix_seed(31, static_cast<std::uint64_t>(j)));
        sum += lse(p).rho_hat;
    }
    CHECK(std::fabs(sum / static_cast<double>(reps) - 0.5) < 0.01);
}

TEST_CASE("scale equivariance: doubling y and eps leaves rho_hat bit-identical") {
    PanelData p = simulate_panel(RegimeSpec::stationary(0.7), InnovationSpec::standard_normal(),
                                 5, 50, 77, true);
    const LseResult base = lse(p);
    PanelData scaled = p;
    for (double& v : scaled.y) v *= 2.0;
    for (double& v : scaled.eps) v *= 2.0;
    const LseResult twice = lse(scaled);
    CHECK(twice.rho_hat == base.rho_hat);
}

TEST_CASE("per-section sums reassemble the pooled quantities") {
    const PanelData p = simulate_panel(RegimeSpec::unit_root(), InnovationSpec::standard_normal(),
                                       9, 60, 13, true);
    const LseResult r = lse(p);
    CHECK(pairwise_sum(r.per_section_den) == r.denominator);
    CHECK(r.rho_hat == r.numerator / r.denominator);
    CHECK(r.innovations_used);
    // numerator - rho_true * denominator = sum of per-section innovation sums.
    const double lhs = r.numerator - *p.rho_used * r.denominator;
    const double rhs = pairwise_sum(r.per_section_num);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("residual mode kicks in when innovations are absent") {
    PanelData p = simulate_panel(RegimeSpec::stationary(0.5), InnovationSpec::standard_normal(),
                                 4, 80, 3, true);
    PanelData blind = p;
    blind.eps.clear();
    const LseResult with_eps = lse(p);
    const LseResult without = lse(blind);
    CHECK_FALSE(without.innovations_used);
    CHECK(without.rho_hat == with_eps.rho_hat);
    // Residual-based per-section numerators satisfy the same identity with rho_hat.
    const double lhs = without.numerator - without.rho_hat * without.denominator;
    CHECK(lhs == doctest::Approx(pairwise_sum(without.per_section_num)).epsilon(1e-8));
}

// ------------------------------------------------------- cross-section stats

TEST_CASE("standardization constants: exact and asymptotic") {
    const PanelData p = simulate_panel(RegimeSpec::unit_root(), InnovationSpec::standard_normal(),
                                       6, 10, 21, true);
    const LimitLaw law = limit_law(RegimeSpec::unit_root(), 6, 10);
    const CrossSectionStats exact = cross_section_stats(p, law, Standardization::ExactFiniteT);
    CHECK(exact.var_a_used == doctest::Approx(0.45).epsilon(1e-14));
    CHECK(exact.mean_b_used == doctest::Approx(0.45).epsilon(1e-14));
    const CrossSectionStats asym = cross_section_stats(p, law, Standardization::Asymptotic);
    CHECK(asym.var_a_used == doctest::Approx(0.5));
    CHECK(asym.mean_b_used == doctest::Approx(0.5));
    CHECK(asym.a == exact.a);  // standardization does not touch the raw sections
    CHECK(asym.b == exact.b);
}

TEST_CASE("composite identity holds in every regime") {
    const RegimeSpec specs[] = {RegimeSpec::stationary(0.5),          RegimeSpec::unit_root(),
                                RegimeSpec::local_to_unity(1.0),      RegimeSpec::mildly_integrated(1.0, 0.5),
                                RegimeSpec::mildly_explosive(-1.0, 0.5), RegimeSpec::explosive(1.2)};
    const std::int64_t n = 20, t_len = 60;
    for (const RegimeSpec& spec : specs) {
        CAPTURE(regime_name(spec.kind));
        const PanelData p = simulate_panel(spec, InnovationSpec::standard_normal(), n, t_len, 2024, true);
        const LimitLaw law = limit_law(spec, n, t_len);
        const LseResult r = lse(p);
        // Cancellation-free target: rate * (sum of innovation sums) / denominator.
        const double target = law.rate * pairwise_sum(r.per_section_num) / r.denominator;
        for (const Standardization s : {Standardization::ExactFiniteT, Standardization::Asymptotic}) {
            const CrossSectionStats cs = cross_section_stats(p, law, s);
            CHECK(cs.composite_scaled_error() == doctest::Approx(target).epsilon(1e-9));
        }
    }
}

TEST_CASE("cross-section stats guardrails") {
    PanelData p = simulate_panel(RegimeSpec::unit_root(), InnovationSpec::standard_normal(), 4, 12, 8, true);
    const LimitLaw law = limit_law(RegimeSpec::unit_root(), 4, 12);
    PanelData blind = p;
    blind.eps.clear();
    CHECK_THROWS_AS(cross_section_stats(blind, law, Standardization::ExactFiniteT), MissingInnovations);
    // Residual mode accepted: the recorded coefficient feeds the exact moments.
    CHECK_NOTHROW(cross_section_stats(blind, law, Standardization::ExactFiniteT, true));
    blind.rho_used.reset();
    // Fully blind exact standardization has no coefficient to plug in.
    CHECK_THROWS_AS(cross_section_stats(blind, law, Standardization::ExactFiniteT, true),
                    MissingParameters);
    CHECK_NOTHROW(cross_section_stats(blind, law, Standardization::Asymptotic, true));
}

TEST_CASE("explosive sections use the rescaled kernel and stay finite") {
    // T large enough that raw sums overflow double (1.5^600 ~ 1e105 squared ~ 1e211 per term).
    const std::int64_t n = 8, t_len = 600;
    const PanelData p = simulate_panel(RegimeSpec::explosive(1.5), InnovationSpec::standard_normal(),
                                       n, t_len, 17, true);
    const LimitLaw law = limit_law(RegimeSpec::explosive(1.5), n, t_len);
    const CrossSectionStats cs = cross_section_stats(p, law, Standardization::Asymptotic);
    for (const double a : cs.a) CHECK(std::isfinite(a));
    for (const double b : cs.b) CHECK(std::isfinite(b));
    CHECK(std::isfinite(cs.composite_scaled_error()));
}

// -------------------------------------------------------------- u/v diagnostics

TEST_CASE("hand-checked explosive section: rho=2, T=3, eps=(1,1,1)") {
    PanelData p = manual_panel(1, 3, {0.0, 1.0, 3.0, 7.0}, {1.0, 1.0, 1.0});
    p.rho_used = 2.0;
    const auto sums = detail::explosive_scaled_sums(p.eps.data(), 3, 0.5);
    CHECK(sums.u == 1.5);
    CHECK(sums.v == 1.75);
    CHECK(sums.scaled_num == 2.0);   // 0.5 * (y0 e1 + y1 e2 + y2 e3) = 0.5 * 4
    CHECK(sums.scaled_den == 2.5);   // 0.25 * (0 + 1 + 9)
    const ExplosiveUvStats uv = explosive_uv_stats(p);
    CHECK(uv.mean_uv == 1.5 * 1.75);
    CHECK(uv.mean_u2 == 2.25);
    CHECK(uv.num_residual == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(uv.den_residual == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("explosive u second moment approaches its geometric limit") {
    const PanelData p = simulate_panel(RegimeSpec::explosive(2.0), InnovationSpec::standard_normal(),
                                       1000, 50, 12, true);
    const ExplosiveUvStats uv = explosive_uv_stats(p);
    CHECK(std::fabs(uv.mean_u2 - 4.0 / 3.0) < 0.02);  // 1/(1-beta^2) at beta=1/2
    CHECK(std::fabs(uv.mean_uv) < 0.2);               // mean-zero product
}

TEST_CASE("numerator approximation residual vanishes; denominator gap does not") {
    const PanelData p = simulate_panel(RegimeSpec::explosive(1.5), InnovationSpec::standard_normal(),
                                       1000, 60, 14, true);
    const ExplosiveUvStats uv = explosive_uv_stats(p);
    CHECK(uv.num_residual < 0.01);
    // The scaled denominator mean sits near 1/(1-b^2)^2 while E[u^2] is 1/(1-b^2);
    // their gap concentrates at b^2/(1-b^2)^2 = 1.44 for rho = 1.5 and does not vanish.
    CHECK(uv.den_residual == doctest::Approx(1.44).epsilon(0.15));
}

TEST_CASE("u/v diagnostics guardrails") {
    PanelData p = simulate_panel(RegimeSpec::unit_root(), InnovationSpec::standard_normal(), 3, 10, 4, true);
    CHECK_THROWS_AS(explosive_uv_stats(p), WrongRegime);
    PanelData q = simulate_panel(RegimeSpec::explosive(1.5), InnovationSpec::standard_normal(), 3, 10, 4, false);
    CHECK_THROWS_AS(explosive_uv_stats(q), MissingInnovations);
    PanelData r = simulate_panel(RegimeSpec::explosive(1.5), InnovationSpec::standard_normal(), 3, 10, 4, true);
    r.rho_used.reset();
    CHECK_THROWS_AS(explosive_uv_stats(r), WrongRegime);
}

// ---------------------------------------------------------------- CSV ingest

TEST_CASE("long csv: direct parse") {
    const std::string path = temp_path("long_basic.csv");
    write_file_atomic(path, "i,t,y\n1,0,0\n1,1,0.5\n1,2,1.0\n");
    const PanelData p = ingest_panel(path, PanelCsvFormat::LongCsv);
    CHECK(p.n == 1);
    CHECK(p.t_len == 2);
    CHECK(p.at(0, 0) == 0.0);
    CHECK(p.at(0, 1) == 0.5);
    CHECK(p.at(0, 2) == 1.0);
    CHECK_FALSE(p.has_innovations());
    CHECK_FALSE(p.rho_used.has_value());
    CHECK(p.warnings.empty());
}

TEST_CASE("wide csv: two rows of four values") {
    const std::string path = temp_path("wide_basic.csv");
    write_file_atomic(path, "0,1,2,3\n0,-1,-2,-3\n");
    const PanelData p = ingest_panel(path, PanelCsvFormat::WideCsv);
    CHECK(p.n == 2);
    CHECK(p.t_len == 3);
    CHECK(p.at(1, 3) == -3.0);
}

TEST_CASE("long csv: gap in one section is rejected") {
    const std::string path = temp_path("long_gap.csv");
    write_file_atomic(path, "i,t,y\n1,0,0\n1,1,1\n1,2,2\n2,0,0\n2,2,2\n");
    CHECK_THROWS_AS(ingest_panel(path, PanelCsvFormat::LongCsv), UnbalancedPanel);
}

TEST_CASE("long csv: missing t=0 column is prepended with a warning") {
    const std::string path = temp_path("long_t1.csv");
    write_file_atomic(path, "1,1,0.25\n1,2,0.5\n2,1,-0.25\n2,2,-0.5\n");
    const PanelData p = ingest_panel(path, PanelCsvFormat::LongCsv);
    CHECK(p.n == 2);
    CHECK(p.t_len == 2);
    CHECK(p.at(0, 0) == 0.0);
    CHECK(p.at(1, 0) == 0.0);
    CHECK(p.at(0, 1) == 0.25);
    REQUIRE(p.warnings.size() == 1);
    CHECK(p.warnings[0].find("prepended") != std::string::npos);
}

TEST_CASE("csv rejections carry the offending line") {
    const std::string bad_field = temp_path("bad_field.csv");
    write_file_atomic(bad_field, "i,t,y\n1,0,0\n1,1,abc\n");
    CHECK_THROWS_WITH_AS(ingest_panel(bad_field, PanelCsvFormat::LongCsv),
                         doctest::Contains("line 3"), MalformedRow);

    const std::string dup = temp_path("dup.csv");
    write_file_atomic(dup, "1,0,0\n1,1,1\n1,1,2\n");
    CHECK_THROWS_AS(ingest_panel(dup, PanelCsvFormat::LongCsv), MalformedRow);

    const std::string two_fields = temp_path("two_fields.csv");
    write_file_atomic(two_fields, "1,0\n");
    CHECK_THROWS_AS(ingest_panel(two_fields, PanelCsvFormat::LongCsv), MalformedRow);

    const std::string noncontig = temp_path("noncontig.csv");
    write_file_atomic(noncontig, "1,0,0\n1,1,1\n3,0,0\n3,1,1\n");
    CHECK_THROWS_AS(ingest_panel(noncontig, PanelCsvFormat::LongCsv), UnbalancedPanel);

    const std::string nonzero = temp_path("nonzero.csv");
    write_file_atomic(nonzero, "1,0,0.1\n1,1,1\n");
    CHECK_THROWS_AS(ingest_panel(nonzero, PanelCsvFormat::LongCsv), NonzeroInitial);

    const std::string nonzero_wide = temp_path("nonzero_wide.csv");
    write_file_atomic(nonzero_wide, "0.5,1,2\n");
    CHECK_THROWS_AS(ingest_panel(nonzero_wide, PanelCsvFormat::WideCsv), NonzeroInitial);

    const std::string ragged = temp_path("ragged.csv");
    write_file_atomic(ragged, "0,1,2\n0,1\n");
    CHECK_THROWS_AS(ingest_panel(ragged, PanelCsvFormat::WideCsv), UnbalancedPanel);

    CHECK_THROWS_AS(ingest_panel(temp_path("does_not_exist.csv"), PanelCsvFormat::LongCsv), IoFailure);
}

TEST_CASE("csv round trips are bit-exact in both formats") {
    const PanelData p = simulate_panel(RegimeSpec::stationary(0.9), InnovationSpec::standard_normal(),
                                       5, 30, 123);
    for (const PanelCsvFormat fmt : {PanelCsvFormat::LongCsv, PanelCsvFormat::WideCsv}) {
        const std::string path = temp_path(fmt == PanelCsvFormat::LongCsv ? "rt_long.csv" : "rt_wide.csv");
        write_panel_csv(p, path, fmt);
        const PanelData back = ingest_panel(path, fmt);
        CHECK(back.n == p.n);
        CHECK(back.t_len == p.t_len);
        CHECK(back.y == p.y);
    }
}
