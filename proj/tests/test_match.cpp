#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "weaver/errors.hpp"
#include "weaver/match.hpp"
#include "weaver/oversample.hpp"

using namespace weaver;

namespace {

// relative mismatch of the matched integral over every reference interval
double worst_interval_error(const TimeSeries& matched, const TimeSeries& ref) {
    double worst = 0.0;
    for (std::size_t r = 0; r + 1 < ref.size(); ++r) {
        const double width = ref.x[r + 1] - ref.x[r];
        const double want = ref.y[r] * width;
        const double got = trapezoid_integral(matched, ref.x[r], ref.x[r + 1]);
        worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
    }
    return worst;
}

}  // namespace

TEST_CASE("zero deficit leaves the series unchanged") {
    // a jump-free step signal has exactly the reference integral in every interval
    const auto ref = validate({0, 1, 2}, {4, 4, 4});
    const auto fine = oversample(ref, {.n = 8, .strategy = OversampleStrategy::piecewise_constant});
    const auto matched = integral_match(fine, {.kappa = 3.0, .reference = ref});
    for (std::size_t j = 0; j < fine.size(); ++j)
        CHECK(matched.y[j] == doctest::Approx(fine.y[j]).epsilon(1e-13));
}

TEST_CASE("intervals with zero deficit keep their samples while others adjust") {
    const auto ref = validate({0, 1, 2}, {4, 8, 8});
    const auto fine = oversample(ref, {.n = 8, .strategy = OversampleStrategy::piecewise_constant});
    const auto matched = integral_match(fine, {.kappa = 3.0, .reference = ref});
    // the jump at x=1 turns into a ramp under the trapezoid rule, so [0,1] adjusts
    CHECK(trapezoid_integral(fine, 0, 1) > 4.0);
    CHECK(trapezoid_integral(matched, 0, 1) == doctest::Approx(4.0).epsilon(1e-12));
    // the shared knot at x=1 belongs to the left interval; [1,2] compensates
    // for the moved endpoint and keeps its own integral exact
    CHECK(matched.y[8] < 8.0);
    CHECK(trapezoid_integral(matched, 1, 2) == doctest::Approx(8.0).epsilon(1e-12));
    // the compensation stays a small perturbation of the level
    CHECK(matched.y[12] == doctest::Approx(8.0).epsilon(5e-3));
}

TEST_CASE("cubic-spline oversample gets matched to the reference levels") {
    const auto ref = validate({0, 1, 2}, {4, 8, 6});
    const auto fine = oversample(ref, {.n = 50, .strategy = OversampleStrategy::cubic_spline});
    const auto matched = integral_match(fine, {.kappa = 3.0, .reference = ref});
    CHECK(trapezoid_integral(matched, 0, 1) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(trapezoid_integral(matched, 1, 2) == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("all-zero signal takes the additive path") {
    std::vector<double> x, y;
    for (int i = 0; i <= 10; ++i) {
        x.push_back(i / 10.0);
        y.push_back(0.0);
    }
    const auto fine = validate(x, y);
    const auto ref = validate({0, 1}, {2, 2});
    const auto matched = integral_match(fine, {.kappa = 3.0, .reference = ref});
    CHECK(trapezoid_integral(matched, 0, 1) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("sign-crossing adjustments emit a warning but stay exact") {
    // fine signal far above the tiny reference level forces a <= -1
    std::vector<double> x, y;
    for (int i = 0; i <= 20; ++i) {
        x.push_back(i / 20.0);
        y.push_back(10.0);
    }
    const auto fine = validate(x, y);
    const auto ref = validate({0, 1}, {0.01, 0.01});
    Warnings warnings;
    const auto matched = integral_match(fine, {.kappa = 3.0, .reference = ref}, &warnings);
    CHECK(trapezoid_integral(matched, 0, 1) == doctest::Approx(0.01).epsilon(1e-9));
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("crosses zero") != std::string::npos);
}

TEST_CASE("weights are largest near the interval center") {
    const auto ref = validate({0, 1}, {6, 6});
    std::vector<double> x, y;
    for (int i = 0; i <= 16; ++i) {
        x.push_back(i / 16.0);
        y.push_back(2.0);
    }
    const auto fine = validate(x, y);
    const auto matched = integral_match(fine, {.kappa = 3.0, .reference = ref});
    // constant input scaled up: the lift decays monotonically from the center
    const auto lift = [&](std::size_t j) { return matched.y[j] - fine.y[j]; };
    for (std::size_t j = 0; j < 8; ++j) CHECK(lift(j) < lift(j + 1));
    for (std::size_t j = 8; j < 16; ++j) CHECK(lift(j) > lift(j + 1));
    // symmetry about the center
    for (std::size_t j = 0; j <= 16; ++j)
        CHECK(lift(j) == doctest::Approx(lift(16 - j)).epsilon(1e-12));
}

TEST_CASE("validation errors") {
    const auto ref = validate({0, 1, 2}, {1, 1, 1});
    const auto fine = oversample(ref, {.n = 4, .strategy = OversampleStrategy::piecewise_constant});
    CHECK_THROWS_AS(integral_match(fine, {.kappa = 0.0, .reference = ref}), ValidationError);
    // reference knot off the fine grid
    const auto bad_ref = validate({0, 0.9, 2}, {1, 1, 1});
    CHECK_THROWS_AS(integral_match(fine, {.kappa = 3.0, .reference = bad_ref}), ValidationError);
    // mismatched domain
    const auto short_ref = validate({0, 1}, {1, 1});
    CHECK_THROWS_AS(integral_match(fine, {.kappa = 3.0, .reference = short_ref}), ValidationError);
}

TEST_CASE("randomized integral matching is exact and idempotent") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> val(0.1, 10.0);
    const std::vector<OversampleStrategy> strategies = {
        OversampleStrategy::piecewise_constant, OversampleStrategy::cubic_spline,
        OversampleStrategy::linear_fixed,       OversampleStrategy::exp_fixed,
        OversampleStrategy::linear_adaptive,    OversampleStrategy::exp_adaptive,
    };
    const int ns[] = {2, 7, 60, 200};
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t m = 3 + rng() % 10;
        std::vector<double> x(m), y(m);
        for (std::size_t i = 0; i < m; ++i) {
            x[i] = static_cast<double>(i);
            y[i] = val(rng);
        }
        const auto ref = validate(x, y);
        const auto strategy = strategies[rep % strategies.size()];
        const int n = ns[rep % 4];
        const auto fine = oversample(ref, {.n = n, .strategy = strategy});
        const MatchSpec spec{.kappa = 3.0, .reference = ref};
        const auto matched = integral_match(fine, spec);
        CHECK(worst_interval_error(matched, ref) <= 1e-9);
        // idempotence
        const auto twice = integral_match(matched, spec);
        for (std::size_t j = 0; j < matched.size(); ++j)
            CHECK(std::abs(twice.y[j] - matched.y[j]) <=
                  1e-9 * std::max(1.0, std::abs(matched.y[j])));
    }
}
