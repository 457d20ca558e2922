#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "weaver/errors.hpp"
#include "weaver/interpolant.hpp"

using namespace weaver;

TEST_CASE("kind tokens round-trip") {
    for (auto kind : {InterpolantKind::piecewise_constant_left, InterpolantKind::piecewise_linear,
                      InterpolantKind::natural_cubic})
        CHECK(parse_interpolant_kind(to_string(kind)) == kind);
    CHECK_THROWS_AS(parse_interpolant_kind("quintic"), ValidationError);
}

TEST_CASE("linear midpoint") {
    const auto f = make_interpolant(validate({0, 1}, {5, 7}), InterpolantKind::piecewise_linear);
    CHECK(f(0.5) == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("left-constant convention") {
    const auto f = make_interpolant(validate({0, 1, 2}, {0, 1, 0}),
                                    InterpolantKind::piecewise_constant_left);
    CHECK(f(1.5) == 1.0);
    CHECK(f(0.25) == 0.0);
    CHECK(f(2.0) == 0.0);  // last knot keeps its own value
}

TEST_CASE("natural cubic reproduces a constant") {
    const auto f = make_interpolant(validate({0, 1, 2}, {1, 1, 1}), InterpolantKind::natural_cubic);
    CHECK(f(0.3) == 1.0);
}

TEST_CASE("every kind is exact at the knots") {
    const auto ts = validate({0.0, 0.7, 1.9, 3.1, 4.0}, {2.5, -1.25, 0.375, 7.0, 3.5});
    for (auto kind : {InterpolantKind::piecewise_constant_left, InterpolantKind::piecewise_linear,
                      InterpolantKind::natural_cubic}) {
        const auto f = make_interpolant(ts, kind);
        for (std::size_t i = 0; i < ts.size(); ++i)
            CHECK(f(ts.x[i]) == ts.y[i]);
    }
}

TEST_CASE("evaluation outside the domain is an error") {
    const auto f = make_interpolant(validate({0, 1}, {0, 1}), InterpolantKind::piecewise_linear);
    CHECK_THROWS_AS(f(-0.01), ValidationError);
    CHECK_THROWS_AS(f(1.01), ValidationError);
}

// Frozen against an independent natural-spline implementation.
TEST_CASE("natural cubic reference values") {
    const auto f = make_interpolant(validate({0, 1, 2, 3}, {0, 1, 4, 5}),
                                    InterpolantKind::natural_cubic);
    CHECK(f(0.5) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(f(1.5) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(f(2.25) == doctest::Approx(4.46875).epsilon(1e-12));
}

TEST_CASE("natural cubic reproduces affine data") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> x, y;
    double xc = -3.0;
    for (int i = 0; i < 15; ++i) {
        x.push_back(xc);
        y.push_back(2.0 * xc + 1.0);
        xc += 0.2 + uni(rng);
    }
    const auto ts = validate(x, y);
    const auto f = make_interpolant(ts, InterpolantKind::natural_cubic);
    for (int rep = 0; rep < 100; ++rep) {
        const double xq = ts.x_first() + uni(rng) * ts.span();
        const double want = 2.0 * xq + 1.0;
        CHECK(std::abs(f(xq) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("two-point natural cubic degenerates to the chord") {
    const auto f = make_interpolant(validate({0, 2}, {1, 5}), InterpolantKind::natural_cubic);
    CHECK(f(0.5) == doctest::Approx(2.0).epsilon(1e-12));
}
