#pragma once

#include <string>
#include <vector>

#include "weaver/time_series.hpp"

namespace weaver {

enum class InterpolantKind {
    piecewise_constant_left,  // value of the knot on the left holds until the next knot
    piecewise_linear,
    natural_cubic,  // zero second derivative at both ends
};

InterpolantKind parse_interpolant_kind(const std::string& token);
std::string to_string(InterpolantKind kind);

/// Second derivatives of the natural cubic interpolant at every knot
/// (tridiagonal solve; the two end values are zero).
std::vector<double> natural_cubic_second_derivatives(const TimeSeries& ts);

/// Evaluable function built from a series. Defined on [x_first, x_last] only;
/// evaluation at a knot returns the stored value exactly for every kind.
class Interpolant {
public:
    Interpolant(TimeSeries knots, InterpolantKind kind);

    double operator()(double x) const;

    InterpolantKind kind() const { return kind_; }
    const TimeSeries& knots() const { return knots_; }
    double domain_begin() const { return knots_.x_first(); }
    double domain_end() const { return knots_.x_last(); }

private:
    TimeSeries knots_;
    InterpolantKind kind_;
    std::vector<double> second_derivs_;  // natural cubic only
};

Interpolant make_interpolant(TimeSeries ts, InterpolantKind kind);

}  // namespace weaver
