#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace weaver {

/// Operations that can partially degrade (e.g. drop a trailing group) report
/// it here instead of failing; callers pass nullptr to ignore.
using Warnings = std::vector<std::string>;

/// Sampled signal: strictly increasing time coordinates with one value each.
/// Time and value units are caller-defined (hours and Mbps in the bundled data).
struct TimeSeries {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const { return x.size(); }
    double x_first() const { return x.front(); }
    double x_last() const { return x.back(); }
    double span() const { return x.back() - x.front(); }
};

/// Throws ValidationError (with the offending index) unless `ts` satisfies the
/// TimeSeries invariants: equal lengths, >= 2 points, finite, strictly increasing x.
void check_valid(const TimeSeries& ts);

/// Builds a checked TimeSeries from raw coordinate vectors.
TimeSeries validate(std::vector<double> x, std::vector<double> y);

/// Relative tolerance for grids constructed in floating point.
inline constexpr double kUniformSpacingTol = 1e-9;

bool is_uniform(const TimeSeries& ts, double rel_tol = kUniformSpacingTol);

/// Grid step of a uniformly spaced series; throws ValidationError otherwise.
double uniform_step(const TimeSeries& ts, double rel_tol = kUniformSpacingTol);

/// Integral of the piecewise-linear interpolant of `ts` over [a, b].
/// Bounds may fall inside a sample interval; they must stay within the domain.
double trapezoid_integral(const TimeSeries& ts, double a, double b);

/// Groups `n` consecutive intervals of a uniform series and replaces each group
/// with its mean value (trapezoid integral over the group divided by its span).
/// Output x is the group start. A trailing partial group is dropped with a
/// warning. The result may have a single point and is not re-validated.
TimeSeries average(const TimeSeries& ts, int n, Warnings* warnings = nullptr);

}  // namespace weaver
