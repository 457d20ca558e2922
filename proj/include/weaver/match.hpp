#pragma once

#include "weaver/time_series.hpp"

namespace weaver {

/// Reference for integral matching: the coarse series whose left-constant
/// integral is imposed on the fine signal, interval by interval.
struct MatchSpec {
    double kappa = 3.0;    // exponential distance-weight decay, > 0
    TimeSeries reference;  // knots must lie on the fine series' grid
};

/// Rescales `fine` so that over every reference interval [X_i, X_{i+1}] its
/// trapezoid integral equals Y_i * (X_{i+1} - X_i). Samples move as
/// y_j * (1 + a * w_j) with w_j = exp(-kappa * |x_j - center| / half_width)
/// and `a` solved in closed form per interval; a knot shared by two intervals
/// is adjusted by the left interval only. Zero-signal intervals fall back to
/// an additive correction. Emits a warning when a solved factor crosses zero.
TimeSeries integral_match(const TimeSeries& fine, const MatchSpec& spec,
                          Warnings* warnings = nullptr);

}  // namespace weaver
