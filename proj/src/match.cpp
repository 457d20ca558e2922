#include "weaver/match.hpp"

#include <algorithm>
#include <cmath>

#include "weaver/errors.hpp"

namespace weaver {

namespace {

// Index of the fine sample coinciding with coordinate xr, or throws.
std::size_t locate_knot(const std::vector<double>& x, double xr, double tol) {
    const auto it = std::lower_bound(x.begin(), x.end(), xr - tol);
    if (it == x.end() || std::abs(*it - xr) > tol)
        throw ValidationError("integral_match: reference knot " + std::to_string(xr) +
                              " is not on the fine grid");
    return static_cast<std::size_t>(it - x.begin());
}

}  // namespace

TimeSeries integral_match(const TimeSeries& fine, const MatchSpec& spec, Warnings* warnings) {
    check_valid(fine);
    check_valid(spec.reference);
    if (!(spec.kappa > 0.0) || !std::isfinite(spec.kappa))
        throw ValidationError("integral_match: kappa must be positive, got " +
                              std::to_string(spec.kappa));

    const auto& ref = spec.reference;
    const double tol = kUniformSpacingTol * std::max(1.0, fine.span());
    if (std::abs(fine.x_first() - ref.x_first()) > tol ||
        std::abs(fine.x_last() - ref.x_last()) > tol)
        throw ValidationError("integral_match: fine series spans [" +
                              std::to_string(fine.x_first()) + ", " +
                              std::to_string(fine.x_last()) + "] but the reference spans [" +
                              std::to_string(ref.x_first()) + ", " +
                              std::to_string(ref.x_last()) + "]");

    std::vector<std::size_t> knot(ref.size());
    for (std::size_t r = 0; r < ref.size(); ++r) knot[r] = locate_knot(fine.x, ref.x[r], tol);
    for (std::size_t r = 0; r + 1 < ref.size(); ++r)
        if (knot[r + 1] < knot[r] + 1)
            throw ValidationError("integral_match: reference interval " + std::to_string(r) +
                                  " contains fewer than 2 fine samples");

    TimeSeries out = fine;
    auto& y = out.y;
    const auto& x = out.x;

    for (std::size_t r = 0; r + 1 < ref.size(); ++r) {
        const std::size_t j0 = knot[r];
        const std::size_t j1 = knot[r + 1];
        const double width = ref.x[r + 1] - ref.x[r];
        const double center = 0.5 * (ref.x[r] + ref.x[r + 1]);
        const double half = 0.5 * width;
        const double target = ref.y[r] * width;

        // trapezoid weights of the integral over this interval alone
        auto trap_weight = [&](std::size_t j) {
            if (j == j0) return 0.5 * (x[j0 + 1] - x[j0]);
            if (j == j1) return 0.5 * (x[j1] - x[j1 - 1]);
            return 0.5 * (x[j + 1] - x[j - 1]);
        };
        auto dist_weight = [&](std::size_t j) {
            return std::exp(-spec.kappa * std::abs(x[j] - center) / half);
        };

        double current = 0.0;
        for (std::size_t j = j0; j <= j1; ++j) current += trap_weight(j) * y[j];
        const double deficit = target - current;

        // the left endpoint belongs to the previous interval and stays fixed
        const std::size_t owned = (r == 0) ? j0 : j0 + 1;

        double denom_mult = 0.0, denom_scale = 0.0, denom_add = 0.0;
        for (std::size_t j = owned; j <= j1; ++j) {
            const double tw = trap_weight(j);
            const double dw = dist_weight(j);
            denom_mult += tw * y[j] * dw;
            denom_scale += tw * std::abs(y[j]) * dw;
            denom_add += tw * dw;
        }

        if (std::abs(denom_mult) > 1e-9 * denom_scale && denom_mult != 0.0) {
            const double a = deficit / denom_mult;
            if (a <= -1.0 && warnings)
                warnings->push_back("integral_match: adjustment factor crosses zero in interval " +
                                    std::to_string(r) + " (a = " + std::to_string(a) + ")");
            for (std::size_t j = owned; j <= j1; ++j) y[j] *= 1.0 + a * dist_weight(j);
        } else if (denom_add > 0.0) {
            const double b = deficit / denom_add;
            for (std::size_t j = owned; j <= j1; ++j) y[j] += b * dist_weight(j);
        } else {
            throw NumericError("integral_match: degenerate interval " + std::to_string(r) +
                               " admits no correction");
        }
    }
    return out;
}

}  // namespace weaver
