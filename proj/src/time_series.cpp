#include "weaver/time_series.hpp"

#include <algorithm>
#include <cmath>

#include "weaver/errors.hpp"

namespace weaver {

void check_valid(const TimeSeries& ts) {
    if (ts.x.size() != ts.y.size())
        throw ValidationError("series length mismatch: " + std::to_string(ts.x.size()) +
                              " x values vs " + std::to_string(ts.y.size()) + " y values");
    if (ts.x.size() < 2)
        throw ValidationError("series needs at least 2 points, got " + std::to_string(ts.x.size()));
    for (std::size_t i = 0; i < ts.x.size(); ++i) {
        if (!std::isfinite(ts.x[i]))
            throw ValidationError("non-finite x at index " + std::to_string(i));
        if (!std::isfinite(ts.y[i]))
            throw ValidationError("non-finite y at index " + std::to_string(i));
    }
    for (std::size_t i = 1; i < ts.x.size(); ++i) {
        if (!(ts.x[i] > ts.x[i - 1]))
            throw ValidationError("x not strictly increasing at index " + std::to_string(i));
    }
}

TimeSeries validate(std::vector<double> x, std::vector<double> y) {
    TimeSeries ts{std::move(x), std::move(y)};
    check_valid(ts);
    return ts;
}

namespace {

// Returns the common step, or a negative value if the grid is not uniform.
double probe_step(const TimeSeries& ts, double rel_tol) {
    const double step = ts.span() / static_cast<double>(ts.size() - 1);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const double gap = ts.x[i] - ts.x[i - 1];
        if (std::abs(gap - step) > rel_tol * std::max(std::abs(gap), std::abs(step)))
            return -static_cast<double>(i);  // encodes the offending index
    }
    return step;
}

}  // namespace

bool is_uniform(const TimeSeries& ts, double rel_tol) {
    check_valid(ts);
    return probe_step(ts, rel_tol) > 0.0;
}

double uniform_step(const TimeSeries& ts, double rel_tol) {
    check_valid(ts);
    const double step = probe_step(ts, rel_tol);
    if (step <= 0.0)
        throw ValidationError("non-uniform spacing at index " +
                              std::to_string(static_cast<std::size_t>(-step)));
    return step;
}

double trapezoid_integral(const TimeSeries& ts, double a, double b) {
    check_valid(ts);
    const double tol = kUniformSpacingTol * std::max(ts.span(), 1.0);
    if (a < ts.x_first() - tol || b > ts.x_last() + tol)
        throw ValidationError("integration bounds [" + std::to_string(a) + ", " +
                              std::to_string(b) + "] outside domain [" +
                              std::to_string(ts.x_first()) + ", " + std::to_string(ts.x_last()) + "]");
    if (!(a < b))
        throw ValidationError("integration bounds must satisfy a < b");
    a = std::max(a, ts.x_first());
    b = std::min(b, ts.x_last());

    const auto& x = ts.x;
    const auto& y = ts.y;
    auto lerp = [&](std::size_t seg, double xq) {
        const double t = (xq - x[seg]) / (x[seg + 1] - x[seg]);
        return y[seg] + t * (y[seg + 1] - y[seg]);
    };

    // segment containing a: x[seg] <= a < x[seg+1]
    std::size_t seg = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), a) - x.begin());
    seg = (seg == 0) ? 0 : seg - 1;
    seg = std::min(seg, ts.size() - 2);

    double acc = 0.0;
    double xa = a;
    double ya = lerp(seg, a);
    while (x[seg + 1] < b) {
        acc += 0.5 * (ya + y[seg + 1]) * (x[seg + 1] - xa);
        xa = x[seg + 1];
        ya = y[seg + 1];
        ++seg;
    }
    acc += 0.5 * (ya + lerp(seg, b)) * (b - xa);
    return acc;
}

TimeSeries average(const TimeSeries& ts, int n, Warnings* warnings) {
    check_valid(ts);
    if (n < 1)
        throw ValidationError("averaging group size must be >= 1, got " + std::to_string(n));
    uniform_step(ts);  // throws on irregular grids

    const std::size_t stride = static_cast<std::size_t>(n);
    const std::size_t groups = (ts.size() - 1) / stride;
    if (groups == 0)
        throw ValidationError("series has " + std::to_string(ts.size() - 1) +
                              " intervals, fewer than one group of " + std::to_string(n));
    const std::size_t leftover = (ts.size() - 1) % stride;
    if (leftover != 0 && warnings)
        warnings->push_back("average: dropped trailing partial group of " +
                            std::to_string(leftover) + " interval(s)");

    TimeSeries out;
    out.x.reserve(groups);
    out.y.reserve(groups);
    for (std::size_t k = 0; k < groups; ++k) {
        // trapezoid mean over the group; the uniform step cancels exactly
        double sum = 0.0;
        for (std::size_t j = k * stride; j < (k + 1) * stride; ++j)
            sum += ts.y[j] + ts.y[j + 1];
        out.x.push_back(ts.x[k * stride]);
        out.y.push_back(sum / (2.0 * static_cast<double>(n)));
    }
    return out;
}

}  // namespace weaver
