#include "weaver/oversample.hpp"

#include <algorithm>
#include <cmath>

#include "weaver/errors.hpp"
#include "weaver/interpolant.hpp"

namespace weaver {

OversampleStrategy parse_strategy(const std::string& token) {
    if (token == "piecewise_constant") return OversampleStrategy::piecewise_constant;
    if (token == "cubic_spline") return OversampleStrategy::cubic_spline;
    if (token == "linear_fixed") return OversampleStrategy::linear_fixed;
    if (token == "exp_fixed") return OversampleStrategy::exp_fixed;
    if (token == "linear_adaptive") return OversampleStrategy::linear_adaptive;
    if (token == "exp_adaptive") return OversampleStrategy::exp_adaptive;
    throw ValidationError("unknown oversample strategy '" + token + "'");
}

std::string to_string(OversampleStrategy strategy) {
    switch (strategy) {
        case OversampleStrategy::piecewise_constant: return "piecewise_constant";
        case OversampleStrategy::cubic_spline: return "cubic_spline";
        case OversampleStrategy::linear_fixed: return "linear_fixed";
        case OversampleStrategy::exp_fixed: return "exp_fixed";
        case OversampleStrategy::linear_adaptive: return "linear_adaptive";
        case OversampleStrategy::exp_adaptive: return "exp_adaptive";
    }
    throw ValidationError("unknown oversample strategy");
}

void check_spec(const OversampleSpec& spec) {
    if (spec.n < 2)
        throw ValidationError("oversample: n must be >= 2, got " + std::to_string(spec.n));
    if (!(spec.alpha > 0.0) || spec.alpha > 1.0)
        throw ValidationError("oversample: alpha must be in (0, 1], got " +
                              std::to_string(spec.alpha));
    if (!(spec.lambda >= 0.0) || spec.lambda > 1.0)
        throw ValidationError("oversample: lambda must be in [0, 1], got " +
                              std::to_string(spec.lambda));
    if (!(spec.gamma > 0.0) || !std::isfinite(spec.gamma))
        throw ValidationError("oversample: gamma must be positive, got " +
                              std::to_string(spec.gamma));
}

WindowAllocation allocate_windows(const TimeSeries& ts, double alpha) {
    check_valid(ts);
    if (!(alpha > 0.0) || alpha > 1.0)
        throw ValidationError("allocate_windows: alpha must be in (0, 1], got " +
                              std::to_string(alpha));
    const std::size_t m = ts.size();
    WindowAllocation out{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
    out.right[0] = alpha / 4.0;
    out.left[m - 1] = alpha / 4.0;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double dl = std::abs(ts.y[i] - ts.y[i - 1]);
        const double dr = std::abs(ts.y[i + 1] - ts.y[i]);
        if (dl + dr == 0.0) {
            out.left[i] = alpha / 4.0;
            out.right[i] = alpha / 4.0;
        } else {
            // opposite-side change: steeper right edge shrinks the right window
            out.left[i] = 0.5 * alpha * dr / (dl + dr);
            out.right[i] = 0.5 * alpha * dl / (dl + dr);
        }
    }
    return out;
}

double transition(double t, double y0, double y1, TransitionShape shape, double lambda,
                  double gamma) {
    if (!(t >= 0.0 && t <= 1.0))
        throw ValidationError("transition: t outside [0, 1], got " + std::to_string(t));
    if (t == 0.0) return y0;
    if (t == 1.0) return y1;
    double c = t;
    if (shape == TransitionShape::exp)
        c = lambda * t + (1.0 - lambda) * std::expm1(gamma * t) / std::expm1(gamma);
    return y0 + c * (y1 - y0);
}

TimeSeries oversample(const TimeSeries& ts, const OversampleSpec& spec) {
    check_valid(ts);
    check_spec(spec);
    const std::size_t m = ts.size();
    const std::size_t n = static_cast<std::size_t>(spec.n);

    TimeSeries out;
    out.x.reserve((m - 1) * n + 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double width = ts.x[i + 1] - ts.x[i];
        for (std::size_t j = 0; j < n; ++j)
            out.x.push_back(ts.x[i] + (static_cast<double>(j) / static_cast<double>(n)) * width);
    }
    out.x.push_back(ts.x.back());

    if (spec.strategy == OversampleStrategy::cubic_spline) {
        const Interpolant f(ts, InterpolantKind::natural_cubic);
        out.y.reserve(out.x.size());
        for (double xq : out.x) out.y.push_back(f(xq));
        return out;
    }

    // left-constant baseline shared by all remaining strategies
    out.y.reserve(out.x.size());
    for (std::size_t i = 0; i + 1 < m; ++i)
        out.y.insert(out.y.end(), n, ts.y[i]);
    out.y.push_back(ts.y.back());
    if (spec.strategy == OversampleStrategy::piecewise_constant) return out;

    const bool fixed = spec.strategy == OversampleStrategy::linear_fixed ||
                       spec.strategy == OversampleStrategy::exp_fixed;
    const TransitionShape shape = (spec.strategy == OversampleStrategy::linear_fixed ||
                                   spec.strategy == OversampleStrategy::linear_adaptive)
                                      ? TransitionShape::linear
                                      : TransitionShape::exp;
    WindowAllocation windows;
    if (fixed) {
        windows.left.assign(m, spec.alpha / 4.0);
        windows.right.assign(m, spec.alpha / 4.0);
    } else {
        windows = allocate_windows(ts, spec.alpha);
    }

    // Replace baseline samples inside each knot's window by the transition from
    // the previous level to the knot's level. The first knot has no previous
    // level; the last knot's window is one-sided and ends exactly at the knot.
    for (std::size_t i = 1; i < m; ++i) {
        const double lo = ts.x[i] - windows.left[i] * (ts.x[i] - ts.x[i - 1]);
        const double hi =
            (i + 1 < m) ? ts.x[i] + windows.right[i] * (ts.x[i + 1] - ts.x[i]) : ts.x[i];
        if (!(hi > lo)) continue;
        const auto first = std::lower_bound(out.x.begin(), out.x.end(), lo);
        const auto last = std::upper_bound(out.x.begin(), out.x.end(), hi);
        for (auto it = first; it != last; ++it) {
            const double t = std::clamp((*it - lo) / (hi - lo), 0.0, 1.0);
            out.y[static_cast<std::size_t>(it - out.x.begin())] =
                transition(t, ts.y[i - 1], ts.y[i], shape, spec.lambda, spec.gamma);
        }
    }
    return out;
}

}  // namespace weaver
