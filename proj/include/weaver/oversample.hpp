#pragma once

#include <string>
#include <vector>

#include "weaver/time_series.hpp"

namespace weaver {

/// How the recreated signal moves between two consecutive coarse samples.
enum class OversampleStrategy {
    piecewise_constant,
    cubic_spline,
    linear_fixed,
    exp_fixed,
    linear_adaptive,
    exp_adaptive,
};

OversampleStrategy parse_strategy(const std::string& token);
std::string to_string(OversampleStrategy strategy);

struct OversampleSpec {
    int n = 2;                                                        // samples per coarse interval
    OversampleStrategy strategy = OversampleStrategy::exp_adaptive;
    double alpha = 0.5;   // total transition window fraction per interval, (0, 1]
    double lambda = 0.5;  // linear weight in the linear/exponential mix, [0, 1]
    double gamma = 5.0;   // exponential shape, > 0
};

void check_spec(const OversampleSpec& spec);

/// Transition window half-widths around each knot, as fractions of the
/// adjacent interval widths. A knot's window shrinks on the side where the
/// signal changes more, so steep edges keep sharp corners. Boundary knots get
/// one-sided windows of alpha/4; flat neighborhoods fall back to alpha/4 too.
struct WindowAllocation {
    std::vector<double> left;   // fraction of the interval left of knot i
    std::vector<double> right;  // fraction of the interval right of knot i
};

WindowAllocation allocate_windows(const TimeSeries& ts, double alpha);

enum class TransitionShape { linear, exp };

/// Value of the transition curve at local position t in [0, 1], moving from y0
/// to y1. The exp shape blends a linear ramp with a normalized exponential:
/// c(t) = lambda*t + (1-lambda)*(e^{gamma t}-1)/(e^gamma - 1).
double transition(double t, double y0, double y1, TransitionShape shape, double lambda,
                  double gamma);

/// Recreates `ts` on the uniform refinement with `spec.n` samples per interval
/// ((m-1)*n + 1 points total); y values follow the strategy.
TimeSeries oversample(const TimeSeries& ts, const OversampleSpec& spec);

}  // namespace weaver
