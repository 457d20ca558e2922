#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "weaver/time_series.hpp"

namespace weaver {

/// Smoothing condition: an upper bound on the residual sum of squares of the
/// fit. Absent means "pick a value from the sample count and noise scale".
struct SmoothSpec {
    std::optional<double> s;
};

/// Cubic smoothing spline: among natural cubic splines with knots at the
/// sample points, minimizes the integrated squared second derivative subject
/// to sum((y_j - f(x_j))^2) <= s. Returns f sampled at the original grid.
/// s = 0 reproduces the data (interpolation limit).
TimeSeries smooth(const TimeSeries& ts, const SmoothSpec& spec);

/// Default smoothing condition m * sigma^2, with sigma estimated robustly
/// from the second differences of y.
double default_smoothing(const TimeSeries& ts);

/// Tiles a uniformly spaced series k times; the period is m * step, so the
/// last sample of one copy and the first of the next are one step apart.
TimeSeries repeat(const TimeSeries& ts, int k);

/// Additive shift as a function of time normalized to [0, 1].
using TrendFunction = std::function<double(double)>;

TimeSeries apply_trend(const TimeSeries& ts, const TrendFunction& f);

/// Gaussian noise, scaled either to hit a signal-to-noise ratio in dB
/// (one value broadcasts, otherwise one per sample; signal power is the mean
/// of y^2 over the whole series) or to a fixed standard deviation.
struct NoiseSpec {
    std::optional<std::vector<double>> snr_db;
    std::optional<double> std_dev;
    std::uint64_t seed = 0;
};

/// Name of the generator behind add_noise, recorded in run metadata so a
/// given seed can be tied to a specific algorithm.
inline constexpr const char* kNoiseRngAlgorithm = "mt19937_64+box-muller";

TimeSeries add_noise(const TimeSeries& ts, const NoiseSpec& spec);

}  // namespace weaver
