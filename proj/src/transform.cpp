#include "weaver/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "weaver/errors.hpp"

namespace weaver {

namespace {

// ---------------------------------------------------------------------------
// Smoothing spline (Reinsch formulation).
//
// With Q the (m x q) second-difference operator and R the (q x q) tridiagonal
// Gram matrix of the natural spline basis (q = m-2), the minimizer of
// |y - g|^2 + alpha * roughness(g) solves (R + alpha Q^T Q) gamma = Q^T y,
// g = y - alpha Q gamma. RSS(alpha) grows monotonically from 0 towards the
// residual of the least-squares line, so the smoothing condition is met by a
// one-dimensional root search on alpha.
// ---------------------------------------------------------------------------

struct SplineSystem {
    std::size_t q = 0;
    // Q columns (one per interior knot): rows k-1, k, k+1
    std::vector<double> qa, qb, qc;
    // R bands
    std::vector<double> r0, r1;
    // Q^T Q bands
    std::vector<double> t0, t1, t2;
    std::vector<double> qty;
};

SplineSystem build_system(const TimeSeries& ts) {
    const std::size_t m = ts.size();
    SplineSystem sys;
    sys.q = m - 2;
    const auto& x = ts.x;
    const auto& y = ts.y;
    sys.qa.resize(sys.q);
    sys.qb.resize(sys.q);
    sys.qc.resize(sys.q);
    sys.r0.resize(sys.q);
    sys.r1.assign(sys.q, 0.0);
    sys.qty.resize(sys.q);
    for (std::size_t k = 0; k < sys.q; ++k) {
        const std::size_t i = k + 1;
        const double hl = x[i] - x[i - 1];
        const double hr = x[i + 1] - x[i];
        sys.qa[k] = 1.0 / hl;
        sys.qb[k] = -1.0 / hl - 1.0 / hr;
        sys.qc[k] = 1.0 / hr;
        sys.r0[k] = (hl + hr) / 3.0;
        if (k + 1 < sys.q) sys.r1[k] = hr / 6.0;
        sys.qty[k] = (y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl;
    }
    sys.t0.resize(sys.q);
    sys.t1.assign(sys.q, 0.0);
    sys.t2.assign(sys.q, 0.0);
    for (std::size_t k = 0; k < sys.q; ++k) {
        sys.t0[k] = sys.qa[k] * sys.qa[k] + sys.qb[k] * sys.qb[k] + sys.qc[k] * sys.qc[k];
        if (k + 1 < sys.q) sys.t1[k] = sys.qb[k] * sys.qa[k + 1] + sys.qc[k] * sys.qb[k + 1];
        if (k + 2 < sys.q) sys.t2[k] = sys.qc[k] * sys.qa[k + 2];
    }
    return sys;
}

// Cholesky solve of the symmetric positive definite pentadiagonal system.
std::vector<double> solve_banded(const SplineSystem& sys, double alpha) {
    const std::size_t q = sys.q;
    std::vector<double> l0(q), l1(q, 0.0), l2(q, 0.0), z(q);
    for (std::size_t i = 0; i < q; ++i) {
        double d = sys.r0[i] + alpha * sys.t0[i];
        if (i >= 1) d -= l1[i - 1] * l1[i - 1];
        if (i >= 2) d -= l2[i - 2] * l2[i - 2];
        l0[i] = std::sqrt(d);
        if (i + 1 < q) {
            double v = sys.r1[i] + alpha * sys.t1[i];
            if (i >= 1) v -= l2[i - 1] * l1[i - 1];
            l1[i] = v / l0[i];
        }
        if (i + 2 < q) l2[i] = alpha * sys.t2[i] / l0[i];
    }
    for (std::size_t i = 0; i < q; ++i) {
        double v = sys.qty[i];
        if (i >= 1) v -= l1[i - 1] * z[i - 1];
        if (i >= 2) v -= l2[i - 2] * z[i - 2];
        z[i] = v / l0[i];
    }
    std::vector<double> gamma(q);
    for (std::size_t i = q; i-- > 0;) {
        double v = z[i];
        if (i + 1 < q) v -= l1[i] * gamma[i + 1];
        if (i + 2 < q) v -= l2[i] * gamma[i + 2];
        gamma[i] = v / l0[i];
    }
    return gamma;
}

struct SplineFit {
    std::vector<double> g;
    double rss = 0.0;
};

SplineFit evaluate_alpha(const TimeSeries& ts, const SplineSystem& sys, double alpha) {
    const std::size_t m = ts.size();
    const auto gamma = solve_banded(sys, alpha);
    SplineFit fit;
    fit.g.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double qg = 0.0;
        if (i >= 2 && i - 2 < sys.q) qg += sys.qc[i - 2] * gamma[i - 2];
        if (i >= 1 && i - 1 < sys.q) qg += sys.qb[i - 1] * gamma[i - 1];
        if (i < sys.q) qg += sys.qa[i] * gamma[i];
        const double resid = alpha * qg;
        fit.g[i] = ts.y[i] - resid;
        fit.rss += resid * resid;
    }
    return fit;
}

std::vector<double> least_squares_line(const TimeSeries& ts, double* rss_out) {
    const std::size_t m = ts.size();
    double xbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        xbar += ts.x[i];
        ybar += ts.y[i];
    }
    xbar /= static_cast<double>(m);
    ybar /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (ts.x[i] - xbar) * (ts.x[i] - xbar);
        sxy += (ts.x[i] - xbar) * (ts.y[i] - ybar);
    }
    const double slope = sxy / sxx;
    std::vector<double> g(m);
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        g[i] = ybar + slope * (ts.x[i] - xbar);
        const double r = ts.y[i] - g[i];
        rss += r * r;
    }
    if (rss_out) *rss_out = rss;
    return g;
}

}  // namespace

TimeSeries smooth(const TimeSeries& ts, const SmoothSpec& spec) {
    check_valid(ts);
    if (ts.size() < 4)
        throw ValidationError("smooth: needs at least 4 points, got " + std::to_string(ts.size()));
    if (spec.s && (!(*spec.s >= 0.0) || !std::isfinite(*spec.s)))
        throw ValidationError("smooth: s must be non-negative, got " + std::to_string(*spec.s));
    const double s = spec.s ? *spec.s : default_smoothing(ts);

    TimeSeries out = ts;
    if (s == 0.0) return out;  // interpolation limit

    double rss_line = 0.0;
    const auto line = least_squares_line(ts, &rss_line);
    if (s >= rss_line * (1.0 - 1e-12)) {
        // the straight line has zero roughness and already satisfies the bound
        out.y = line;
        return out;
    }

    const auto sys = build_system(ts);

    // bracket: RSS(0) = 0 < s < rss_line = lim RSS(alpha)
    double lo = 0.0;
    double hi = 1.0;
    SplineFit fit = evaluate_alpha(ts, sys, hi);
    const double alpha_cap = 1e18 * std::pow(ts.span(), 3);
    while (fit.rss < s && hi < alpha_cap) {
        lo = hi;
        hi *= 8.0;
        fit = evaluate_alpha(ts, sys, hi);
    }
    if (fit.rss < s) {
        out.y = std::move(fit.g);  // numerically a straight line already
        return out;
    }

    for (int iter = 0; iter < 300; ++iter) {
        if (std::abs(fit.rss - s) <= 1e-10 * s) break;
        const double mid = (lo > 0.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;  // interval exhausted
        const SplineFit probe = evaluate_alpha(ts, sys, mid);
        if (probe.rss < s)
            lo = mid;
        else
            hi = mid;
        if (probe.rss >= s || std::abs(probe.rss - s) <= 1e-10 * s) fit = probe;
        if (hi - lo <= 1e-15 * hi) break;
    }
    out.y = std::move(fit.g);
    return out;
}

double default_smoothing(const TimeSeries& ts) {
    check_valid(ts);
    if (ts.size() < 4)
        throw ValidationError("default_smoothing: needs at least 4 points, got " +
                              std::to_string(ts.size()));
    std::vector<double> d;
    d.reserve(ts.size() - 2);
    for (std::size_t i = 1; i + 1 < ts.size(); ++i)
        d.push_back(std::abs(ts.y[i + 1] - 2.0 * ts.y[i] + ts.y[i - 1]));
    std::sort(d.begin(), d.end());
    const std::size_t mid = d.size() / 2;
    const double median = (d.size() % 2 == 1) ? d[mid] : 0.5 * (d[mid - 1] + d[mid]);
    // second differences of white noise have variance 6 sigma^2;
    // 0.6745 is the median of |N(0,1)|
    const double sigma = median / (std::sqrt(6.0) * 0.6745);
    return static_cast<double>(ts.size()) * sigma * sigma;
}

TimeSeries repeat(const TimeSeries& ts, int k) {
    check_valid(ts);
    if (k < 1)
        throw ValidationError("repeat: count must be >= 1, got " + std::to_string(k));
    const double step = uniform_step(ts);
    const double period = static_cast<double>(ts.size()) * step;
    TimeSeries out;
    out.x.reserve(ts.size() * static_cast<std::size_t>(k));
    out.y.reserve(ts.size() * static_cast<std::size_t>(k));
    for (int q = 0; q < k; ++q) {
        const double shift = static_cast<double>(q) * period;
        for (std::size_t j = 0; j < ts.size(); ++j) {
            out.x.push_back(ts.x[j] + shift);
            out.y.push_back(ts.y[j]);
        }
    }
    return out;
}

TimeSeries apply_trend(const TimeSeries& ts, const TrendFunction& f) {
    check_valid(ts);
    if (!f) throw ValidationError("apply_trend: no trend function given");
    const double x0 = ts.x_first();
    const double span = ts.span();
    TimeSeries out = ts;
    for (std::size_t j = 0; j < ts.size(); ++j) {
        const double t = (ts.x[j] - x0) / span;
        double shift;
        try {
            shift = f(t);
        } catch (const NumericError& e) {
            throw NumericError("trend evaluation failed at index " + std::to_string(j) + ": " +
                               e.what());
        }
        if (!std::isfinite(shift))
            throw NumericError("trend returned non-finite value at index " + std::to_string(j) +
                               " (t = " + std::to_string(t) + ")");
        out.y[j] += shift;
    }
    return out;
}

namespace {

// Deterministic standard normal: mt19937_64 drives Box-Muller, uniforms taken
// from the top 53 bits so every platform sees the same stream for a seed.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : eng_(seed) {}

    double operator()() {
        const double u1 = unit(eng_());
        const double u2 = unit(eng_());
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    static double unit(std::uint64_t r) {
        return (static_cast<double>(r >> 11) + 0.5) * 0x1.0p-53;  // in (0, 1)
    }
    std::mt19937_64 eng_;
};

}  // namespace

TimeSeries add_noise(const TimeSeries& ts, const NoiseSpec& spec) {
    check_valid(ts);
    if (spec.snr_db && spec.std_dev)
        throw ValidationError("noise: set either snr_db or std, not both");
    if (!spec.snr_db && !spec.std_dev)
        throw ValidationError("noise: one of snr_db or std is required");

    const std::size_t m = ts.size();
    std::vector<double> sigma(m);
    if (spec.std_dev) {
        if (!(*spec.std_dev >= 0.0) || !std::isfinite(*spec.std_dev))
            throw ValidationError("noise: std must be non-negative, got " +
                                  std::to_string(*spec.std_dev));
        std::fill(sigma.begin(), sigma.end(), *spec.std_dev);
    } else {
        const auto& snr = *spec.snr_db;
        if (snr.size() != 1 && snr.size() != m)
            throw ValidationError("noise: snr sequence length " + std::to_string(snr.size()) +
                                  " does not match series length " + std::to_string(m));
        for (double v : snr)
            if (!std::isfinite(v)) throw ValidationError("noise: non-finite snr value");
        double power = 0.0;
        for (double v : ts.y) power += v * v;
        power /= static_cast<double>(m);
        const double rms = std::sqrt(power);
        for (std::size_t j = 0; j < m; ++j) {
            const double db = snr.size() == 1 ? snr[0] : snr[j];
            sigma[j] = rms * std::pow(10.0, -db / 20.0);
        }
    }

    GaussianSampler gauss(spec.seed);
    TimeSeries out = ts;
    for (std::size_t j = 0; j < m; ++j) out.y[j] += sigma[j] * gauss();
    return out;
}

}  // namespace weaver
