#include "weaver/interpolant.hpp"

#include <algorithm>
#include <cmath>

#include "weaver/errors.hpp"

namespace weaver {

InterpolantKind parse_interpolant_kind(const std::string& token) {
    if (token == "piecewise-constant-left") return InterpolantKind::piecewise_constant_left;
    if (token == "piecewise-linear") return InterpolantKind::piecewise_linear;
    if (token == "natural-cubic") return InterpolantKind::natural_cubic;
    throw ValidationError("unknown interpolant kind '" + token + "'");
}

std::string to_string(InterpolantKind kind) {
    switch (kind) {
        case InterpolantKind::piecewise_constant_left: return "piecewise-constant-left";
        case InterpolantKind::piecewise_linear: return "piecewise-linear";
        case InterpolantKind::natural_cubic: return "natural-cubic";
    }
    throw ValidationError("unknown interpolant kind");
}

std::vector<double> natural_cubic_second_derivatives(const TimeSeries& ts) {
    check_valid(ts);
    const std::size_t m = ts.size();
    std::vector<double> m2(m, 0.0);
    if (m == 2) return m2;  // a single segment is a straight line

    // Tridiagonal system for the interior second derivatives, natural ends.
    const std::size_t q = m - 2;
    std::vector<double> diag(q), upper(q), rhs(q);
    for (std::size_t k = 0; k < q; ++k) {
        const std::size_t i = k + 1;
        const double hl = ts.x[i] - ts.x[i - 1];
        const double hr = ts.x[i + 1] - ts.x[i];
        diag[k] = (hl + hr) / 3.0;
        upper[k] = hr / 6.0;
        rhs[k] = (ts.y[i + 1] - ts.y[i]) / hr - (ts.y[i] - ts.y[i - 1]) / hl;
    }
    // Thomas algorithm; the matrix is symmetric so lower[k] == upper[k-1].
    for (std::size_t k = 1; k < q; ++k) {
        const double w = upper[k - 1] / diag[k - 1];
        diag[k] -= w * upper[k - 1];
        rhs[k] -= w * rhs[k - 1];
    }
    m2[q] = rhs[q - 1] / diag[q - 1];
    for (std::size_t k = q - 1; k-- > 0;)
        m2[k + 1] = (rhs[k] - upper[k] * m2[k + 2]) / diag[k];
    return m2;
}

Interpolant::Interpolant(TimeSeries knots, InterpolantKind kind)
    : knots_(std::move(knots)), kind_(kind) {
    check_valid(knots_);
    if (kind_ == InterpolantKind::natural_cubic)
        second_derivs_ = natural_cubic_second_derivatives(knots_);
}

double Interpolant::operator()(double xq) const {
    const auto& x = knots_.x;
    const auto& y = knots_.y;
    if (xq < x.front() || xq > x.back())
        throw ValidationError("evaluation at " + std::to_string(xq) + " outside domain [" +
                              std::to_string(x.front()) + ", " + std::to_string(x.back()) + "]");

    auto it = std::lower_bound(x.begin(), x.end(), xq);
    if (it != x.end() && *it == xq)
        return y[static_cast<std::size_t>(it - x.begin())];  // exact at knots
    const std::size_t seg = static_cast<std::size_t>(it - x.begin()) - 1;

    switch (kind_) {
        case InterpolantKind::piecewise_constant_left:
            return y[seg];
        case InterpolantKind::piecewise_linear: {
            const double t = (xq - x[seg]) / (x[seg + 1] - x[seg]);
            return y[seg] + t * (y[seg + 1] - y[seg]);
        }
        case InterpolantKind::natural_cubic: {
            const double h = x[seg + 1] - x[seg];
            const double dx = xq - x[seg];
            const double b = (y[seg + 1] - y[seg]) / h -
                             h * (2.0 * second_derivs_[seg] + second_derivs_[seg + 1]) / 6.0;
            const double c = second_derivs_[seg] / 2.0;
            const double d = (second_derivs_[seg + 1] - second_derivs_[seg]) / (6.0 * h);
            return y[seg] + dx * (b + dx * (c + dx * d));
        }
    }
    throw ValidationError("unknown interpolant kind");
}

Interpolant make_interpolant(TimeSeries ts, InterpolantKind kind) {
    return Interpolant(std::move(ts), kind);
}

}  // namespace weaver
