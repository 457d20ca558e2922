#include "weaver/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "weaver/errors.hpp"

namespace weaver {

namespace {

constexpr double kCellW = 360.0, kCellH = 240.0;
constexpr double kPlotX = 52.0, kPlotY = 34.0;
constexpr double kPlotW = 292.0, kPlotH = 164.0;

std::string fixed2(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, ptr);
}

std::string format_tick(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 4);
    return std::string(buf, ptr);
}

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo, hi;
    double map(double v, double px0, double pxw, bool flip) const {
        const double t = (v - lo) / (hi - lo);
        return flip ? px0 + pxw * (1.0 - t) : px0 + pxw * t;
    }
};

Range padded_range(double lo, double hi) {
    if (hi - lo < 1e-12 * std::max({std::abs(lo), std::abs(hi), 1.0})) {
        const double pad = std::max(1.0, std::abs(hi)) * 0.05;
        return {lo - pad, hi + pad};
    }
    const double pad = 0.04 * (hi - lo);
    return {lo - pad, hi + pad};
}

void render_panel(std::ostringstream& out, const SvgPanel& panel, double tx, double ty) {
    const auto& ts = panel.series;
    out << "<g class=\"panel\" transform=\"translate(" << fixed2(tx) << "," << fixed2(ty)
        << ")\">\n";
    out << "  <text class=\"panel-title\" x=\"" << fixed2(kPlotX) << "\" y=\"20\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << escape_xml(panel.title)
        << "</text>\n";
    out << "  <rect class=\"frame\" x=\"" << fixed2(kPlotX) << "\" y=\"" << fixed2(kPlotY)
        << "\" width=\"" << fixed2(kPlotW) << "\" height=\"" << fixed2(kPlotH)
        << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

    if (ts.size() == 0) {
        out << "</g>\n";
        return;
    }
    const Range xr = padded_range(ts.x.front(), ts.x.back());
    const auto [ymin_it, ymax_it] = std::minmax_element(ts.y.begin(), ts.y.end());
    const Range yr = padded_range(*ymin_it, *ymax_it);

    auto px = [&](double v) { return xr.map(v, kPlotX, kPlotW, false); };
    auto py = [&](double v) { return yr.map(v, kPlotY, kPlotH, true); };

    if (ts.size() == 1) {
        out << "  <circle class=\"series\" cx=\"" << fixed2(px(ts.x[0])) << "\" cy=\""
            << fixed2(py(ts.y[0])) << "\" r=\"2\" fill=\"#1f77b4\"/>\n";
    } else {
        std::string d = "M" + fixed2(px(ts.x[0])) + " " + fixed2(py(ts.y[0]));
        if (panel.style == PlotStyle::steps_post) {
            for (std::size_t i = 1; i < ts.size(); ++i) {
                d += " H" + fixed2(px(ts.x[i]));
                d += " V" + fixed2(py(ts.y[i]));
            }
        } else {
            for (std::size_t i = 1; i < ts.size(); ++i)
                d += " L" + fixed2(px(ts.x[i])) + " " + fixed2(py(ts.y[i]));
        }
        out << "  <path class=\"series\" d=\"" << d
            << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\"/>\n";
    }

    // corner tick labels
    out << "  <text class=\"tick\" x=\"" << fixed2(kPlotX) << "\" y=\""
        << fixed2(kPlotY + kPlotH + 16) << "\" font-family=\"sans-serif\" font-size=\"10\">"
        << escape_xml(format_tick(ts.x.front())) << "</text>\n";
    out << "  <text class=\"tick\" x=\"" << fixed2(kPlotX + kPlotW - 24) << "\" y=\""
        << fixed2(kPlotY + kPlotH + 16) << "\" font-family=\"sans-serif\" font-size=\"10\">"
        << escape_xml(format_tick(ts.x.back())) << "</text>\n";
    out << "  <text class=\"tick\" x=\"" << fixed2(kPlotX - 40) << "\" y=\""
        << fixed2(kPlotY + kPlotH) << "\" font-family=\"sans-serif\" font-size=\"10\">"
        << escape_xml(format_tick(*ymin_it)) << "</text>\n";
    out << "  <text class=\"tick\" x=\"" << fixed2(kPlotX - 40) << "\" y=\""
        << fixed2(kPlotY + 8) << "\" font-family=\"sans-serif\" font-size=\"10\">"
        << escape_xml(format_tick(*ymax_it)) << "</text>\n";
    out << "</g>\n";
}

}  // namespace

std::string render_svg(const std::vector<SvgPanel>& panels) {
    if (panels.empty()) throw ValidationError("render_svg: no panels");
    const std::size_t cols = std::min<std::size_t>(panels.size(), 4);
    const std::size_t rows = (panels.size() + cols - 1) / cols;
    const double width = static_cast<double>(cols) * kCellW + 16.0;
    const double height = static_cast<double>(rows) * kCellH + 8.0;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed2(width) << "\" height=\""
        << fixed2(height) << "\" viewBox=\"0 0 " << fixed2(width) << " " << fixed2(height)
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const double tx = static_cast<double>(i % cols) * kCellW + 8.0;
        const double ty = static_cast<double>(i / cols) * kCellH + 4.0;
        render_panel(out, panels[i], tx, ty);
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace weaver
