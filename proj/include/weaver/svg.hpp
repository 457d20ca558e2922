#pragma once

#include <string>
#include <vector>

#include "weaver/time_series.hpp"

namespace weaver {

enum class PlotStyle {
    line,        // straight segments between samples
    steps_post,  // each value extends rightward to the next sample
};

struct SvgPanel {
    std::string title;
    TimeSeries series;
    PlotStyle style = PlotStyle::line;
};

/// Renders panels into a fixed multi-panel SVG chart (up to four columns).
/// Output is plain XML with no timestamps: byte-identical for equal input.
std::string render_svg(const std::vector<SvgPanel>& panels);

}  // namespace weaver
