#pragma once

#include <string>
#include <vector>

#include "bubble/series.hpp"

namespace bubble {

struct ChartSeries {
    std::string label;
    std::vector<Observation> points;
    std::string color;        // picked from a fixed palette when empty
    bool dashed = false;      // projections are drawn dashed
    bool right_axis = false;  // e.g. yields in percent
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::string y2_label;  // right-hand axis
    double width = 960.0;
    double height = 560.0;
};

/// Renders a deterministic SVG 1.1 document: identical inputs produce
/// identical bytes. At least one non-empty series with finite values is
/// required.
std::string render_chart(const ChartSpec& spec, const std::vector<ChartSeries>& series);

}  // namespace bubble
