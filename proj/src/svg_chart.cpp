#include "bubble/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bubble/errors.hpp"
#include "bubble/format.hpp"

namespace bubble {

namespace {

constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 64.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 48.0;

const char* kPalette[] = {"#1f4e9c", "#c03028", "#1d7a32", "#8a4fb0",
                          "#c07f28", "#2a8f8f", "#737373"};

std::string escape_text(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string px(double v) { return format_fixed(v, 2); }

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool valid() const { return lo <= hi; }
    void pad() {
        if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

// Tick spacing of the form {1,2,5} x 10^k giving at most max_ticks steps.
double tick_step(const Range& r, int max_ticks) {
    const double extent = r.hi - r.lo;
    double step = std::pow(10.0, std::floor(std::log10(extent / max_ticks)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (extent / (step * mult) <= max_ticks) return step * mult;
    }
    return step * 10.0;
}

std::string tick_label(double v) {
    // Trim float noise on tick values; ticks are multiples of {1,2,5}x10^k.
    const double r = round_sig(v, 10);
    if (std::fabs(r - std::round(r)) < 1e-9 && std::fabs(r) < 1e15)
        return format_fixed(std::round(r), 0);
    return format_double(r);
}

}  // namespace

std::string render_chart(const ChartSpec& spec, const std::vector<ChartSeries>& series) {
    if (series.empty()) throw DataError("chart has no series");
    Range xr, yr, y2r;
    bool any_points = false;
    bool has_right = false;
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            if (!std::isfinite(p.t) || !std::isfinite(p.value))
                throw DataError("chart series '" + s.label + "' has a non-finite point");
            any_points = true;
            xr.include(p.t);
            (s.right_axis ? y2r : yr).include(p.value);
        }
        has_right = has_right || s.right_axis;
    }
    if (!any_points) throw DataError("chart has no data points");
    if (!yr.valid()) yr = Range{0.0, 1.0};
    xr.pad();
    yr.pad();
    if (has_right) y2r.pad();

    const double plot_x0 = kMarginLeft;
    const double plot_x1 = spec.width - kMarginRight;
    const double plot_y0 = kMarginTop;
    const double plot_y1 = spec.height - kMarginBottom;

    auto map_x = [&](double t) {
        return plot_x0 + (t - xr.lo) / (xr.hi - xr.lo) * (plot_x1 - plot_x0);
    };
    auto map_y = [&](double v, const Range& r) {
        return plot_y1 - (v - r.lo) / (r.hi - r.lo) * (plot_y1 - plot_y0);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           px(spec.width) + "\" height=\"" + px(spec.height) + "\" viewBox=\"0 0 " +
           px(spec.width) + " " + px(spec.height) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + px(spec.width) + "\" height=\"" +
           px(spec.height) + "\" fill=\"#ffffff\"/>\n";

    // plot frame
    svg += "<rect x=\"" + px(plot_x0) + "\" y=\"" + px(plot_y0) + "\" width=\"" +
           px(plot_x1 - plot_x0) + "\" height=\"" + px(plot_y1 - plot_y0) +
           "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\"/>\n";

    // x ticks
    {
        const double step = tick_step(xr, 10);
        double tick = std::ceil(xr.lo / step) * step;
        for (; tick <= xr.hi + 1e-9; tick += step) {
            const double x = map_x(tick);
            svg += "<line x1=\"" + px(x) + "\" y1=\"" + px(plot_y1) + "\" x2=\"" + px(x) +
                   "\" y2=\"" + px(plot_y1 + 5) +
                   "\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
            svg += "<text x=\"" + px(x) + "\" y=\"" + px(plot_y1 + 20) +
                   "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#404040\" "
                   "text-anchor=\"middle\">" +
                   tick_label(tick) + "</text>\n";
        }
    }
    // left y ticks
    {
        const double step = tick_step(yr, 8);
        double tick = std::ceil(yr.lo / step) * step;
        for (; tick <= yr.hi + 1e-9; tick += step) {
            const double y = map_y(tick, yr);
            svg += "<line x1=\"" + px(plot_x0 - 5) + "\" y1=\"" + px(y) + "\" x2=\"" +
                   px(plot_x0) + "\" y2=\"" + px(y) +
                   "\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
            svg += "<text x=\"" + px(plot_x0 - 8) + "\" y=\"" + px(y + 4) +
                   "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#404040\" "
                   "text-anchor=\"end\">" +
                   tick_label(tick) + "</text>\n";
        }
    }
    // right y ticks
    if (has_right) {
        const double step = tick_step(y2r, 8);
        double tick = std::ceil(y2r.lo / step) * step;
        for (; tick <= y2r.hi + 1e-9; tick += step) {
            const double y = map_y(tick, y2r);
            svg += "<line x1=\"" + px(plot_x1) + "\" y1=\"" + px(y) + "\" x2=\"" +
                   px(plot_x1 + 5) + "\" y2=\"" + px(y) +
                   "\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
            svg += "<text x=\"" + px(plot_x1 + 8) + "\" y=\"" + px(y + 4) +
                   "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#404040\" "
                   "text-anchor=\"start\">" +
                   tick_label(tick) + "</text>\n";
        }
    }

    // series strokes
    std::size_t palette_next = 0;
    std::vector<std::string> colors;
    for (const auto& s : series) {
        std::string color = s.color.empty()
                                ? kPalette[palette_next++ % std::size(kPalette)]
                                : s.color;
        colors.push_back(color);
        if (s.points.empty()) continue;
        const Range& r = s.right_axis ? y2r : yr;
        svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
        if (s.dashed) svg += " stroke-dasharray=\"6,4\"";
        svg += " points=\"";
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            if (i) svg += ' ';
            svg += px(map_x(s.points[i].t)) + "," + px(map_y(s.points[i].value, r));
        }
        svg += "\"/>\n";
    }

    // legend
    {
        double ly = plot_y0 + 14.0;
        for (std::size_t i = 0; i < series.size(); ++i) {
            const double lx = plot_x0 + 12.0;
            svg += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" +
                   px(lx + 22) + "\" y2=\"" + px(ly - 4) + "\" stroke=\"" + colors[i] +
                   "\" stroke-width=\"2\"";
            if (series[i].dashed) svg += " stroke-dasharray=\"6,4\"";
            svg += "/>\n";
            svg += "<text x=\"" + px(lx + 28) + "\" y=\"" + px(ly) +
                   "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#202020\">" +
                   escape_text(series[i].label) +
                   (series[i].right_axis ? " (right scale)" : "") + "</text>\n";
            ly += 16.0;
        }
    }

    // labels
    if (!spec.title.empty())
        svg += "<text x=\"" + px(spec.width / 2) + "\" y=\"" + px(kMarginTop - 14) +
               "\" font-family=\"sans-serif\" font-size=\"16\" fill=\"#202020\" "
               "text-anchor=\"middle\">" +
               escape_text(spec.title) + "</text>\n";
    if (!spec.x_label.empty())
        svg += "<text x=\"" + px((plot_x0 + plot_x1) / 2) + "\" y=\"" +
               px(spec.height - 10) +
               "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#404040\" "
               "text-anchor=\"middle\">" +
               escape_text(spec.x_label) + "</text>\n";
    if (!spec.y_label.empty())
        svg += "<text transform=\"translate(16," + px((plot_y0 + plot_y1) / 2) +
               ") rotate(270)\" font-family=\"sans-serif\" font-size=\"13\" "
               "fill=\"#404040\" text-anchor=\"middle\">" +
               escape_text(spec.y_label) + "</text>\n";
    if (has_right && !spec.y2_label.empty())
        svg += "<text transform=\"translate(" + px(spec.width - 16) + "," +
               px((plot_y0 + plot_y1) / 2) +
               ") rotate(90)\" font-family=\"sans-serif\" font-size=\"13\" "
               "fill=\"#404040\" text-anchor=\"middle\">" +
               escape_text(spec.y2_label) + "</text>\n";

    svg += "</svg>\n";
    return svg;
}

}  // namespace bubble
