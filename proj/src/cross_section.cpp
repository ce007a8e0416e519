#include "bubble/cross_section.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bubble/errors.hpp"
#include "bubble/format.hpp"

namespace bubble {

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw DataError("normal quantile requires 0 < p < 1, got " + format_double(p));

    // Acklam's rational approximation.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step against the exact CDF.
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x -= u / (1.0 + x * u / 2.0);
    return x;
}

Interval fisher_interval(double r, int n, double confidence) {
    if (r < -1.0 || r > 1.0)
        throw DataError("correlation out of range: " + format_double(r));
    if (!(confidence > 0.0 && confidence < 1.0))
        throw DataError("confidence level must lie in (0, 1)");
    if (1.0 - std::fabs(r) < 1e-15) return {r, r};
    if (n <= 3) return {-1.0, 1.0};
    const double z = std::atanh(r);
    const double half = normal_quantile(0.5 + confidence / 2.0) /
                        std::sqrt(static_cast<double>(n - 3));
    return {std::tanh(z - half), std::tanh(z + half)};
}

std::vector<ClassAmplitude> load_class_amplitudes(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
    const char delim = line.find('\t') != std::string::npos ? '\t' : ',';

    auto parse_cell = [&](const std::string& s, double& out) {
        const char* first = s.data();
        const char* last = s.data() + s.size();
        auto res = std::from_chars(first, last, out);
        return res.ec == std::errc() && res.ptr == last;
    };

    std::vector<ClassAmplitude> points;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        // trim trailing CR and surrounding space
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string label, p1s, a1s;
        if (!std::getline(row, label, delim) || !std::getline(row, p1s, delim) ||
            !std::getline(row, a1s, delim))
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected class_label,p1,A1");
        ClassAmplitude c;
        c.class_label = label;
        if (!parse_cell(p1s, c.p1) || !parse_cell(a1s, c.a1))
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": non-numeric p1 or A1");
        if (c.p1 <= 0.0 || c.a1 < 1.0)
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": require p1 > 0 and A1 >= 1");
        points.push_back(std::move(c));
    }
    if (points.empty()) throw DataError(path.string() + ": no data rows");
    return points;
}

MultiplierFit multiplier_fit(const std::vector<ClassAmplitude>& points,
                             double confidence) {
    const auto n = points.size();
    if (n < 3)
        throw DataError("multiplier regression needs at least 3 classes, got " +
                        std::to_string(n));
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (points[i].p1 <= 0.0)
            throw DataError("class '" + points[i].class_label + "' has p1 <= 0");
        xs[i] = std::log(points[i].p1);
        ys[i] = points[i].a1;
    }
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        syy += (ys[i] - mean_y) * (ys[i] - mean_y);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    }
    if (sxx <= 1e-15)
        throw DataError("all classes share the same initial price; the regressor has "
                        "zero variance");

    MultiplierFit fit;
    fit.n = static_cast<int>(n);
    fit.m = sxy / sxx;
    fit.b = mean_y - fit.m * mean_x;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ys[i] - (fit.m * xs[i] + fit.b);
        sse += e * e;
    }
    fit.stderr_m = n > 2 ? std::sqrt(sse / static_cast<double>(n - 2) / sxx) : 0.0;
    fit.r = syy > 0.0 ? std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0) : 0.0;
    fit.r_ci = fisher_interval(fit.r, fit.n, confidence);
    return fit;
}

double mean_m(const std::vector<double>& ms) {
    if (ms.empty()) throw DataError("mean of an empty list");
    double sum = 0.0;
    for (double m : ms) sum += m;
    return sum / static_cast<double>(ms.size());
}

std::vector<YieldPoint> yield_series(const PriceSeries& prices, const PriceSeries& rents) {
    if (prices.frequency() != rents.frequency())
        throw DataError("price and rent series have different frequencies");
    if (prices.basis() != rents.basis())
        throw DataError("price and rent series have different bases (" +
                        std::string(basis_name(prices.basis())) + " vs " +
                        std::string(basis_name(rents.basis())) + ")");
    if (prices.size() != rents.size())
        throw DataError("price and rent series have different lengths (" +
                        std::to_string(prices.size()) + " vs " +
                        std::to_string(rents.size()) + ")");
    std::vector<YieldPoint> out;
    out.reserve(prices.size());
    for (std::size_t i = 0; i < prices.size(); ++i) {
        const auto& p = prices.observations()[i];
        const auto& r = rents.observations()[i];
        if (std::fabs(p.t - r.t) > 1e-9)
            throw DataError("price and rent series misaligned at t=" + format_double(p.t) +
                            " vs t=" + format_double(r.t));
        if (r.value <= 0.0)
            throw DataError("zero or negative rent at t=" + format_double(r.t));
        if (p.value <= 0.0)
            throw DataError("zero or negative price at t=" + format_double(p.t));
        out.push_back({p.t, r.value, p.value, r.value / p.value, p.value / r.value});
    }
    return out;
}

CorrelationResult correlation(std::span<const double> xs, std::span<const double> ys,
                              double level) {
    if (xs.size() != ys.size())
        throw DataError("correlation inputs have different lengths (" +
                        std::to_string(xs.size()) + " vs " + std::to_string(ys.size()) +
                        ")");
    const auto n = xs.size();
    if (n < 4) throw DataError("correlation needs at least 4 observations");
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        syy += (ys[i] - mean_y) * (ys[i] - mean_y);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw DataError("correlation undefined: an input has zero variance");
    CorrelationResult res;
    res.n = static_cast<int>(n);
    res.level = level;
    res.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    res.ci = fisher_interval(res.r, res.n, level);
    return res;
}

namespace {

const Observation& observation_containing(const PriceSeries& series, double t) {
    if (series.frequency() == Frequency::irregular) {
        const auto idx = series.index_at(t);
        if (idx < 0)
            throw DataError("series '" + series.label() + "' has no observation at t=" +
                            format_double(t));
        return series.observations()[static_cast<std::size_t>(idx)];
    }
    const Period p = period_containing(t, series.frequency());
    const auto idx = series.index_at(p.mid_time());
    if (idx < 0)
        throw DataError("series '" + series.label() + "' does not cover " + p.str());
    return series.observations()[static_cast<std::size_t>(idx)];
}

GrowthSpan growth_span(const PriceSeries& series, std::pair<double, double> span) {
    const auto& a = observation_containing(series, span.first);
    const auto& b = observation_containing(series, span.second);
    if (!(a.t < b.t))
        throw DataError("growth span is empty or reversed: [" +
                        format_double(span.first) + ", " + format_double(span.second) +
                        "]");
    if (a.value <= 0.0 || b.value <= 0.0)
        throw DataError("growth span endpoints must have positive values");
    GrowthSpan g;
    g.from_t = a.t;
    g.to_t = b.t;
    g.start_value = a.value;
    g.end_value = b.value;
    g.annual_rate = std::pow(b.value / a.value, 1.0 / (b.t - a.t)) - 1.0;
    return g;
}

}  // namespace

GrowthResult growth_ratio(const PriceSeries& series, std::pair<double, double> span1,
                          std::pair<double, double> span2) {
    GrowthResult res;
    res.span1 = growth_span(series, span1);
    res.span2 = growth_span(series, span2);
    // NaN when the first span is flat; serialized as null
    res.ratio = res.span2.annual_rate / res.span1.annual_rate;
    return res;
}

}  // namespace bubble
