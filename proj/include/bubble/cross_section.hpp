#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bubble/series.hpp"

namespace bubble {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Inverse standard normal CDF, accurate to ~1e-15 (rational approximation
/// refined with one Halley step).
double normal_quantile(double p);

/// 'confidence' interval for a Pearson correlation via the Fisher
/// z-transform: tanh(atanh(r) -+ q/sqrt(n-3)). Degenerate cases: |r| = 1
/// collapses to [r, r]; n <= 3 widens to [-1, 1].
Interval fisher_interval(double r, int n, double confidence);

/// One market segment's entry for the price-multiplier regression: the
/// initial price and the episode amplitude p2/p1.
struct ClassAmplitude {
    std::string class_label;
    double p1 = 0.0;  // > 0
    double a1 = 1.0;  // >= 1
};

/// Reads class_label,p1,A1 rows from delimited text (header required).
std::vector<ClassAmplitude> load_class_amplitudes(const std::filesystem::path& path);

struct MultiplierFit {
    double m = 0.0;        // slope of A1 on ln(p1)
    double b = 0.0;        // intercept
    double r = 0.0;        // Pearson correlation of (ln p1, A1)
    Interval r_ci;         // Fisher interval at the requested confidence
    double stderr_m = 0.0; // one classical OLS standard error of the slope
    int n = 0;
};

/// OLS of amplitude on log initial price: A1 = m ln(p1) + b.
MultiplierFit multiplier_fit(const std::vector<ClassAmplitude>& points,
                             double confidence = 0.95);

/// Arithmetic mean of per-class slopes.
double mean_m(const std::vector<double>& ms);

struct YieldPoint {
    double t = 0.0;
    double rent = 0.0;   // annual rent per square meter
    double price = 0.0;  // price per square meter
    double yield = 0.0;  // rent / price
    double per = 0.0;    // price / rent
};

/// Pointwise yield and price-earnings ratio from aligned price and rent
/// series (same frequency, span and basis; strictly positive values).
std::vector<YieldPoint> yield_series(const PriceSeries& prices, const PriceSeries& rents);

struct CorrelationResult {
    double r = 0.0;
    Interval ci;
    double level = 0.95;
    int n = 0;
};

/// Pearson correlation with a Fisher confidence interval. Needs n >= 4 and
/// nonzero variance on both sides.
CorrelationResult correlation(std::span<const double> xs, std::span<const double> ys,
                              double level = 0.95);

struct GrowthSpan {
    double from_t = 0.0;
    double to_t = 0.0;
    double start_value = 0.0;
    double end_value = 0.0;
    double annual_rate = 0.0;  // compound: (end/start)^(1/years) - 1
};

struct GrowthResult {
    GrowthSpan span1;
    GrowthSpan span2;
    double ratio = 0.0;  // span2 rate / span1 rate
};

/// Compound annual growth over two spans and their ratio. Span endpoints
/// resolve to the observation whose calendar period contains them.
GrowthResult growth_ratio(const PriceSeries& series, std::pair<double, double> span1,
                          std::pair<double, double> span2);

}  // namespace bubble
