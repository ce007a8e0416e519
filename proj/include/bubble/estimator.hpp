#pragma once

#include <vector>

#include "bubble/peak_model.hpp"
#include "bubble/series.hpp"

namespace bubble {

struct LinearizedPoint {
    double x = 0.0;      // ln|t - t2|
    double y = 0.0;      // ln ln(p2 / p(t))
    double t = 0.0;
    double price = 0.0;
};

struct Linearized {
    std::vector<LinearizedPoint> points;
    int excluded = 0;  // observations dropped (p >= p2, p <= 0 or t == t2)
};

/// Double-log transform of one phase of a peak. Under the model exactly,
/// y = alpha * x - alpha * ln(tau). Observations must already lie on the
/// phase's side of t2 (slice the series first); points where the transform
/// is undefined are dropped and counted. Fewer than 3 usable points is an
/// error.
Linearized linearize(const PriceSeries& series, double peak_time, double peak_price,
                     Phase phase);

struct FitResidual {
    double t = 0.0;
    double observed = 0.0;
    double fitted = 0.0;
};

struct PeakFit {
    PeakParams params;
    int n_points = 0;
    double r_squared = 0.0;  // on the linearized scale
    std::vector<FitResidual> residuals;  // on the price scale
    int excluded = 0;
};

/// Two-step estimate of (alpha, tau): linearize, then ordinary least
/// squares of y on x. alpha is the slope, tau = exp(-intercept/alpha).
/// A non-positive slope signals non-peak-shaped data and is an error.
PeakFit fit_phase(const PriceSeries& series, double peak_time, double peak_price,
                  Phase phase);

struct OracleGrid {
    double alpha_min = 0.1, alpha_max = 3.0, alpha_step = 0.01;
    double tau_min = 2.0, tau_max = 30.0, tau_step = 0.1;
};

/// Independent brute-force check: exhaustive grid search minimizing the
/// sum of squared price-scale residuals over all observations on the
/// phase's side. Ties break to the lexicographically smallest (alpha, tau),
/// so the result is bit-stable.
PeakParams fit_phase_oracle(const PriceSeries& series, double peak_time,
                            double peak_price, Phase phase, const OracleGrid& grid);

}  // namespace bubble
