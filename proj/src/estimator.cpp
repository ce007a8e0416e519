#include "bubble/estimator.hpp"

#include <cmath>
#include <limits>

#include "bubble/errors.hpp"
#include "bubble/format.hpp"

namespace bubble {

Linearized linearize(const PriceSeries& series, double peak_time, double peak_price,
                     Phase phase) {
    if (series.basis() != Basis::deflated)
        throw DataError("linearize expects a deflated series; run deflate first");
    if (peak_price <= 0.0 || !std::isfinite(peak_price))
        throw DataError("peak price must be positive and finite");

    Linearized lin;
    for (const auto& o : series.observations()) {
        const double dt = o.t - peak_time;
        if (phase == Phase::rising && dt > 1e-9)
            throw DataError("observation at t=" + format_double(o.t) +
                            " lies after the peak; slice the rising phase first");
        if (phase == Phase::falling && dt < -1e-9)
            throw DataError("observation at t=" + format_double(o.t) +
                            " lies before the peak; slice the falling phase first");
        if (std::fabs(dt) <= 1e-9 || o.value <= 0.0 || o.value >= peak_price) {
            ++lin.excluded;
            continue;
        }
        LinearizedPoint p;
        p.t = o.t;
        p.price = o.value;
        p.x = std::log(std::fabs(dt));
        p.y = std::log(std::log(peak_price / o.value));
        lin.points.push_back(p);
    }
    if (lin.points.size() < 3)
        throw DataError("only " + std::to_string(lin.points.size()) +
                        " usable observations after exclusions; need at least 3");
    return lin;
}

PeakFit fit_phase(const PriceSeries& series, double peak_time, double peak_price,
                  Phase phase) {
    const Linearized lin = linearize(series, peak_time, peak_price, phase);
    const auto n = static_cast<double>(lin.points.size());

    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& p : lin.points) {
        mean_x += p.x;
        mean_y += p.y;
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& p : lin.points) {
        const double dx = p.x - mean_x;
        const double dy = p.y - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 1e-12)
        throw DataError("degenerate regression: all observations equidistant from the peak");

    const double slope = sxy / sxx;
    const double intercept = mean_y - slope * mean_x;
    if (slope <= 0.0)
        throw DataError("linearized slope is not positive (alpha=" +
                        format_double(slope) +
                        "); the data do not trace a peak-shaped " +
                        std::string(phase_name(phase)) + " phase");

    PeakFit fit;
    fit.params = PeakParams{peak_time, peak_price, slope, std::exp(-intercept / slope),
                            phase};
    fit.params.validate();
    fit.n_points = static_cast<int>(lin.points.size());
    fit.excluded = lin.excluded;
    if (syy <= 0.0) {
        fit.r_squared = 0.0;
    } else {
        fit.r_squared = (sxy * sxy) / (sxx * syy);
        fit.r_squared = std::min(1.0, std::max(0.0, fit.r_squared));
    }
    fit.residuals.reserve(lin.points.size());
    for (const auto& p : lin.points)
        fit.residuals.push_back({p.t, p.price, evaluate(fit.params, p.t)});
    return fit;
}

PeakParams fit_phase_oracle(const PriceSeries& series, double peak_time,
                            double peak_price, Phase phase, const OracleGrid& grid) {
    if (grid.alpha_step <= 0.0 || grid.tau_step <= 0.0 ||
        grid.alpha_min <= 0.0 || grid.tau_min <= 0.0 ||
        grid.alpha_max < grid.alpha_min || grid.tau_max < grid.tau_min)
        throw DataError("oracle grid is empty or invalid");
    if (peak_price <= 0.0 || !std::isfinite(peak_price))
        throw DataError("peak price must be positive and finite");

    struct Pt {
        double log_dt;
        double price;
    };
    std::vector<Pt> pts;
    for (const auto& o : series.observations()) {
        const double dt = o.t - peak_time;
        if (phase == Phase::rising && dt > 1e-9)
            throw DataError("observation at t=" + format_double(o.t) +
                            " lies after the peak; slice the rising phase first");
        if (phase == Phase::falling && dt < -1e-9)
            throw DataError("observation at t=" + format_double(o.t) +
                            " lies before the peak; slice the falling phase first");
        // log(0) = -inf makes the model value p2 exactly at the peak.
        pts.push_back({std::log(std::fabs(dt)), o.value});
    }
    if (pts.empty()) throw DataError("no observations on the requested phase side");

    const auto n_alpha =
        static_cast<std::size_t>(std::floor((grid.alpha_max - grid.alpha_min) /
                                            grid.alpha_step + 1e-9)) + 1;
    const auto n_tau =
        static_cast<std::size_t>(std::floor((grid.tau_max - grid.tau_min) /
                                            grid.tau_step + 1e-9)) + 1;

    double best_sse = std::numeric_limits<double>::infinity();
    double best_alpha = grid.alpha_min, best_tau = grid.tau_min;
    for (std::size_t i = 0; i < n_alpha; ++i) {
        const double alpha = grid.alpha_min + static_cast<double>(i) * grid.alpha_step;
        for (std::size_t j = 0; j < n_tau; ++j) {
            const double tau = grid.tau_min + static_cast<double>(j) * grid.tau_step;
            const double log_tau = std::log(tau);
            double sse = 0.0;
            for (const auto& p : pts) {
                const double model =
                    peak_price * std::exp(-std::exp(alpha * (p.log_dt - log_tau)));
                const double r = p.price - model;
                sse += r * r;
            }
            if (sse < best_sse) {
                best_sse = sse;
                best_alpha = alpha;
                best_tau = tau;
            }
        }
    }
    PeakParams params{peak_time, peak_price, best_alpha, best_tau, phase};
    params.validate();
    return params;
}

}  // namespace bubble
