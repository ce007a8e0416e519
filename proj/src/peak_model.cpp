#include "bubble/peak_model.hpp"

#include <cmath>

#include "bubble/errors.hpp"
#include "bubble/format.hpp"

namespace bubble {

std::string_view phase_name(Phase p) {
    return p == Phase::rising ? "rising" : "falling";
}

Phase phase_from_name(std::string_view name) {
    if (name == "rising") return Phase::rising;
    if (name == "falling") return Phase::falling;
    throw DataError("unknown phase '" + std::string(name) + "'");
}

void PeakParams::validate() const {
    if (!std::isfinite(t2) || !std::isfinite(p2) || !std::isfinite(alpha) ||
        !std::isfinite(tau))
        throw DataError("peak parameters must be finite");
    if (p2 <= 0.0) throw DataError("peak price must be positive, got " + format_double(p2));
    if (alpha <= 0.0) throw DataError("alpha must be positive, got " + format_double(alpha));
    if (tau <= 0.0) throw DataError("tau must be positive, got " + format_double(tau));
}

double evaluate(const PeakParams& params, double t) {
    params.validate();
    const double dt = t - params.t2;
    if (params.phase == Phase::rising && dt > 1e-9)
        throw DataError("t=" + format_double(t) + " lies after the peak (t2=" +
                        format_double(params.t2) + ") of a rising phase");
    if (params.phase == Phase::falling && dt < -1e-9)
        throw DataError("t=" + format_double(t) + " lies before the peak (t2=" +
                        format_double(params.t2) + ") of a falling phase");
    return params.p2 * std::exp(-std::pow(std::fabs(dt) / params.tau, params.alpha));
}

PriceSeries sample_trajectory(const PeakParams& params, double from, double to,
                              double step) {
    params.validate();
    if (step <= 0.0) throw DataError("trajectory step must be positive");
    if (from > to + 1e-9)
        throw DataError("trajectory interval reversed: from=" + format_double(from) +
                        " > to=" + format_double(to));
    const bool straddles = from < params.t2 - 1e-9 && to > params.t2 + 1e-9;
    if (straddles)
        throw DataError("trajectory interval straddles the peak at t2=" +
                        format_double(params.t2) + "; sample each phase separately");

    const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
    std::vector<Observation> obs;
    obs.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = from + static_cast<double>(i) * step;
        obs.push_back({t, evaluate(params, t)});
    }
    return PriceSeries("trajectory", frequency_for_step(step), Basis::nominal,
                       std::move(obs));
}

PriceSeries rough_projection(const PeakEpisode& episode, const PeakEpisode& reference,
                             const PriceSeries& reference_series) {
    if (!reference.end)
        throw DataError("reference episode " + std::to_string(reference.index) +
                        " is incomplete (no end); a completed episode is required");
    const PriceSeries segment =
        slice(reference_series, reference.peak.t, reference.end->t);
    if (segment.size() < 2)
        throw DataError("reference falling segment has fewer than 2 observations");

    const double time_scale = episode.rising_duration / reference.rising_duration;
    const double target_start = episode.peak.price;
    const double target_end =
        episode.start.price * (reference.end->price / reference.start.price);
    const double ref_drop = reference.end->price - reference.peak.price;
    if (std::fabs(ref_drop) < 1e-12 * reference.peak.price)
        throw DataError("reference episode has a flat falling segment");
    const double price_scale = (target_end - target_start) / ref_drop;

    std::vector<Observation> obs;
    obs.reserve(segment.size());
    for (const auto& o : segment.observations()) {
        const double t = episode.peak.t + (o.t - reference.peak.t) * time_scale;
        const double p = target_start + (o.value - reference.peak.price) * price_scale;
        obs.push_back({t, p});
    }
    const double step = obs.size() > 1 ? obs[1].t - obs[0].t : 0.0;
    return PriceSeries("rough-projection", frequency_for_step(step), Basis::nominal,
                       std::move(obs));
}

}  // namespace bubble
