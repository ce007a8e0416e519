#include "bubble/predictor.hpp"

#include <cmath>

#include "bubble/errors.hpp"
#include "bubble/format.hpp"

namespace bubble {

namespace {
constexpr double kQuarter = 0.25;
}

SimilarityReport compare_rising_fits(const PeakFit& current_rising,
                                     const PeakFit& reference_rising,
                                     const SimilarityThresholds& thresholds) {
    if (current_rising.params.phase != Phase::rising ||
        reference_rising.params.phase != Phase::rising)
        throw DataError("similarity compares two rising-phase fits");
    const double da = std::fabs(current_rising.params.alpha - reference_rising.params.alpha);
    const double dt = std::fabs(current_rising.params.tau - reference_rising.params.tau);
    SimilarityReport rep;
    rep.alpha_diff_vs_reference = da / reference_rising.params.alpha;
    rep.alpha_diff_vs_current = da / current_rising.params.alpha;
    rep.tau_diff_vs_reference = dt / reference_rising.params.tau;
    rep.tau_diff_vs_current = dt / current_rising.params.tau;
    rep.alpha_threshold = thresholds.alpha;
    rep.tau_threshold = thresholds.tau;
    rep.similar = rep.alpha_diff_vs_reference <= thresholds.alpha &&
                  rep.tau_diff_vs_reference <= thresholds.tau;
    return rep;
}

PredictionTrajectory predict_decline(const PeakEpisode& current,
                                     const PeakFit& current_rising,
                                     const PeakEpisode& reference,
                                     const PeakFit& reference_rising,
                                     const PeakFit& reference_falling, double horizon,
                                     const SimilarityThresholds& thresholds) {
    if (horizon <= 0.0)
        throw DataError("prediction horizon must be positive, got " +
                        format_double(horizon));
    const double quarters = horizon / kQuarter;
    if (std::fabs(quarters - std::round(quarters)) > 1e-9)
        throw DataError("horizon must be a whole number of quarters (the projection "
                        "step is quarterly), got " + format_double(horizon));
    if (reference_falling.params.phase != Phase::falling)
        throw DataError("reference falling fit has the wrong phase");
    if (std::fabs(current_rising.params.t2 - current.peak.t) > 1e-9)
        throw DataError("current rising fit is anchored at t2=" +
                        format_double(current_rising.params.t2) +
                        " but the episode peaks at t=" + format_double(current.peak.t));
    if (std::fabs(reference_rising.params.t2 - reference.peak.t) > 1e-9 ||
        std::fabs(reference_falling.params.t2 - reference.peak.t) > 1e-9)
        throw DataError("reference fits are not anchored at the reference peak");

    const SimilarityReport similarity =
        compare_rising_fits(current_rising, reference_rising, thresholds);

    PeakParams proj{current.peak.t, current.peak.price, reference_falling.params.alpha,
                    reference_falling.params.tau, Phase::falling};
    PriceSeries series =
        sample_trajectory(proj, current.peak.t, current.peak.t + horizon, kQuarter)
            .with_label("predicted-decline");

    PredictionTrajectory out{std::move(series), reference_falling.params,
                             current.peak.t, current.peak.price, horizon, similarity};
    return out;
}

std::vector<CityEpisodeFit> compare_city(const PriceSeries& series,
                                         const SegmentationConfig& config) {
    const auto episodes = segment_episodes(series, config);
    std::vector<CityEpisodeFit> out;
    out.reserve(episodes.size());
    for (const auto& e : episodes) {
        CityEpisodeFit rec{e,
                           fit_phase(slice(series, e.start.t, e.peak.t), e.peak.t,
                                     e.peak.price, Phase::rising),
                           std::nullopt};
        if (e.end)
            rec.falling = fit_phase(slice(series, e.peak.t, e.end->t), e.peak.t,
                                    e.peak.price, Phase::falling);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace bubble
