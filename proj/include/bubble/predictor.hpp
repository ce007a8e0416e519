#pragma once

#include <optional>
#include <vector>

#include "bubble/estimator.hpp"
#include "bubble/series_ops.hpp"

namespace bubble {

struct SimilarityThresholds {
    double alpha = 0.40;  // relative, against the reference value
    double tau = 0.25;
};

/// Comparison of two rising-phase fits. Relative differences are reported
/// under both denominator conventions; the `similar` flag uses the
/// reference-denominator values against the configured thresholds.
struct SimilarityReport {
    double alpha_diff_vs_reference = 0.0;
    double alpha_diff_vs_current = 0.0;
    double tau_diff_vs_reference = 0.0;
    double tau_diff_vs_current = 0.0;
    double alpha_threshold = 0.0;
    double tau_threshold = 0.0;
    bool similar = false;
};

SimilarityReport compare_rising_fits(const PeakFit& current_rising,
                                     const PeakFit& reference_rising,
                                     const SimilarityThresholds& thresholds = {});

/// Projected post-peak price path. The series starts at the current
/// episode's (t2, p2), decreases strictly, and spans exactly the horizon at
/// quarterly steps. source_params are the reference falling-phase
/// parameters verbatim (no re-estimation).
struct PredictionTrajectory {
    PriceSeries series;
    PeakParams source_params;
    double anchor_t2 = 0.0;
    double anchor_p2 = 0.0;
    double horizon = 0.0;  // years
    SimilarityReport similarity;
};

/// The three-stage procedure: the reference episode is fully fitted, the
/// current episode's rising phase is fitted and checked for similarity, and
/// the decline is projected with the reference's falling-phase (alpha, tau)
/// anchored at the current peak. A failed similarity check flags the
/// trajectory but does not suppress it.
PredictionTrajectory predict_decline(const PeakEpisode& current,
                                     const PeakFit& current_rising,
                                     const PeakEpisode& reference,
                                     const PeakFit& reference_rising,
                                     const PeakFit& reference_falling, double horizon,
                                     const SimilarityThresholds& thresholds = {});

/// Episode boundaries plus per-phase fits for one market's deflated series;
/// the falling fit is absent for an ongoing episode.
struct CityEpisodeFit {
    PeakEpisode episode;
    PeakFit rising;
    std::optional<PeakFit> falling;
};

std::vector<CityEpisodeFit> compare_city(const PriceSeries& series,
                                         const SegmentationConfig& config);

}  // namespace bubble
