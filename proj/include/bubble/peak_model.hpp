#pragma once

#include <string_view>

#include "bubble/series.hpp"
#include "bubble/series_ops.hpp"

namespace bubble {

enum class Phase { rising, falling };
std::string_view phase_name(Phase p);
Phase phase_from_name(std::string_view name);

/// Parameters of the stretched-exponential peak
///   p(t) = p2 * exp(-|(t - t2)/tau|^alpha)
/// for one side of the summit. alpha sets the sharpness near the top, tau
/// the overall breadth. A full peak is a pair of PeakParams sharing
/// (t2, p2) with opposite phases.
struct PeakParams {
    double t2 = 0.0;
    double p2 = 1.0;
    double alpha = 1.0;  // > 0
    double tau = 1.0;    // years, > 0
    Phase phase = Phase::rising;

    void validate() const;
};

/// p2 * exp(-|(t - t2)/tau|^alpha). t must lie on the side of t2 selected
/// by the phase (t2 itself is valid for both).
double evaluate(const PeakParams& params, double t);

/// Model values at t = from, from+step, ... while t <= to. Monotone by
/// construction: increasing for the rising phase, decreasing for falling.
PriceSeries sample_trajectory(const PeakParams& params, double from, double to,
                              double step);

/// Symmetry-based projection of an ongoing episode's decline from a
/// completed reference episode: the reference's observed falling segment is
/// rescaled in time by the ratio of rising durations and mapped in price so
/// that it starts at the ongoing episode's peak price and ends at
/// start_price * (reference end price / reference start price), anchored at
/// the ongoing episode's peak time. reference_series must contain the
/// reference's falling segment.
PriceSeries rough_projection(const PeakEpisode& episode, const PeakEpisode& reference,
                             const PriceSeries& reference_series);

}  // namespace bubble
