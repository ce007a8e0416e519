#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bubble/series.hpp"

namespace bubble {

/// Centered moving average. The window must be odd and no longer than the
/// series; (window-1)/2 periods are trimmed at each end, so a 31-month
/// window hides the last 15 months.
PriceSeries moving_average(const PriceSeries& series, int window);

enum class AnnualizeMethod { mean };

/// Collapses a monthly or quarterly series to one observation per calendar
/// year (arithmetic mean). Partial years at the ends are dropped.
PriceSeries annualize(const PriceSeries& series,
                      AnnualizeMethod method = AnnualizeMethod::mean);

/// Observations with from_t <= t <= to_t (inclusive, 1e-9 slack).
PriceSeries slice(const PriceSeries& series, double from_t, double to_t);

struct EpisodePoint {
    double t = 0.0;
    double price = 0.0;
};

/// One speculative episode: trough -> peak -> trough. The end is absent for
/// an episode that is still in its falling phase when the series stops.
struct PeakEpisode {
    int index = 0;  // 1-based ordinal
    EpisodePoint start;
    EpisodePoint peak;
    std::optional<EpisodePoint> end;
    double a1 = 1.0;                        // peak.price / start.price
    std::optional<double> a2;               // peak.price / end->price
    double rising_duration = 0.0;           // peak.t - start.t
    std::optional<double> falling_duration;  // end->t - peak.t
};

/// Validates boundary ordering and price dominance, derives amplitudes and
/// durations.
PeakEpisode make_episode(int index, EpisodePoint start, EpisodePoint peak,
                         std::optional<EpisodePoint> end);

struct SegmentWindow {
    std::string label;
    double start = 0.0;  // decimal years, inclusive
    double end = 0.0;    // decimal years, inclusive
};

struct SegmentationConfig {
    std::vector<SegmentWindow> windows;
    /// An episode whose decline runs into the series end stays open only
    /// while the last value exceeds this multiple of its start price.
    double ongoing_price_factor = 1.1;
};

/// Reads a segmentation config: a JSON array of
/// {"label":..., "window_start":..., "window_end":...}.
SegmentationConfig load_segmentation_config(const std::filesystem::path& path);

/// Locates one episode per window on a deflated series. The peak is the
/// window argmax (ties to the earliest time); boundaries are the minima
/// between consecutive peaks, shared so that episode k ends where episode
/// k+1 starts. The last episode's end is absent when the series stops
/// mid-decline (see SegmentationConfig::ongoing_price_factor).
std::vector<PeakEpisode> segment_episodes(const PriceSeries& series,
                                          const SegmentationConfig& config);

}  // namespace bubble
