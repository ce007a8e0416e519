#include "bubble/series_ops.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "bubble/errors.hpp"
#include "bubble/format.hpp"

namespace bubble {

PriceSeries moving_average(const PriceSeries& series, int window) {
    if (window < 1 || window % 2 == 0)
        throw DataError("moving average window must be odd and positive, got " +
                        std::to_string(window));
    const auto& obs = series.observations();
    if (static_cast<std::size_t>(window) > obs.size())
        throw DataError("moving average window (" + std::to_string(window) +
                        ") longer than series (" + std::to_string(obs.size()) + ")");
    const std::size_t half = static_cast<std::size_t>((window - 1) / 2);
    std::vector<Observation> out;
    out.reserve(obs.size() - static_cast<std::size_t>(window) + 1);
    for (std::size_t i = half; i + half < obs.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = i - half; j <= i + half; ++j) sum += obs[j].value;
        out.push_back({obs[i].t, sum / window});
    }
    return PriceSeries(series.label(), series.frequency(), series.basis(),
                       std::move(out), series.deflation());
}

PriceSeries annualize(const PriceSeries& series, AnnualizeMethod) {
    const Frequency f = series.frequency();
    if (f != Frequency::monthly && f != Frequency::quarterly)
        throw DataError("annualize expects a monthly or quarterly series, got " +
                        std::string(frequency_name(f)));
    const int per_year = f == Frequency::monthly ? 12 : 4;

    std::map<int, std::pair<double, int>> years;  // year -> (sum, count)
    for (const auto& o : series.observations()) {
        const int y = period_containing(o.t, f).year;
        auto& acc = years[y];
        acc.first += o.value;
        acc.second += 1;
    }
    std::vector<Observation> out;
    for (const auto& [year, acc] : years) {
        if (acc.second != per_year) {
            // validated spacing means a short year can only be the first or last
            if (year != years.begin()->first && year != years.rbegin()->first)
                throw DataError("year " + std::to_string(year) + " has " +
                                std::to_string(acc.second) + " of " +
                                std::to_string(per_year) + " periods");
            continue;
        }
        out.push_back({year + 0.5, acc.first / per_year});
    }
    if (out.empty())
        throw DataError("series '" + series.label() +
                        "' contains no fully covered calendar year");
    return PriceSeries(series.label(), Frequency::annual, series.basis(),
                       std::move(out), series.deflation());
}

PriceSeries slice(const PriceSeries& series, double from_t, double to_t) {
    if (from_t > to_t)
        throw DataError("slice bounds reversed: " + format_double(from_t) + " > " +
                        format_double(to_t));
    std::vector<Observation> out;
    for (const auto& o : series.observations())
        if (o.t >= from_t - 1e-9 && o.t <= to_t + 1e-9) out.push_back(o);
    if (out.empty())
        throw DataError("slice [" + format_double(from_t) + ", " + format_double(to_t) +
                        "] of series '" + series.label() + "' is empty");
    return PriceSeries(series.label(), series.frequency(), series.basis(),
                       std::move(out), series.deflation());
}

PeakEpisode make_episode(int index, EpisodePoint start, EpisodePoint peak,
                         std::optional<EpisodePoint> end) {
    const std::string tag = "episode " + std::to_string(index);
    if (!(start.t < peak.t))
        throw DataError(tag + ": start time must precede peak time");
    if (start.price <= 0.0 || peak.price <= 0.0)
        throw DataError(tag + ": boundary prices must be positive");
    if (peak.price < start.price)
        throw DataError(tag + ": peak price below start price");
    PeakEpisode e;
    e.index = index;
    e.start = start;
    e.peak = peak;
    e.a1 = peak.price / start.price;
    e.rising_duration = peak.t - start.t;
    if (end) {
        if (!(peak.t < end->t))
            throw DataError(tag + ": end time must follow peak time");
        if (end->price <= 0.0 || peak.price < end->price)
            throw DataError(tag + ": end price must be positive and below the peak");
        e.end = end;
        e.a2 = peak.price / end->price;
        e.falling_duration = end->t - peak.t;
    }
    return e;
}

SegmentationConfig load_segmentation_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": malformed JSON: " + e.what());
    }
    if (!j.is_array())
        throw DataError(path.string() + ": segmentation config must be a JSON array");
    SegmentationConfig cfg;
    for (const auto& w : j) {
        SegmentWindow win;
        win.label = w.value("label", "window-" + std::to_string(cfg.windows.size() + 1));
        try {
            win.start = w.at("window_start").get<double>();
            win.end = w.at("window_end").get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ": window '" + win.label + "': " + e.what());
        }
        cfg.windows.push_back(std::move(win));
    }
    return cfg;
}

namespace {

// argmin/argmax over [lo, hi] observation indices; ties break to the
// earliest time.
std::size_t argmax_in(const std::vector<Observation>& obs, std::size_t lo, std::size_t hi) {
    std::size_t best = lo;
    for (std::size_t i = lo + 1; i <= hi; ++i)
        if (obs[i].value > obs[best].value) best = i;
    return best;
}

std::size_t argmin_in(const std::vector<Observation>& obs, std::size_t lo, std::size_t hi) {
    std::size_t best = lo;
    for (std::size_t i = lo + 1; i <= hi; ++i)
        if (obs[i].value < obs[best].value) best = i;
    return best;
}

}  // namespace

std::vector<PeakEpisode> segment_episodes(const PriceSeries& series,
                                          const SegmentationConfig& config) {
    if (series.basis() != Basis::deflated)
        throw DataError("segmentation expects a deflated series; run deflate first");
    if (config.windows.empty()) throw DataError("segmentation config has no windows");
    if (config.ongoing_price_factor < 1.0)
        throw DataError("ongoing price factor must be >= 1");

    auto windows = config.windows;
    std::sort(windows.begin(), windows.end(),
              [](const SegmentWindow& a, const SegmentWindow& b) { return a.start < b.start; });
    for (std::size_t i = 1; i < windows.size(); ++i)
        if (windows[i].start <= windows[i - 1].end)
            throw DataError("segmentation windows '" + windows[i - 1].label + "' and '" +
                            windows[i].label + "' overlap");

    const auto& obs = series.observations();
    std::vector<std::size_t> peaks;
    for (const auto& w : windows) {
        if (w.start > w.end)
            throw DataError("window '" + w.label + "' has reversed bounds");
        std::size_t lo = obs.size(), hi = 0;
        for (std::size_t i = 0; i < obs.size(); ++i) {
            if (obs[i].t >= w.start - 1e-9 && obs[i].t <= w.end + 1e-9) {
                lo = std::min(lo, i);
                hi = std::max(hi, i);
            }
        }
        if (lo >= obs.size())
            throw DataError("window '" + w.label + "' contains no observations");
        const std::size_t pk = argmax_in(obs, lo, hi);
        if (pk == lo || pk == hi)
            throw DataError("window '" + w.label +
                            "' has no interior maximum (monotone data); widen the window");
        if (!peaks.empty() && pk <= peaks.back())
            throw DataError("window '" + w.label + "' peak does not follow the previous one");
        peaks.push_back(pk);
    }

    // Inter-peak troughs, computed once so consecutive episodes share them.
    std::vector<PeakEpisode> episodes;
    std::size_t start_idx = argmin_in(obs, 0, peaks.front() - 1);
    for (std::size_t k = 0; k < peaks.size(); ++k) {
        const std::size_t pk = peaks[k];
        std::optional<std::size_t> end_idx;
        if (k + 1 < peaks.size()) {
            if (pk + 1 > peaks[k + 1] - 1)
                throw DataError("no trough between peaks at t=" + format_double(obs[pk].t) +
                                " and t=" + format_double(obs[peaks[k + 1]].t));
            end_idx = argmin_in(obs, pk + 1, peaks[k + 1] - 1);
        } else if (pk + 1 < obs.size()) {
            const std::size_t cand = argmin_in(obs, pk + 1, obs.size() - 1);
            const bool at_series_end = cand == obs.size() - 1;
            const double falling = obs.back().t - obs[pk].t;
            const double rising = obs[pk].t - obs[start_idx].t;
            const bool still_high =
                obs.back().value > config.ongoing_price_factor * obs[start_idx].value;
            if (!(at_series_end && falling < rising && still_high)) end_idx = cand;
        }
        std::optional<EpisodePoint> end;
        if (end_idx) end = EpisodePoint{obs[*end_idx].t, obs[*end_idx].value};
        episodes.push_back(make_episode(static_cast<int>(k) + 1,
                                        {obs[start_idx].t, obs[start_idx].value},
                                        {obs[pk].t, obs[pk].value}, end));
        if (end_idx) start_idx = *end_idx;
    }
    return episodes;
}

}  // namespace bubble
