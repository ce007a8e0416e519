#include "bubble/json_io.hpp"

#include <cmath>

#include "bubble/errors.hpp"
#include "bubble/version.hpp"

namespace bubble {

using nlohmann::json;

json to_json(const PeakParams& params) {
    return {{"t2", params.t2},
            {"p2", params.p2},
            {"alpha", params.alpha},
            {"tau", params.tau},
            {"phase", std::string(phase_name(params.phase))}};
}

PeakParams peak_params_from_json(const json& j) {
    PeakParams p;
    try {
        p.t2 = j.at("t2").get<double>();
        p.p2 = j.at("p2").get<double>();
        p.alpha = j.at("alpha").get<double>();
        p.tau = j.at("tau").get<double>();
        p.phase = phase_from_name(j.at("phase").get<std::string>());
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed peak parameters: ") + e.what());
    }
    p.validate();
    return p;
}

json to_json(const PeakEpisode& e) {
    json j;
    j["index"] = e.index;
    j["start"] = {{"t", e.start.t}, {"price", e.start.price}};
    j["peak"] = {{"t", e.peak.t}, {"price", e.peak.price}};
    j["end"] = e.end ? json{{"t", e.end->t}, {"price", e.end->price}} : json(nullptr);
    j["a1"] = e.a1;
    j["a2"] = e.a2 ? json(*e.a2) : json(nullptr);
    j["rising_duration"] = e.rising_duration;
    j["falling_duration"] = e.falling_duration ? json(*e.falling_duration) : json(nullptr);
    return j;
}

PeakEpisode episode_from_json(const json& j) {
    try {
        const EpisodePoint start{j.at("start").at("t").get<double>(),
                                 j.at("start").at("price").get<double>()};
        const EpisodePoint peak{j.at("peak").at("t").get<double>(),
                                j.at("peak").at("price").get<double>()};
        std::optional<EpisodePoint> end;
        if (!j.at("end").is_null())
            end = EpisodePoint{j.at("end").at("t").get<double>(),
                               j.at("end").at("price").get<double>()};
        return make_episode(j.at("index").get<int>(), start, peak, end);
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed episode: ") + e.what());
    }
}

json to_json(const PeakFit& fit, const std::string& label) {
    json j;
    j["label"] = label;
    j["phase"] = std::string(phase_name(fit.params.phase));
    j["alpha"] = fit.params.alpha;
    j["tau"] = fit.params.tau;
    j["t2"] = fit.params.t2;
    j["p2"] = fit.params.p2;
    j["r_squared"] = fit.r_squared;
    j["n_points"] = fit.n_points;
    j["excluded"] = fit.excluded;
    json res = json::array();
    for (const auto& r : fit.residuals) res.push_back({r.t, r.observed, r.fitted});
    j["residuals"] = std::move(res);
    return j;
}

PeakFit peak_fit_from_json(const json& j) {
    PeakFit fit;
    try {
        fit.params.alpha = j.at("alpha").get<double>();
        fit.params.tau = j.at("tau").get<double>();
        fit.params.t2 = j.at("t2").get<double>();
        fit.params.p2 = j.at("p2").get<double>();
        fit.params.phase = phase_from_name(j.at("phase").get<std::string>());
        fit.r_squared = j.at("r_squared").get<double>();
        fit.n_points = j.at("n_points").get<int>();
        fit.excluded = j.at("excluded").get<int>();
        if (j.contains("residuals"))
            for (const auto& r : j.at("residuals"))
                fit.residuals.push_back(
                    {r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<double>()});
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed peak fit: ") + e.what());
    }
    fit.params.validate();
    return fit;
}

json to_json(const SimilarityReport& rep) {
    return {{"alpha_diff_vs_reference", rep.alpha_diff_vs_reference},
            {"alpha_diff_vs_current", rep.alpha_diff_vs_current},
            {"tau_diff_vs_reference", rep.tau_diff_vs_reference},
            {"tau_diff_vs_current", rep.tau_diff_vs_current},
            {"alpha_threshold", rep.alpha_threshold},
            {"tau_threshold", rep.tau_threshold},
            {"similar", rep.similar}};
}

json to_json(const MultiplierFit& fit) {
    return {{"m", fit.m},
            {"b", fit.b},
            {"r", fit.r},
            {"r_ci", {fit.r_ci.lo, fit.r_ci.hi}},
            {"stderr_m", fit.stderr_m},
            {"stderr_convention", "one_standard_error"},
            {"n", fit.n}};
}

json episodes_document(const std::string& label,
                       const std::vector<PeakEpisode>& episodes,
                       double ongoing_price_factor) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["label"] = label;
    j["ongoing_price_factor"] = ongoing_price_factor;
    json eps = json::array();
    for (const auto& e : episodes) eps.push_back(to_json(e));
    j["episodes"] = std::move(eps);
    return j;
}

json city_document(const std::string& label, const std::vector<CityEpisodeFit>& records,
                   double ongoing_price_factor) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["label"] = label;
    j["ongoing_price_factor"] = ongoing_price_factor;
    json eps = json::array();
    for (const auto& rec : records) {
        json e = to_json(rec.episode);
        e["rising_fit"] = to_json(rec.rising, label);
        e["falling_fit"] = rec.falling ? to_json(*rec.falling, label) : json(nullptr);
        eps.push_back(std::move(e));
    }
    j["episodes"] = std::move(eps);
    return j;
}

std::vector<CityEpisodeFit> city_fits_from_document(const json& j) {
    std::vector<CityEpisodeFit> out;
    try {
        for (const auto& e : j.at("episodes")) {
            CityEpisodeFit rec;
            rec.episode = episode_from_json(e);
            if (!e.contains("rising_fit"))
                throw DataError("episode document lacks fits; run segment with --fit");
            rec.rising = peak_fit_from_json(e.at("rising_fit"));
            if (e.contains("falling_fit") && !e.at("falling_fit").is_null())
                rec.falling = peak_fit_from_json(e.at("falling_fit"));
            out.push_back(std::move(rec));
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed episodes document: ") + e.what());
    }
    if (out.empty()) throw DataError("episodes document contains no episodes");
    return out;
}

json fit_document(const PeakFit& fit, const std::string& label) {
    json j = to_json(fit, label);
    j["schema_version"] = kSchemaVersion;
    return j;
}

json prediction_document(const PredictionTrajectory& t) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["anchor"] = {{"t2", t.anchor_t2}, {"p2", t.anchor_p2}};
    j["source_params"] = to_json(t.source_params);
    j["horizon"] = t.horizon;
    j["similarity"] = to_json(t.similarity);
    json traj = json::array();
    for (const auto& o : t.series.observations()) traj.push_back({o.t, o.value});
    j["trajectory"] = std::move(traj);
    return j;
}

json multiplier_document(const MultiplierFit& fit, const std::string& label) {
    json j = to_json(fit);
    j["schema_version"] = kSchemaVersion;
    j["label"] = label;
    return j;
}

json yield_document(const std::vector<YieldPoint>& points, const std::string& label) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["label"] = label;
    j["n"] = points.size();
    json arr = json::array();
    for (const auto& p : points)
        arr.push_back({{"t", p.t},
                       {"rent", p.rent},
                       {"price", p.price},
                       {"yield", p.yield},
                       {"per", p.per}});
    j["points"] = std::move(arr);
    if (!points.empty()) {
        j["summary"] = {{"start_yield", points.front().yield},
                        {"end_yield", points.back().yield},
                        {"start_per", points.front().per},
                        {"end_per", points.back().per}};
    }
    return j;
}

json correlation_document(const CorrelationResult& r) {
    return {{"schema_version", kSchemaVersion},
            {"r", r.r},
            {"ci", {r.ci.lo, r.ci.hi}},
            {"level", r.level},
            {"n", r.n}};
}

json growth_document(const GrowthResult& g, const std::string& label) {
    auto span = [](const GrowthSpan& s) {
        return json{{"from_t", s.from_t},
                    {"to_t", s.to_t},
                    {"start_value", s.start_value},
                    {"end_value", s.end_value},
                    {"annual_rate", s.annual_rate}};
    };
    return {{"schema_version", kSchemaVersion},
            {"label", label},
            {"span1", span(g.span1)},
            {"span2", span(g.span2)},
            {"ratio", std::isfinite(g.ratio) ? json(g.ratio) : json(nullptr)}};
}

json valuation_document(const ValuationReport& rep) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["label"] = rep.label;
    json est = json::array();
    for (const auto& e : rep.estimates)
        est.push_back({{"method", std::string(stock_method_name(e.method))},
                       {"count", e.count},
                       {"area_per_unit_m2", e.area_per_unit},
                       {"price_per_m2", e.price_per_m2},
                       {"total", e.total}});
    j["estimates"] = std::move(est);
    j["stock_value_hkd"] = rep.stock_value_hkd;
    json conv = json::object();
    for (const auto& [cur, v] : rep.stock_converted) conv[cur] = v;
    j["stock_converted"] = std::move(conv);
    json cmp = json::array();
    for (const auto& c : rep.comparisons)
        cmp.push_back({{"label", c.label},
                       {"reference_value", c.reference_value},
                       {"ratio", c.ratio},
                       {"formula", c.formula}});
    j["comparisons"] = std::move(cmp);
    return j;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace bubble
