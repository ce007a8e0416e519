#include "bubble/valuation.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "bubble/errors.hpp"
#include "bubble/format.hpp"

namespace bubble {

std::string_view stock_method_name(StockMethod m) {
    return m == StockMethod::per_person ? "per_person" : "per_flat";
}

StockEstimate stock_value(StockMethod method, double count, double area_per_unit,
                          double price_per_m2) {
    if (count <= 0.0 || area_per_unit <= 0.0 || price_per_m2 <= 0.0)
        throw DataError("stock valuation inputs must all be positive");
    StockEstimate e;
    e.method = method;
    e.count = count;
    e.area_per_unit = area_per_unit;
    e.price_per_m2 = price_per_m2;
    e.total = count * area_per_unit * price_per_m2;
    return e;
}

double convert(double amount, double rate) {
    if (rate <= 0.0 || !std::isfinite(rate))
        throw DataError("exchange rate must be positive, got " + format_double(rate));
    return amount / rate;
}

ComparisonRatio annual_change_vs_flow(std::string label, double stock,
                                      double decline_rate, double flow) {
    if (!(decline_rate > 0.0 && decline_rate < 1.0))
        throw DataError("decline rate must lie in (0, 1), got " +
                        format_double(decline_rate));
    if (flow <= 0.0) throw DataError("comparison flow must be positive");
    if (stock <= 0.0) throw DataError("stock value must be positive");
    return {std::move(label), flow, stock * decline_rate / flow,
            "(stock x decline_rate) / reference"};
}

ComparisonRatio stock_multiple(std::string label, double reference, double stock) {
    if (reference <= 0.0) throw DataError("comparison reference must be positive");
    if (stock <= 0.0) throw DataError("stock value must be positive");
    return {std::move(label), reference, reference / stock, "reference / stock"};
}

ValuationScenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": malformed JSON: " + e.what());
    }
    ValuationScenario s;
    try {
        s.label = j.value("label", path.stem().string());
        const auto& pp = j.at("per_person");
        s.per_person_count = pp.at("count").get<double>();
        s.per_person_area = pp.at("area_per_unit_m2").get<double>();
        s.per_person_price = pp.at("price_per_m2").get<double>();
        const auto& pf = j.at("per_flat");
        s.per_flat_count = pf.at("count").get<double>();
        s.per_flat_area = pf.at("area_per_unit_m2").get<double>();
        s.per_flat_price = pf.at("price_per_m2").get<double>();
        s.stock_value_hkd = j.at("stock_value_hkd").get<double>();
        for (const auto& [cur, rate] : j.at("exchange_rates_hkd").items())
            s.exchange_rates_hkd.emplace_back(cur, rate.get<double>());
        s.decline_rate_per_year = j.at("decline_rate_per_year").get<double>();
        for (const auto& c : j.at("comparisons")) {
            ScenarioComparison sc;
            sc.label = c.at("label").get<std::string>();
            sc.value = c.at("value").get<double>();
            sc.currency = c.at("currency").get<std::string>();
            sc.kind = c.at("kind").get<std::string>();
            if (sc.kind != "annual_flow" && sc.kind != "stock_ratio")
                throw DataError("comparison '" + sc.label +
                                "': kind must be annual_flow or stock_ratio");
            s.comparisons.push_back(std::move(sc));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return s;
}

ValuationReport run_scenario(const ValuationScenario& scenario) {
    ValuationReport rep;
    rep.label = scenario.label;
    rep.estimates.push_back(stock_value(StockMethod::per_person, scenario.per_person_count,
                                        scenario.per_person_area,
                                        scenario.per_person_price));
    rep.estimates.push_back(stock_value(StockMethod::per_flat, scenario.per_flat_count,
                                        scenario.per_flat_area, scenario.per_flat_price));
    if (scenario.stock_value_hkd <= 0.0)
        throw DataError("scenario stock_value_hkd must be positive");
    rep.stock_value_hkd = scenario.stock_value_hkd;

    auto stock_in = [&](const std::string& currency) {
        if (currency == "HKD") return scenario.stock_value_hkd;
        for (const auto& [cur, rate] : scenario.exchange_rates_hkd)
            if (cur == currency) return convert(scenario.stock_value_hkd, rate);
        throw DataError("no exchange rate for currency '" + currency + "'");
    };

    for (const auto& [cur, rate] : scenario.exchange_rates_hkd)
        rep.stock_converted.emplace_back(cur, convert(scenario.stock_value_hkd, rate));

    for (const auto& c : scenario.comparisons) {
        const double stock = stock_in(c.currency);
        if (c.kind == "annual_flow")
            rep.comparisons.push_back(annual_change_vs_flow(
                c.label, stock, scenario.decline_rate_per_year, c.value));
        else
            rep.comparisons.push_back(stock_multiple(c.label, c.value, stock));
    }
    return rep;
}

}  // namespace bubble
