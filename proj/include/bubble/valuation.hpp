#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace bubble {

enum class StockMethod { per_person, per_flat };
std::string_view stock_method_name(StockMethod m);

/// Housing-stock estimate as an exact triple product:
/// count x area per unit x price per square meter.
struct StockEstimate {
    StockMethod method = StockMethod::per_person;
    double count = 0.0;
    double area_per_unit = 0.0;  // square meters
    double price_per_m2 = 0.0;
    double total = 0.0;
};

StockEstimate stock_value(StockMethod method, double count, double area_per_unit,
                          double price_per_m2);

/// Currency conversion with the rate expressed as units per target
/// (e.g. HKD per USD): amount / rate.
double convert(double amount, double rate);

struct ComparisonRatio {
    std::string label;
    double reference_value = 0.0;
    double ratio = 0.0;
    std::string formula;  // how the ratio was formed
};

/// One year of decline against an annual flow:
/// (stock x decline_rate) / flow.
ComparisonRatio annual_change_vs_flow(std::string label, double stock,
                                      double decline_rate, double flow);

/// A reference amount as a multiple of the stock: reference / stock.
ComparisonRatio stock_multiple(std::string label, double reference, double stock);

struct ScenarioComparison {
    std::string label;
    double value = 0.0;
    std::string currency;
    std::string kind;  // "annual_flow" or "stock_ratio"
};

/// Inputs for the valuation arithmetic, read from a JSON scenario file so
/// official figures can be swapped without rebuilding.
struct ValuationScenario {
    std::string label;
    double per_person_count = 0.0;
    double per_person_area = 0.0;
    double per_person_price = 0.0;
    double per_flat_count = 0.0;
    double per_flat_area = 0.0;
    double per_flat_price = 0.0;
    double stock_value_hkd = 0.0;  // the headline figure used for comparisons
    std::vector<std::pair<std::string, double>> exchange_rates_hkd;  // currency -> HKD per unit
    double decline_rate_per_year = 0.0;
    std::vector<ScenarioComparison> comparisons;
};

ValuationScenario load_scenario(const std::filesystem::path& path);

struct ValuationReport {
    std::string label;
    std::vector<StockEstimate> estimates;
    double stock_value_hkd = 0.0;
    std::vector<std::pair<std::string, double>> stock_converted;  // currency -> value
    std::vector<ComparisonRatio> comparisons;
};

/// Evaluates a scenario: both stock estimates, the converted stock values,
/// and one comparison ratio per scenario entry (flows against the annual
/// change, stocks as multiples).
ValuationReport run_scenario(const ValuationScenario& scenario);

}  // namespace bubble
