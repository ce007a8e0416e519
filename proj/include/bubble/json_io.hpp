#pragma once

#include <string>

#include <json.hpp>

#include "bubble/cross_section.hpp"
#include "bubble/predictor.hpp"
#include "bubble/valuation.hpp"

namespace bubble {

// Value serializers.
nlohmann::json to_json(const PeakParams& params);
nlohmann::json to_json(const PeakEpisode& episode);
nlohmann::json to_json(const PeakFit& fit, const std::string& label);
nlohmann::json to_json(const SimilarityReport& report);
nlohmann::json to_json(const MultiplierFit& fit);

PeakParams peak_params_from_json(const nlohmann::json& j);
PeakFit peak_fit_from_json(const nlohmann::json& j);
PeakEpisode episode_from_json(const nlohmann::json& j);

// Top-level report documents (all carry schema_version).
nlohmann::json episodes_document(const std::string& label,
                                 const std::vector<PeakEpisode>& episodes,
                                 double ongoing_price_factor);
nlohmann::json city_document(const std::string& label,
                             const std::vector<CityEpisodeFit>& records,
                             double ongoing_price_factor);
nlohmann::json fit_document(const PeakFit& fit, const std::string& label);
nlohmann::json prediction_document(const PredictionTrajectory& trajectory);
nlohmann::json multiplier_document(const MultiplierFit& fit, const std::string& label);
nlohmann::json yield_document(const std::vector<YieldPoint>& points,
                              const std::string& label);
nlohmann::json correlation_document(const CorrelationResult& result);
nlohmann::json growth_document(const GrowthResult& result, const std::string& label);
nlohmann::json valuation_document(const ValuationReport& report);

std::vector<CityEpisodeFit> city_fits_from_document(const nlohmann::json& j);

/// Canonical dump used for every emitted document: 2-space indent, sorted
/// keys, trailing newline. Byte-stable for identical values.
std::string dump_json(const nlohmann::json& j);

}  // namespace bubble
