#pragma once

#include <filesystem>
#include <string>

#include "bubble/series.hpp"

namespace bubble {

/// Column mapping for delimited input files (comma or tab separated, header
/// row required). Column names are matched case-insensitively.
struct ColumnSchema {
    std::string period_column = "period";
    std::string value_column = "value";
    std::string label;  // defaults to the file stem when empty
};

/// Loads a series from a delimited text file. Periods may be "YYYY",
/// "YYYYQn" or "YYYY-MM" (one format per file); a plain decimal-year column
/// yields an irregular series. Rows are sorted by period; duplicates,
/// gaps, malformed rows and negative values are rejected with the offending
/// line number. A "<path>.meta.json" sidecar written by write_series is
/// applied when present (label, basis, deflation record).
PriceSeries load_series(const std::filesystem::path& path, const ColumnSchema& schema = {});

/// Writes the series as delimited text (period,value) plus a
/// "<path>.meta.json" sidecar with label/frequency/basis/deflation metadata.
/// Values are printed in shortest round-trip form, so load_series reads
/// back bit-identical doubles.
void write_series(const PriceSeries& series, const std::filesystem::path& path);

/// The CSV and sidecar bytes written by write_series.
std::string series_to_csv(const PriceSeries& series);
std::string series_meta_json(const PriceSeries& series);

/// Rebases each value to constant currency of the base period:
/// v -> v * cpi(base) / cpi(t). The CPI must cover the whole span at equal
/// or finer frequency; cpi(base) is the mean of the CPI observations inside
/// the base period. The result carries a deflation record.
PriceSeries deflate(const PriceSeries& series, const PriceSeries& cpi, const Period& base);

}  // namespace bubble
