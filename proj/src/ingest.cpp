#include "bubble/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "bubble/errors.hpp"
#include "bubble/format.hpp"
#include "bubble/version.hpp"

namespace bubble {

namespace {

std::string trim(std::string_view s) {
    size_t a = 0, b = s.size();
    while (a < b && (std::isspace(static_cast<unsigned char>(s[a])) != 0)) ++a;
    while (b > a && (std::isspace(static_cast<unsigned char>(s[b - 1])) != 0)) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_row(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, delim)) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == delim) cells.emplace_back();
    return cells;
}

int find_column(const std::vector<std::string>& header, const std::string& name,
                const std::filesystem::path& path) {
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    const std::string want = lower(name);
    int found = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (lower(header[i]) == want) {
            if (found >= 0)
                throw DataError(path.string() + ": column '" + name + "' is ambiguous");
            found = static_cast<int>(i);
        }
    }
    if (found < 0)
        throw DataError(path.string() + ": no column named '" + name + "'");
    return found;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

bool is_decimal_time(const std::string& s) {
    double v;
    return s.find('.') != std::string::npos && parse_double(s, v);
}

struct Sidecar {
    std::optional<std::string> label;
    std::optional<Basis> basis;
    std::optional<DeflationRecord> deflation;
};

Sidecar read_sidecar(const std::filesystem::path& csv_path) {
    Sidecar sc;
    const auto meta_path = csv_path.string() + ".meta.json";
    std::ifstream in(meta_path);
    if (!in) return sc;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(meta_path + ": malformed sidecar: " + e.what());
    }
    if (j.contains("label")) sc.label = j.at("label").get<std::string>();
    if (j.contains("basis")) sc.basis = basis_from_name(j.at("basis").get<std::string>());
    if (j.contains("deflation") && !j.at("deflation").is_null()) {
        DeflationRecord rec;
        rec.cpi_label = j.at("deflation").at("cpi_label").get<std::string>();
        rec.base = j.at("deflation").at("base").get<std::string>();
        sc.deflation = rec;
    }
    return sc;
}

}  // namespace

PriceSeries load_series(const std::filesystem::path& path, const ColumnSchema& schema) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
    const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
    const auto header = split_row(line, delim);
    const int pcol = find_column(header, schema.period_column, path);
    const int vcol = find_column(header, schema.value_column, path);

    struct Row {
        Period period;
        double t;
        double value;
        int line_no;
    };
    std::vector<Row> rows;
    bool decimal_mode = false;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_row(line, delim);
        const auto where = path.string() + ":" + std::to_string(line_no);
        if (static_cast<int>(cells.size()) <= std::max(pcol, vcol))
            throw DataError(where + ": malformed row (expected " +
                            std::to_string(header.size()) + " columns, got " +
                            std::to_string(cells.size()) + ")");
        Row row;
        row.line_no = line_no;
        const std::string& ptoken = cells[static_cast<std::size_t>(pcol)];
        const bool row_decimal = is_decimal_time(ptoken);
        if (rows.empty()) {
            decimal_mode = row_decimal;
        } else if (row_decimal != decimal_mode) {
            throw DataError(where + ": period format differs from previous rows ('" +
                            ptoken + "')");
        }
        if (decimal_mode) {
            parse_double(ptoken, row.t);
            row.period = Period{};
            row.period.freq = Frequency::irregular;
        } else {
            try {
                row.period = Period::parse(ptoken);
            } catch (const DataError& e) {
                throw DataError(where + ": " + e.what());
            }
            if (!rows.empty() && row.period.freq != rows.front().period.freq)
                throw DataError(where + ": period frequency differs from previous rows ('" +
                                ptoken + "')");
            row.t = row.period.mid_time();
        }
        const std::string& vtoken = cells[static_cast<std::size_t>(vcol)];
        if (!parse_double(vtoken, row.value))
            throw DataError(where + ": non-numeric value '" + vtoken + "'");
        if (!std::isfinite(row.value) || row.value < 0.0)
            throw DataError(where + ": value must be finite and non-negative, got '" +
                            vtoken + "'");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError(path.string() + ": no data rows");

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (decimal_mode ? std::fabs(rows[i].t - rows[i - 1].t) <= 1e-9
                         : rows[i].period == rows[i - 1].period)
            throw DataError(path.string() + ": duplicate period '" +
                            (decimal_mode ? format_double(rows[i].t)
                                          : rows[i].period.str()) +
                            "' (lines " + std::to_string(rows[i - 1].line_no) + " and " +
                            std::to_string(rows[i].line_no) + ")");
        if (!decimal_mode && !(rows[i - 1].period.next() == rows[i].period))
            throw DataError(path.string() + ": missing period '" +
                            rows[i - 1].period.next().str() + "' (series jumps from " +
                            rows[i - 1].period.str() + " to " + rows[i].period.str() +
                            ")");
    }

    std::vector<Observation> obs;
    obs.reserve(rows.size());
    for (const auto& r : rows) obs.push_back({r.t, r.value});

    const Frequency freq = decimal_mode ? Frequency::irregular : rows.front().period.freq;
    const auto sc = read_sidecar(path);
    std::string label = schema.label.empty()
                            ? (sc.label ? *sc.label : path.stem().string())
                            : schema.label;
    const Basis basis = sc.basis.value_or(Basis::nominal);
    return PriceSeries(std::move(label), freq, basis, std::move(obs), sc.deflation);
}

std::string series_to_csv(const PriceSeries& series) {
    const bool calendar = series.frequency() != Frequency::irregular;
    std::string out = calendar ? "period,value\n" : "time,value\n";
    for (const auto& o : series.observations()) {
        if (calendar)
            out += period_containing(o.t, series.frequency()).str();
        else
            out += format_double(o.t);
        out += ',';
        out += format_double(o.value);
        out += '\n';
    }
    return out;
}

std::string series_meta_json(const PriceSeries& series) {
    nlohmann::json meta;
    meta["schema_version"] = kSchemaVersion;
    meta["label"] = series.label();
    meta["frequency"] = std::string(frequency_name(series.frequency()));
    meta["basis"] = std::string(basis_name(series.basis()));
    if (series.deflation())
        meta["deflation"] = {{"cpi_label", series.deflation()->cpi_label},
                             {"base", series.deflation()->base}};
    else
        meta["deflation"] = nullptr;
    return meta.dump(2) + "\n";
}

void write_series(const PriceSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << series_to_csv(series);
    if (!out) throw DataError("write failed for '" + path.string() + "'");

    std::ofstream mout(path.string() + ".meta.json", std::ios::binary);
    if (!mout) throw DataError("cannot write '" + path.string() + ".meta.json'");
    mout << series_meta_json(series);
    if (!mout) throw DataError("write failed for '" + path.string() + ".meta.json'");
}

PriceSeries deflate(const PriceSeries& series, const PriceSeries& cpi, const Period& base) {
    if (series.frequency() == Frequency::irregular)
        throw DataError("cannot deflate an irregular series");
    if (cpi.frequency() == Frequency::irregular)
        throw DataError("CPI series must have a calendar frequency");
    if (frequency_spacing(cpi.frequency()) > frequency_spacing(series.frequency()) + 1e-9)
        throw DataError("CPI frequency (" + std::string(frequency_name(cpi.frequency())) +
                        ") is coarser than the series (" +
                        std::string(frequency_name(series.frequency())) + ")");
    for (const auto& o : cpi.observations())
        if (o.value <= 0.0)
            throw DataError("CPI '" + cpi.label() + "' has a non-positive value at t=" +
                            format_double(o.t));

    auto cpi_at = [&](double t) {
        const Period p = period_containing(t, cpi.frequency());
        const auto idx = cpi.index_at(p.mid_time());
        if (idx < 0)
            throw DataError("CPI '" + cpi.label() + "' does not cover period " + p.str());
        return cpi.observations()[static_cast<std::size_t>(idx)].value;
    };

    // cpi(base): mean over the CPI observations inside the base period; for a
    // base finer than the CPI, the observation containing its midpoint.
    double base_value = 0.0;
    int base_count = 0;
    for (const auto& o : cpi.observations()) {
        if (base.contains(o.t)) {
            base_value += o.value;
            ++base_count;
        }
    }
    if (base_count > 0) {
        base_value /= base_count;
    } else {
        base_value = cpi_at(base.mid_time());
    }

    std::vector<Observation> obs;
    obs.reserve(series.size());
    for (const auto& o : series.observations())
        obs.push_back({o.t, o.value * base_value / cpi_at(o.t)});

    DeflationRecord rec{cpi.label(), base.str()};
    return PriceSeries(series.label(), series.frequency(), Basis::deflated,
                       std::move(obs), std::move(rec));
}

}  // namespace bubble
