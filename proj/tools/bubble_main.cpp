// bubble: command-line front end for speculative price-peak analysis.
//
// Subcommands map 1:1 onto library operations; all diagnostics go to
// stderr, all data to files or stdout. Exit codes: 0 success, 1 data
// error, 2 usage error.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bubble/cross_section.hpp"
#include "bubble/errors.hpp"
#include "bubble/format.hpp"
#include "bubble/ingest.hpp"
#include "bubble/json_io.hpp"
#include "bubble/predictor.hpp"
#include "bubble/report.hpp"
#include "bubble/svg_chart.hpp"
#include "bubble/valuation.hpp"
#include "bubble/version.hpp"

namespace {

using nlohmann::json;

struct SeriesFlags {
    std::string period_col = "period";
    std::string value_col = "value";
    std::string label;
};

void add_series_flags(CLI::App* cmd, SeriesFlags& f) {
    cmd->add_option("--period-col", f.period_col, "Name of the period column")
        ->capture_default_str();
    cmd->add_option("--value-col", f.value_col, "Name of the value column")
        ->capture_default_str();
    cmd->add_option("--label", f.label, "Series label (defaults to the file stem)");
}

bubble::PriceSeries load_with(const std::string& path, const SeriesFlags& f) {
    bubble::ColumnSchema schema;
    schema.period_column = f.period_col;
    schema.value_column = f.value_col;
    schema.label = f.label;
    return bubble::load_series(path, schema);
}

/// Period token ("1997Q2") or plain decimal years ("1997.375").
double parse_time(const std::string& token) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec == std::errc() && res.ptr == last &&
        token.find('.') != std::string::npos)
        return v;
    return bubble::Period::parse(token).mid_time();
}

std::pair<double, double> parse_span(const std::string& token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos)
        throw bubble::DataError("span '" + token + "' must look like FROM:TO");
    auto boundary = [](const std::string& part) {
        double v = 0.0;
        const char* first = part.data();
        const char* last = part.data() + part.size();
        auto res = std::from_chars(first, last, v);
        if (res.ec == std::errc() && res.ptr == last &&
            part.find('.') != std::string::npos)
            return v;
        return bubble::Period::parse(part).start_time();
    };
    return {boundary(token.substr(0, colon)), boundary(token.substr(colon + 1))};
}

void emit(const json& doc, const std::string& output) {
    const std::string bytes = bubble::dump_json(doc);
    if (output.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw bubble::DataError("cannot write '" + output + "'");
    out << bytes;
    if (!out) throw bubble::DataError("write failed for '" + output + "'");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bubble::DataError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw bubble::DataError(path + ": malformed JSON: " + e.what());
    }
    return j;
}

std::vector<double> parse_number_list(const std::string& csv) {
    std::vector<double> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        double v = 0.0;
        const char* first = tok.data();
        const char* last = tok.data() + tok.size();
        auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last)
            throw bubble::DataError("not a number: '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw bubble::DataError("empty number list");
    return out;
}

// Two numeric columns from a delimited file, for plain correlations.
std::pair<std::vector<double>, std::vector<double>> load_xy(const std::string& path,
                                                            const std::string& xcol,
                                                            const std::string& ycol) {
    std::ifstream in(path);
    if (!in) throw bubble::DataError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw bubble::DataError(path + ": empty file");
    const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
    auto split = [&](const std::string& l) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream row(l);
        while (std::getline(row, cell, delim)) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' '))
                cell.pop_back();
            while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
            cells.push_back(cell);
        }
        return cells;
    };
    const auto header = split(line);
    int xi = -1, yi = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == xcol) xi = static_cast<int>(i);
        if (header[i] == ycol) yi = static_cast<int>(i);
    }
    if (xi < 0) throw bubble::DataError(path + ": no column named '" + xcol + "'");
    if (yi < 0) throw bubble::DataError(path + ": no column named '" + ycol + "'");
    std::vector<double> xs, ys;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto cells = split(line);
        if (cells.empty() || (cells.size() == 1 && cells[0].empty())) continue;
        if (static_cast<int>(cells.size()) <= std::max(xi, yi))
            throw bubble::DataError(path + ":" + std::to_string(line_no) +
                                    ": malformed row");
        auto parse = [&](const std::string& s) {
            double v = 0.0;
            const char* first = s.data();
            const char* last = s.data() + s.size();
            auto res = std::from_chars(first, last, v);
            if (res.ec != std::errc() || res.ptr != last)
                throw bubble::DataError(path + ":" + std::to_string(line_no) +
                                        ": non-numeric value '" + s + "'");
            return v;
        };
        xs.push_back(parse(cells[static_cast<std::size_t>(xi)]));
        ys.push_back(parse(cells[static_cast<std::size_t>(yi)]));
    }
    return {std::move(xs), std::move(ys)};
}

bubble::SegmentationConfig load_windows(const std::string& path, double factor) {
    auto cfg = bubble::load_segmentation_config(path);
    cfg.ongoing_price_factor = factor;
    return cfg;
}

const bubble::CityEpisodeFit& pick_episode(const std::vector<bubble::CityEpisodeFit>& recs,
                                           int wanted, bool default_last) {
    if (wanted == 0) {
        if (default_last) return recs.back();
        for (const auto& r : recs)
            if (r.falling) return r;
        throw bubble::DataError("no completed episode with a falling fit found");
    }
    for (const auto& r : recs)
        if (r.episode.index == wanted) return r;
    throw bubble::DataError("no episode with index " + std::to_string(wanted));
}

// ---------------------------------------------------------------------------
// subcommand bodies

struct IngestArgs {
    std::string input, output, basis = "nominal", cpi_label, base;
    SeriesFlags flags;
};

void run_ingest(const IngestArgs& a) {
    bubble::PriceSeries series = load_with(a.input, a.flags);
    if (a.basis == "deflated") {
        if (a.cpi_label.empty() || a.base.empty())
            throw bubble::DataError(
                "--basis deflated needs --cpi-label and --base to document the "
                "deflation");
        series = bubble::PriceSeries(series.label(), series.frequency(),
                                     bubble::Basis::deflated, series.observations(),
                                     bubble::DeflationRecord{a.cpi_label, a.base});
    } else if (a.basis != "nominal") {
        throw bubble::DataError("--basis must be nominal or deflated");
    }
    bubble::write_series(series, a.output);
    std::cerr << "wrote " << series.size() << " observations ("
              << bubble::frequency_name(series.frequency()) << ", "
              << bubble::basis_name(series.basis()) << ") to " << a.output << "\n";
}

struct DeflateArgs {
    std::string series, cpi, base, output;
    SeriesFlags flags, cpi_flags;
};

void run_deflate(const DeflateArgs& a) {
    const auto nominal = load_with(a.series, a.flags);
    const auto cpi = load_with(a.cpi, a.cpi_flags);
    const auto base = bubble::Period::parse(a.base);
    const auto deflated = bubble::deflate(nominal, cpi, base);
    bubble::write_series(deflated, a.output);
    std::cerr << "deflated '" << deflated.label() << "' to constant " << base.str()
              << " currency using CPI '" << cpi.label() << "'\n";
}

struct SegmentArgs {
    std::string series, windows, output;
    double ongoing_factor = 1.1;
    bool fit = false;
    SeriesFlags flags;
};

void run_segment(const SegmentArgs& a) {
    const auto series = load_with(a.series, a.flags);
    const auto cfg = load_windows(a.windows, a.ongoing_factor);
    if (a.fit) {
        const auto recs = bubble::compare_city(series, cfg);
        emit(bubble::city_document(series.label(), recs, cfg.ongoing_price_factor),
             a.output);
    } else {
        const auto episodes = bubble::segment_episodes(series, cfg);
        emit(bubble::episodes_document(series.label(), episodes,
                                       cfg.ongoing_price_factor),
             a.output);
    }
}

struct FitArgs {
    std::string series, peak, phase = "rising", from, to, output;
    double p2 = 0.0;
    bool oracle = false;
    bubble::OracleGrid grid;
    SeriesFlags flags;
};

void run_fit(const FitArgs& a) {
    const auto series = load_with(a.series, a.flags);
    const double t2 = parse_time(a.peak);
    const double p2 = a.p2 > 0.0 ? a.p2 : series.value_at(t2);
    const auto phase = bubble::phase_from_name(a.phase);
    const double lo = a.from.empty()
                          ? (phase == bubble::Phase::rising ? series.front().t : t2)
                          : parse_time(a.from);
    const double hi = a.to.empty()
                          ? (phase == bubble::Phase::falling ? series.back().t : t2)
                          : parse_time(a.to);
    const auto segment = bubble::slice(series, lo, hi);
    const auto fit = bubble::fit_phase(segment, t2, p2, phase);
    json doc = bubble::fit_document(fit, series.label());
    if (a.oracle) {
        const auto params = bubble::fit_phase_oracle(segment, t2, p2, phase, a.grid);
        doc["oracle"] = {{"alpha", params.alpha}, {"tau", params.tau}};
    }
    emit(doc, a.output);
}

struct PredictArgs {
    std::string current, reference, output;
    int current_episode = 0;    // 0 = last
    int reference_episode = 0;  // 0 = first completed
    double horizon = 10.0;
    double alpha_threshold = 0.40;
    double tau_threshold = 0.25;
};

void run_predict(const PredictArgs& a) {
    const auto current_recs = bubble::city_fits_from_document(read_json_file(a.current));
    const auto reference_recs =
        bubble::city_fits_from_document(read_json_file(a.reference));
    const auto& cur = pick_episode(current_recs, a.current_episode, true);
    const auto& ref = pick_episode(reference_recs, a.reference_episode, false);
    if (!ref.falling)
        throw bubble::DataError("reference episode " +
                                std::to_string(ref.episode.index) +
                                " has no falling fit; the reference must be completed");
    const bubble::SimilarityThresholds thresholds{a.alpha_threshold, a.tau_threshold};
    const auto trajectory = bubble::predict_decline(
        cur.episode, cur.rising, ref.episode, ref.rising, *ref.falling, a.horizon,
        thresholds);
    if (!trajectory.similarity.similar)
        std::cerr << "warning: rising phases are not similar under the configured "
                     "thresholds (alpha diff "
                  << bubble::format_double(trajectory.similarity.alpha_diff_vs_reference)
                  << ", tau diff "
                  << bubble::format_double(trajectory.similarity.tau_diff_vs_reference)
                  << " vs reference); the trajectory is flagged, not suppressed\n";
    emit(bubble::prediction_document(trajectory), a.output);
}

struct MultiplierArgs {
    std::string classes, mean_of, output;
    double confidence = 0.95;
};

void run_multiplier(const MultiplierArgs& a) {
    if (a.classes.empty() == a.mean_of.empty())
        throw bubble::DataError("pass exactly one of --classes or --mean-of");
    if (!a.classes.empty()) {
        const auto points = bubble::load_class_amplitudes(a.classes);
        const auto fit = bubble::multiplier_fit(points, a.confidence);
        emit(bubble::multiplier_document(
                 fit, std::filesystem::path(a.classes).stem().string()),
             a.output);
        return;
    }
    const auto ms = parse_number_list(a.mean_of);
    json doc;
    doc["schema_version"] = bubble::kSchemaVersion;
    doc["mean_m"] = bubble::mean_m(ms);
    doc["n"] = ms.size();
    emit(doc, a.output);
}

struct YieldArgs {
    std::string prices, rents, output;
    SeriesFlags price_flags, rent_flags;
};

void run_yield(const YieldArgs& a) {
    const auto prices = load_with(a.prices, a.price_flags);
    const auto rents = load_with(a.rents, a.rent_flags);
    const auto points = bubble::yield_series(prices, rents);
    emit(bubble::yield_document(points, prices.label() + "/" + rents.label()), a.output);
}

struct CorrelateArgs {
    std::string file, x_col, y_col, output;
    double level = 0.95;
};

void run_correlate(const CorrelateArgs& a) {
    const auto [xs, ys] = load_xy(a.file, a.x_col, a.y_col);
    const auto result = bubble::correlation(xs, ys, a.level);
    emit(bubble::correlation_document(result), a.output);
}

struct GrowthArgs {
    std::string series, span1, span2, output;
    SeriesFlags flags;
};

void run_growth(const GrowthArgs& a) {
    const auto series = load_with(a.series, a.flags);
    const auto result =
        bubble::growth_ratio(series, parse_span(a.span1), parse_span(a.span2));
    emit(bubble::growth_document(result, series.label()), a.output);
}

struct ValuationArgs {
    std::string scenario, output;
};

void run_valuation(const ValuationArgs& a) {
    const auto scenario = bubble::load_scenario(a.scenario);
    emit(bubble::valuation_document(bubble::run_scenario(scenario)), a.output);
}

struct PlotArgs {
    std::vector<std::string> series_files;
    std::vector<std::string> right_axis_files;
    std::string trajectory_file, output, title, x_label, y_label = "index", y2_label;
    SeriesFlags flags;
};

void run_plot(const PlotArgs& a) {
    std::vector<bubble::ChartSeries> chart;
    for (const auto& f : a.series_files) {
        const auto s = load_with(f, a.flags);
        chart.push_back({s.label(), s.observations(), "", false, false});
    }
    for (const auto& f : a.right_axis_files) {
        const auto s = load_with(f, a.flags);
        chart.push_back({s.label(), s.observations(), "", false, true});
    }
    if (!a.trajectory_file.empty()) {
        const json doc = read_json_file(a.trajectory_file);
        bubble::ChartSeries traj;
        traj.label = "predicted decline";
        traj.dashed = true;
        try {
            for (const auto& p : doc.at("trajectory"))
                traj.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        } catch (const json::exception& e) {
            throw bubble::DataError(a.trajectory_file + ": not a prediction report: " +
                                    e.what());
        }
        chart.push_back(std::move(traj));
    }
    bubble::ChartSpec spec;
    spec.title = a.title;
    spec.x_label = a.x_label.empty() ? "year" : a.x_label;
    spec.y_label = a.y_label;
    spec.y2_label = a.y2_label;
    const std::string svg = bubble::render_chart(spec, chart);
    std::ofstream out(a.output, std::ios::binary);
    if (!out) throw bubble::DataError("cannot write '" + a.output + "'");
    out << svg;
    if (!out) throw bubble::DataError("write failed for '" + a.output + "'");
}

struct ReportArgs {
    std::string prices, cpi, base, windows, rents, output;
    double horizon = 10.0;
    double ongoing_factor = 1.1;
    double alpha_threshold = 0.40;
    double tau_threshold = 0.25;
    SeriesFlags price_flags, cpi_flags, rent_flags;
};

void run_report(const ReportArgs& a) {
    const auto nominal = load_with(a.prices, a.price_flags);
    const auto cpi = load_with(a.cpi, a.cpi_flags);
    const auto base = bubble::Period::parse(a.base);
    const auto deflated = bubble::deflate(nominal, cpi, base);
    const auto cfg = load_windows(a.windows, a.ongoing_factor);
    const auto recs = bubble::compare_city(deflated, cfg);
    const auto& cur = pick_episode(recs, 0, true);
    const auto& ref = pick_episode(recs, 0, false);
    if (cur.episode.index == ref.episode.index)
        throw bubble::DataError("need at least one completed reference episode and a "
                                "distinct current episode");
    const bubble::SimilarityThresholds thresholds{a.alpha_threshold, a.tau_threshold};
    const auto trajectory =
        bubble::predict_decline(cur.episode, cur.rising, ref.episode, ref.rising,
                                *ref.falling, a.horizon, thresholds);
    if (!trajectory.similarity.similar)
        std::cerr << "warning: rising phases are not similar under the configured "
                     "thresholds; the projection is flagged in prediction.json\n";

    std::vector<bubble::ChartSeries> chart;
    chart.push_back({deflated.label() + " (deflated)", deflated.observations(), "",
                     false, false});
    chart.push_back({"predicted decline", trajectory.series.observations(), "", true,
                     false});

    std::optional<json> yields_doc;
    if (!a.rents.empty()) {
        const auto rents = load_with(a.rents, a.rent_flags);
        const double lo = std::max(nominal.front().t, rents.front().t);
        const double hi = std::min(nominal.back().t, rents.back().t);
        const auto points = bubble::yield_series(bubble::slice(nominal, lo, hi),
                                                 bubble::slice(rents, lo, hi));
        yields_doc =
            bubble::yield_document(points, nominal.label() + "/" + rents.label());
        bubble::ChartSeries ys;
        ys.label = "gross yield";
        ys.right_axis = true;
        for (const auto& p : points) ys.points.push_back({p.t, p.yield * 100.0});
        chart.push_back(std::move(ys));
    }
    bubble::ChartSpec spec;
    spec.title = deflated.label() + ": speculative episodes and projected decline";
    spec.x_label = "year";
    spec.y_label = "price index, constant currency";
    spec.y2_label = "yield (percent)";

    bubble::RunManifest manifest;
    manifest.command = "report";
    manifest.tool_version = bubble::kToolVersion;
    manifest.inputs.push_back(bubble::digest_input(a.prices));
    manifest.inputs.push_back(bubble::digest_input(a.cpi));
    manifest.inputs.push_back(bubble::digest_input(a.windows));
    if (!a.rents.empty()) manifest.inputs.push_back(bubble::digest_input(a.rents));
    manifest.parameters["base"] = base.str();
    manifest.parameters["horizon"] = bubble::format_double(a.horizon);
    manifest.parameters["ongoing_price_factor"] = bubble::format_double(a.ongoing_factor);
    manifest.parameters["alpha_threshold"] = bubble::format_double(a.alpha_threshold);
    manifest.parameters["tau_threshold"] = bubble::format_double(a.tau_threshold);

    std::vector<bubble::ReportFile> files;
    files.push_back({"deflated.csv", bubble::series_to_csv(deflated)});
    files.push_back({"deflated.csv.meta.json", bubble::series_meta_json(deflated)});
    files.push_back({"episodes.json",
                     bubble::dump_json(bubble::city_document(
                         deflated.label(), recs, cfg.ongoing_price_factor))});
    files.push_back(
        {"prediction.json", bubble::dump_json(bubble::prediction_document(trajectory))});
    if (yields_doc) files.push_back({"yields.json", bubble::dump_json(*yields_doc)});
    files.push_back({"overview.svg", bubble::render_chart(spec, chart)});
    bubble::write_report(a.output, std::move(manifest), files);
    std::cerr << "report bundle written to " << a.output << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"speculative price-peak analysis: ingestion, deflation, episode "
                 "segmentation, stretched-exponential fits, decline prediction, "
                 "cross-sectional statistics, valuation arithmetic and SVG charts"};
    app.set_version_flag("--version", bubble::kToolVersion);
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand(
        "ingest", "Load, validate and normalize a delimited index file");
    ingest->add_option("--input", ingest_args.input, "Delimited input file")->required();
    ingest->add_option("--output", ingest_args.output, "Normalized CSV output")
        ->required();
    add_series_flags(ingest, ingest_args.flags);
    ingest->add_option("--basis", ingest_args.basis,
                       "Mark the data nominal or already deflated")
        ->capture_default_str();
    ingest->add_option("--cpi-label", ingest_args.cpi_label,
                       "With --basis deflated: which CPI produced the data");
    ingest->add_option("--base", ingest_args.base,
                       "With --basis deflated: base period of the deflation");
    ingest->callback([&] { run_ingest(ingest_args); });

    DeflateArgs deflate_args;
    auto* deflate = app.add_subcommand("deflate", "Rebase a nominal series to constant "
                                                  "currency of a base period");
    deflate->add_option("--series", deflate_args.series, "Nominal series CSV")
        ->required();
    deflate->add_option("--cpi", deflate_args.cpi, "CPI series CSV")->required();
    deflate->add_option("--base", deflate_args.base, "Base period, e.g. 2015Q3")
        ->required();
    deflate->add_option("--output", deflate_args.output, "Deflated CSV output")
        ->required();
    add_series_flags(deflate, deflate_args.flags);
    deflate->callback([&] { run_deflate(deflate_args); });

    SegmentArgs segment_args;
    auto* segment = app.add_subcommand(
        "segment", "Locate speculative episodes on a deflated series");
    segment->add_option("--series", segment_args.series, "Deflated series CSV")
        ->required();
    segment->add_option("--windows", segment_args.windows,
                        "JSON array of {label, window_start, window_end}")
        ->required();
    segment->add_flag("--fit", segment_args.fit,
                      "Also fit (alpha, tau) for each episode phase");
    segment->add_option("--ongoing-factor", segment_args.ongoing_factor,
                        "Last value must exceed this multiple of the start price for "
                        "an episode to stay open")
        ->capture_default_str();
    segment->add_option("--output", segment_args.output,
                        "Write JSON here instead of stdout");
    add_series_flags(segment, segment_args.flags);
    segment->callback([&] { run_segment(segment_args); });

    FitArgs fit_args;
    auto* fit =
        app.add_subcommand("fit", "Estimate (alpha, tau) for one phase of one peak");
    fit->add_option("--series", fit_args.series, "Deflated series CSV")->required();
    fit->add_option("--peak", fit_args.peak, "Peak period (1997Q2) or decimal years")
        ->required();
    fit->add_option("--phase", fit_args.phase, "rising or falling")->required();
    fit->add_option("--p2", fit_args.p2,
                    "Peak price (defaults to the series value at --peak)");
    fit->add_option("--from", fit_args.from, "Phase start period (rising phases)");
    fit->add_option("--to", fit_args.to, "Phase end period (falling phases)");
    fit->add_flag("--oracle", fit_args.oracle,
                  "Also run the brute-force grid oracle and report its optimum");
    fit->add_option("--oracle-alpha-step", fit_args.grid.alpha_step, "Oracle grid step")
        ->capture_default_str();
    fit->add_option("--oracle-tau-step", fit_args.grid.tau_step, "Oracle grid step")
        ->capture_default_str();
    fit->add_option("--output", fit_args.output, "Write JSON here instead of stdout");
    add_series_flags(fit, fit_args.flags);
    fit->callback([&] { run_fit(fit_args); });

    PredictArgs predict_args;
    auto* predict = app.add_subcommand(
        "predict", "Project a decline from a completed reference episode");
    predict->add_option("--current", predict_args.current,
                        "Episodes-with-fits JSON for the current market (segment --fit)")
        ->required();
    predict->add_option("--reference", predict_args.reference,
                        "Episodes-with-fits JSON holding the completed reference")
        ->required();
    predict->add_option("--horizon", predict_args.horizon, "Projection horizon in years")
        ->capture_default_str();
    predict->add_option("--current-episode", predict_args.current_episode,
                        "Episode index to project (default: the last one)");
    predict->add_option("--reference-episode", predict_args.reference_episode,
                        "Reference episode index (default: first completed)");
    predict->add_option("--alpha-threshold", predict_args.alpha_threshold,
                        "Similarity threshold on alpha, relative to the reference")
        ->capture_default_str();
    predict->add_option("--tau-threshold", predict_args.tau_threshold,
                        "Similarity threshold on tau, relative to the reference")
        ->capture_default_str();
    predict->add_option("--output", predict_args.output,
                        "Write JSON here instead of stdout");
    predict->callback([&] { run_predict(predict_args); });

    MultiplierArgs multiplier_args;
    auto* multiplier = app.add_subcommand(
        "multiplier", "Regress episode amplitude on log initial price");
    multiplier->add_option("--classes", multiplier_args.classes,
                           "CSV of class_label,p1,A1 rows");
    multiplier->add_option("--mean-of", multiplier_args.mean_of,
                           "Comma-separated per-class slopes to average");
    multiplier->add_option("--confidence", multiplier_args.confidence,
                           "Confidence level for the correlation interval")
        ->capture_default_str();
    multiplier->add_option("--output", multiplier_args.output,
                           "Write JSON here instead of stdout");
    multiplier->callback([&] { run_multiplier(multiplier_args); });

    YieldArgs yield_args;
    auto* yield = app.add_subcommand(
        "yield", "Pointwise rent/price yield and price-earnings ratio");
    yield->add_option("--prices", yield_args.prices, "Price series CSV")->required();
    yield->add_option("--rents", yield_args.rents, "Annual-rent series CSV")->required();
    yield->add_option("--output", yield_args.output, "Write JSON here instead of stdout");
    yield->callback([&] { run_yield(yield_args); });

    CorrelateArgs correlate_args;
    auto* correlate = app.add_subcommand(
        "correlate", "Pearson correlation with a Fisher confidence interval");
    correlate->add_option("--file", correlate_args.file, "Delimited file")->required();
    correlate->add_option("--x-col", correlate_args.x_col, "First column")->required();
    correlate->add_option("--y-col", correlate_args.y_col, "Second column")->required();
    correlate->add_option("--level", correlate_args.level, "Confidence level")
        ->capture_default_str();
    correlate->add_option("--output", correlate_args.output,
                          "Write JSON here instead of stdout");
    correlate->callback([&] { run_correlate(correlate_args); });

    GrowthArgs growth_args;
    auto* growth = app.add_subcommand(
        "growth", "Compound annual growth over two spans and their ratio");
    growth->add_option("--series", growth_args.series, "Series CSV")->required();
    growth->add_option("--span1", growth_args.span1, "First span, FROM:TO")->required();
    growth->add_option("--span2", growth_args.span2, "Second span, FROM:TO")->required();
    growth->add_option("--output", growth_args.output,
                       "Write JSON here instead of stdout");
    add_series_flags(growth, growth_args.flags);
    growth->callback([&] { run_growth(growth_args); });

    ValuationArgs valuation_args;
    auto* valuation = app.add_subcommand(
        "valuation", "Housing-stock valuation arithmetic from a scenario file");
    valuation->add_option("--scenario", valuation_args.scenario, "Scenario JSON")
        ->required();
    valuation->add_option("--output", valuation_args.output,
                          "Write JSON here instead of stdout");
    valuation->callback([&] { run_valuation(valuation_args); });

    PlotArgs plot_args;
    auto* plot = app.add_subcommand("plot", "Render series and projections as SVG");
    plot->add_option("--series", plot_args.series_files, "Series CSV (repeatable)");
    plot->add_option("--right-axis", plot_args.right_axis_files,
                     "Series drawn against the right-hand axis (repeatable)");
    plot->add_option("--trajectory", plot_args.trajectory_file,
                     "Prediction JSON drawn dashed");
    plot->add_option("--title", plot_args.title, "Chart title");
    plot->add_option("--x-label", plot_args.x_label, "X axis label");
    plot->add_option("--y-label", plot_args.y_label, "Y axis label")
        ->capture_default_str();
    plot->add_option("--y2-label", plot_args.y2_label, "Right axis label");
    plot->add_option("--output", plot_args.output, "SVG output path")->required();
    add_series_flags(plot, plot_args.flags);
    plot->callback([&] { run_plot(plot_args); });

    ReportArgs report_args;
    auto* report = app.add_subcommand(
        "report", "Full pipeline: deflate, segment, fit, predict, chart, bundle");
    report->add_option("--prices", report_args.prices, "Nominal price series CSV")
        ->required();
    report->add_option("--cpi", report_args.cpi, "CPI series CSV")->required();
    report->add_option("--base", report_args.base, "Deflation base period")->required();
    report->add_option("--windows", report_args.windows, "Segmentation windows JSON")
        ->required();
    report->add_option("--rents", report_args.rents,
                       "Optional rent series for the yield panel");
    report->add_option("--horizon", report_args.horizon, "Projection horizon in years")
        ->capture_default_str();
    report->add_option("--ongoing-factor", report_args.ongoing_factor,
                       "Ongoing-episode price factor")
        ->capture_default_str();
    report->add_option("--alpha-threshold", report_args.alpha_threshold,
                       "Similarity threshold on alpha")
        ->capture_default_str();
    report->add_option("--tau-threshold", report_args.tau_threshold,
                       "Similarity threshold on tau")
        ->capture_default_str();
    report->add_option("--output", report_args.output, "Bundle directory")->required();
    report->callback([&] { run_report(report_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const bubble::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
