#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "bubble/peak_model.hpp"
#include "bubble/series.hpp"

namespace testsup {

inline bubble::PriceSeries make_deflated(std::vector<bubble::Observation> obs,
                                         bubble::Frequency freq = bubble::Frequency::quarterly,
                                         std::string label = "synthetic") {
    return bubble::PriceSeries(std::move(label), freq, bubble::Basis::deflated,
                               std::move(obs),
                               bubble::DeflationRecord{"test-cpi", "2000"});
}

inline bubble::PriceSeries make_nominal(std::vector<bubble::Observation> obs,
                                        bubble::Frequency freq = bubble::Frequency::quarterly,
                                        std::string label = "synthetic") {
    return bubble::PriceSeries(std::move(label), freq, bubble::Basis::nominal,
                               std::move(obs));
}

/// Exact model samples on one side of the peak, as a deflated series.
/// For rising phases the samples run up to and including t2; for falling
/// phases they start at t2.
inline bubble::PriceSeries model_series(const bubble::PeakParams& params, int n_points,
                                        double step = 0.25) {
    std::vector<bubble::Observation> obs;
    if (params.phase == bubble::Phase::rising) {
        for (int i = n_points - 1; i >= 0; --i) {
            const double t = params.t2 - i * step;
            obs.push_back({t, bubble::evaluate(params, t)});
        }
    } else {
        for (int i = 0; i < n_points; ++i) {
            const double t = params.t2 + i * step;
            obs.push_back({t, bubble::evaluate(params, t)});
        }
    }
    return make_deflated(std::move(obs), bubble::frequency_for_step(step));
}

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

inline std::string data_path(const std::string& name) {
    return std::string(BUBBLE_DATA_DIR) + "/" + name;
}

/// Unique scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng{std::random_device{}()};
        path = std::filesystem::temp_directory_path() /
               ("bubble_test_" + tag + "_" + std::to_string(rng()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::filesystem::path file(const std::string& name) const { return path / name; }
};

inline void write_file(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out << bytes;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

}  // namespace testsup
