#include <doctest.h>

#include <cmath>
#include <vector>

#include "bubble/cross_section.hpp"
#include "bubble/errors.hpp"
#include "bubble/ingest.hpp"
#include "test_support.hpp"

using namespace bubble;
using testsup::make_nominal;

TEST_CASE("normal_quantile: reference values") {
    CHECK(std::fabs(normal_quantile(0.975) - 1.9599639845400542) < 1e-12);
    CHECK(std::fabs(normal_quantile(0.995) - 2.5758293035489008) < 1e-12);
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(normal_quantile(0.8413447460685429) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(normal_quantile(0.025) == doctest::Approx(-normal_quantile(0.975)).epsilon(1e-12));
    CHECK_THROWS_AS(normal_quantile(0.0), DataError);
    CHECK_THROWS_AS(normal_quantile(1.0), DataError);
}

TEST_CASE("fisher_interval: the published figure-1 case") {
    // r = -0.76, n = 28, 0.95 -> about (-0.88, -0.54)
    const auto ci = fisher_interval(-0.76, 28, 0.95);
    CHECK(std::fabs(ci.lo - (-0.8827759812806417)) < 1e-12);
    CHECK(std::fabs(ci.hi - (-0.5400472361641910)) < 1e-12);
    CHECK(std::fabs(ci.lo - (-0.88)) < 0.01);
    CHECK(std::fabs(ci.hi - (-0.54)) < 0.01);
}

TEST_CASE("fisher_interval: degenerate cases stay inside [-1, 1]") {
    const auto exact = fisher_interval(1.0, 10, 0.95);
    CHECK(exact.lo == 1.0);
    CHECK(exact.hi == 1.0);
    const auto tiny = fisher_interval(0.5, 3, 0.95);
    CHECK(tiny.lo == -1.0);
    CHECK(tiny.hi == 1.0);
    CHECK_THROWS_AS(fisher_interval(1.5, 10, 0.95), DataError);
    CHECK_THROWS_AS(fisher_interval(0.5, 10, 1.0), DataError);
}

TEST_CASE("multiplier_fit: exact line recovers slope, intercept and r = 1") {
    // A1 = 2.3 ln(p1) + 1
    std::vector<ClassAmplitude> points;
    for (double p1 : {5.0, 9.0, 14.0, 22.0, 40.0})
        points.push_back({"c", p1, 2.3 * std::log(p1) + 1.0});
    const auto fit = multiplier_fit(points);
    CHECK(fit.m == doctest::Approx(2.3).epsilon(1e-12));
    CHECK(fit.b == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.stderr_m == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fit.n == 5);
    CHECK(fit.r_ci.lo == fit.r_ci.hi);
}

TEST_CASE("multiplier_fit: scaling all initial prices shifts only the intercept") {
    std::vector<ClassAmplitude> points;
    for (double p1 : {5.0, 9.0, 14.0, 22.0})
        points.push_back({"c", p1, 8.0 - 1.5 * std::log(p1)});
    const auto base = multiplier_fit(points);
    const double k = 3.7;
    for (auto& c : points) c.p1 *= k;
    const auto scaled = multiplier_fit(points);
    CHECK(scaled.m == doctest::Approx(base.m).epsilon(1e-9));
    CHECK(scaled.b == doctest::Approx(base.b - base.m * std::log(k)).epsilon(1e-9));
    CHECK(scaled.r == doctest::Approx(base.r).epsilon(1e-12));
}

TEST_CASE("multiplier_fit: errors") {
    std::vector<ClassAmplitude> two = {{"a", 1.0, 2.0}, {"b", 2.0, 3.0}};
    CHECK_THROWS_AS(multiplier_fit(two), DataError);
    std::vector<ClassAmplitude> same = {{"a", 5.0, 2.0}, {"b", 5.0, 3.0}, {"c", 5.0, 4.0}};
    CHECK_THROWS_WITH_AS(multiplier_fit(same), doctest::Contains("zero variance"),
                         DataError);
}

TEST_CASE("multiplier_fit: published per-location size-class data") {
    const auto island =
        multiplier_fit(load_class_amplitudes(testsup::data_path("hk_amplitudes_island.csv")));
    CHECK(island.m < 0.0);
    CHECK(island.m > -2.8);
    CHECK(island.m < -0.8);
    CHECK(island.r == doctest::Approx(-0.89).epsilon(0.03));

    const auto nt =
        multiplier_fit(load_class_amplitudes(testsup::data_path("hk_amplitudes_nt.csv")));
    CHECK(nt.m < 0.0);
    CHECK(nt.m > -6.6);
    CHECK(nt.m < -3.8);
    CHECK(nt.r == doctest::Approx(-0.97).epsilon(0.02));
}

TEST_CASE("sign test: m is positive across locations within every size class") {
    const auto island = load_class_amplitudes(testsup::data_path("hk_amplitudes_island.csv"));
    const auto nt = load_class_amplitudes(testsup::data_path("hk_amplitudes_nt.csv"));
    REQUIRE(island.size() == nt.size());
    for (std::size_t i = 0; i < island.size(); ++i) {
        const double slope = (island[i].a1 - nt[i].a1) /
                             (std::log(island[i].p1) - std::log(nt[i].p1));
        CHECK(slope > 0.0);
    }
}

TEST_CASE("mean_m") {
    CHECK(mean_m({3.9, 1.4, 1.5, 1.9, 3.0}) == doctest::Approx(2.34).epsilon(1e-12));
    CHECK(mean_m({7.25}) == 7.25);
    CHECK(mean_m({-1.0, 1.0}) == 0.0);
    CHECK_THROWS_AS(mean_m({}), DataError);
}

TEST_CASE("yield_series: published ratio anchors") {
    // PER 35 -> yield 2.857%; price = 20 * rent -> yield 5%
    const auto prices = make_nominal({{2015.625, 35.0}, {2015.875, 20.0}});
    const auto rents = make_nominal({{2015.625, 1.0}, {2015.875, 1.0}});
    const auto pts = yield_series(prices, rents);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].per == doctest::Approx(35.0).epsilon(1e-12));
    CHECK(pts[0].yield == doctest::Approx(1.0 / 35.0).epsilon(1e-12));
    CHECK(pts[0].yield * 100.0 == doctest::Approx(2.857).epsilon(1e-3));
    CHECK(pts[1].yield == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("yield_series: scale invariance and the exact product identity") {
    std::vector<Observation> po, ro;
    for (int i = 0; i < 12; ++i) {
        po.push_back({2003.125 + 0.25 * i, 20.0 + 3.0 * i});
        ro.push_back({2003.125 + 0.25 * i, 1.2 + 0.02 * i});
    }
    const auto base = yield_series(make_nominal(po), make_nominal(ro));
    for (const auto& p : base) CHECK(std::fabs(p.yield * p.per - 1.0) <= 1e-12);

    auto po2 = po;
    auto ro2 = ro;
    for (auto& o : po2) o.value *= 9.5;
    for (auto& o : ro2) o.value *= 9.5;
    const auto scaled = yield_series(make_nominal(po2), make_nominal(ro2));
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(scaled[i].yield == doctest::Approx(base[i].yield).epsilon(1e-12));
}

TEST_CASE("yield_series: alignment and positivity errors") {
    const auto p3 = make_nominal({{2003.125, 10.0}, {2003.375, 11.0}, {2003.625, 12.0}});
    const auto r2 = make_nominal({{2003.125, 1.0}, {2003.375, 1.0}});
    CHECK_THROWS_WITH_AS(yield_series(p3, r2), doctest::Contains("lengths"), DataError);

    const auto shifted = make_nominal({{2003.375, 1.0}, {2003.625, 1.0}, {2003.875, 1.0}});
    CHECK_THROWS_WITH_AS(yield_series(p3, shifted), doctest::Contains("misaligned"),
                         DataError);

    const auto rent0 = make_nominal({{2003.125, 1.0}, {2003.375, 0.0}, {2003.625, 1.0}});
    CHECK_THROWS_WITH_AS(yield_series(p3, rent0), doctest::Contains("rent"), DataError);

    const auto annual_r =
        make_nominal({{2003.5, 1.0}, {2004.5, 1.0}, {2005.5, 1.0}}, Frequency::annual);
    CHECK_THROWS_WITH_AS(yield_series(p3, annual_r), doctest::Contains("frequencies"),
                         DataError);
}

TEST_CASE("yield_series: sample data erode from 6.2% toward 3%") {
    const auto prices = load_series(testsup::data_path("hk_nt_small_price_khkd.csv"));
    const auto rents = load_series(testsup::data_path("hk_nt_small_rent_khkd.csv"));
    const auto pts = yield_series(prices, rents);
    CHECK(pts.front().yield == doctest::Approx(0.062).epsilon(0.02));
    double min_yield = 1.0, max_per = 0.0;
    for (const auto& p : pts) {
        min_yield = std::min(min_yield, p.yield);
        max_per = std::max(max_per, p.per);
        CHECK(std::fabs(p.yield * p.per - 1.0) <= 1e-12);
    }
    CHECK(min_yield < 0.031);
    CHECK(max_per > 32.0);
    CHECK(max_per < 36.0);
}

namespace {

// 28 points with sample correlation exactly -0.76: y = r*x_hat + sqrt(1-r^2)*e_hat
// with e orthogonalized against {1, x}
std::pair<std::vector<double>, std::vector<double>> exact_correlation_sample(double r) {
    const int n = 28;
    std::vector<double> x(n), e(n);
    for (int i = 0; i < n; ++i) {
        x[i] = 1.0 + i;
        e[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + (i * 37) % 11);
    }
    auto mean = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (double u : v) s += u;
        return s / v.size();
    };
    const double mx = mean(x);
    std::vector<double> xc(n);
    for (int i = 0; i < n; ++i) xc[i] = x[i] - mx;
    const double me = mean(e);
    for (int i = 0; i < n; ++i) e[i] -= me;
    double dot = 0.0, xx = 0.0;
    for (int i = 0; i < n; ++i) {
        dot += e[i] * xc[i];
        xx += xc[i] * xc[i];
    }
    for (int i = 0; i < n; ++i) e[i] -= dot / xx * xc[i];
    double ee = 0.0;
    for (int i = 0; i < n; ++i) ee += e[i] * e[i];
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i)
        y[i] = r * xc[i] / std::sqrt(xx) + std::sqrt(1.0 - r * r) * e[i] / std::sqrt(ee);
    return {x, y};
}

}  // namespace

TEST_CASE("correlation: exact lines and the figure-1 confidence interval") {
    std::vector<double> xs = {1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(2.0 * x + 1.0);
    const auto lin = correlation(xs, ys);
    CHECK(lin.r == doctest::Approx(1.0).epsilon(1e-12));

    const auto [x76, y76] = exact_correlation_sample(-0.76);
    const auto res = correlation(x76, y76, 0.95);
    CHECK(res.r == doctest::Approx(-0.76).epsilon(1e-12));
    CHECK(res.n == 28);
    CHECK(std::fabs(res.ci.lo - (-0.88)) < 0.01);
    CHECK(std::fabs(res.ci.hi - (-0.54)) < 0.01);
}

TEST_CASE("correlation: symmetry, antisymmetry and interval shrinkage") {
    const auto [xs, ys] = exact_correlation_sample(0.5);
    const auto ab = correlation(xs, ys);
    const auto ba = correlation(ys, xs);
    CHECK(ab.r == doctest::Approx(ba.r).epsilon(1e-12));

    auto neg = ys;
    for (double& v : neg) v = -v;
    const auto flipped = correlation(xs, neg);
    CHECK(flipped.r == doctest::Approx(-ab.r).epsilon(1e-12));
    CHECK(flipped.ci.lo == doctest::Approx(-ab.ci.hi).epsilon(1e-9));
    CHECK(flipped.ci.hi == doctest::Approx(-ab.ci.lo).epsilon(1e-9));

    // same r, more points: the interval tightens
    const auto wide = fisher_interval(0.5, 10, 0.95);
    const auto narrow = fisher_interval(0.5, 40, 0.95);
    CHECK(narrow.hi - narrow.lo < wide.hi - wide.lo);
}

TEST_CASE("correlation: errors") {
    std::vector<double> a = {1.0, 2.0, 3.0};
    std::vector<double> b = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(correlation(a, b), DataError);
    CHECK_THROWS_AS(correlation(a, a), DataError);  // n < 4
    std::vector<double> flat = {2.0, 2.0, 2.0, 2.0};
    std::vector<double> vary = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_WITH_AS(correlation(flat, vary), doctest::Contains("zero variance"),
                         DataError);
}

TEST_CASE("growth_ratio: flat series, doubling, and span resolution") {
    std::vector<Observation> flat;
    for (int y = 0; y < 6; ++y) flat.push_back({1990.5 + y, 42.0});
    const auto s = make_nominal(flat, Frequency::annual);
    const auto g = growth_ratio(s, {1990.0, 1992.0}, {1992.0, 1995.0});
    CHECK(g.span1.annual_rate == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(g.span2.annual_rate == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::isnan(g.ratio));  // 0/0: no defined ratio for a flat first span

    std::vector<Observation> dbl;
    for (int y = 0; y < 4; ++y) dbl.push_back({2000.5 + y, 100.0 * std::pow(2.0, y)});
    const auto d = make_nominal(dbl, Frequency::annual);
    const auto gd = growth_ratio(d, {2000.0, 2001.0}, {2001.0, 2003.0});
    CHECK(gd.span1.annual_rate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gd.span2.annual_rate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gd.ratio == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(growth_ratio(d, {2000.0, 2000.0}, {2001.0, 2003.0}), DataError);
    CHECK_THROWS_AS(growth_ratio(d, {1980.0, 2001.0}, {2001.0, 2003.0}), DataError);
}

TEST_CASE("growth_ratio: sample GDP reproduces 12% and 6.5% annual growth") {
    const auto gdp = load_series(testsup::data_path("hk_real_gdp.csv"));
    const auto g = growth_ratio(gdp, {1992.0, 1997.0}, {1997.0, 2002.0});
    CHECK(g.span1.annual_rate == doctest::Approx(0.12).epsilon(2e-3));
    CHECK(g.span2.annual_rate == doctest::Approx(0.065).epsilon(2e-3));
    // full-precision ratio: 6.5/12 = 0.5417 (published tables round to 0.56)
    CHECK(g.ratio == doctest::Approx(0.065 / 0.12).epsilon(5e-3));
}

TEST_CASE("growth_ratio: scale invariance") {
    std::vector<Observation> obs;
    for (int y = 0; y < 8; ++y) obs.push_back({1995.5 + y, 50.0 * std::pow(1.07, y)});
    const auto s = make_nominal(obs, Frequency::annual);
    auto scaled_obs = obs;
    for (auto& o : scaled_obs) o.value *= 1234.5;
    const auto scaled = make_nominal(scaled_obs, Frequency::annual);
    const auto a = growth_ratio(s, {1995.0, 1999.0}, {1999.0, 2002.0});
    const auto b = growth_ratio(scaled, {1995.0, 1999.0}, {1999.0, 2002.0});
    CHECK(a.span1.annual_rate == doctest::Approx(b.span1.annual_rate).epsilon(1e-12));
    CHECK(a.ratio == doctest::Approx(b.ratio).epsilon(1e-12));
}
