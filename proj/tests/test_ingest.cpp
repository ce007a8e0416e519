#include <doctest.h>

#include <cmath>
#include <random>

#include "bubble/errors.hpp"
#include "bubble/ingest.hpp"
#include "test_support.hpp"

using namespace bubble;
using testsup::TempDir;
using testsup::write_file;

namespace {

PriceSeries load_text(const TempDir& dir, const std::string& name,
                      const std::string& text, const ColumnSchema& schema = {}) {
    write_file(dir.file(name), text);
    return load_series(dir.file(name), schema);
}

}  // namespace

TEST_CASE("load_series: quarterly happy path") {
    TempDir dir("ingest");
    const auto s = load_text(dir, "q.csv",
                             "period,value\n2003Q1,21.3\n2003Q2,22.0\n2003Q3,22.5\n");
    REQUIRE(s.size() == 3);
    CHECK(s.frequency() == Frequency::quarterly);
    CHECK(s.basis() == Basis::nominal);
    CHECK(s.observations()[0].t == doctest::Approx(2003.125).epsilon(1e-12));
    CHECK(s.observations()[0].value == 21.3);
    CHECK(s.observations()[2].value == 22.5);
    CHECK(s.label() == "q");
}

TEST_CASE("load_series: rows out of order are sorted") {
    TempDir dir("ingest");
    const auto s = load_text(dir, "q.csv",
                             "period,value\n2003Q3,22.5\n2003Q1,21.3\n2003Q2,22.0\n");
    REQUIRE(s.size() == 3);
    CHECK(s.observations()[0].value == 21.3);
    CHECK(s.observations()[1].value == 22.0);
    CHECK(s.observations()[2].value == 22.5);
}

TEST_CASE("load_series: error paths name the offending line") {
    TempDir dir("ingest");
    write_file(dir.file("bad.csv"), "period,value\n2003Q1,1\n2003Q5,2\n");
    CHECK_THROWS_WITH_AS(load_series(dir.file("bad.csv")),
                         doctest::Contains("bad.csv:3"), DataError);

    write_file(dir.file("dup.csv"), "period,value\n2003Q1,1\n2003Q1,2\n");
    CHECK_THROWS_WITH_AS(load_series(dir.file("dup.csv")),
                         doctest::Contains("duplicate period '2003Q1'"), DataError);

    write_file(dir.file("nan.csv"), "period,value\n2003Q1,abc\n");
    CHECK_THROWS_WITH_AS(load_series(dir.file("nan.csv")),
                         doctest::Contains("non-numeric value 'abc'"), DataError);

    write_file(dir.file("neg.csv"), "period,value\n2003Q1,-1\n");
    CHECK_THROWS_AS(load_series(dir.file("neg.csv")), DataError);

    write_file(dir.file("empty.csv"), "");
    CHECK_THROWS_WITH_AS(load_series(dir.file("empty.csv")),
                         doctest::Contains("empty file"), DataError);

    write_file(dir.file("header_only.csv"), "period,value\n");
    CHECK_THROWS_WITH_AS(load_series(dir.file("header_only.csv")),
                         doctest::Contains("no data rows"), DataError);

    write_file(dir.file("gap.csv"), "period,value\n2003Q1,1\n2003Q3,2\n");
    CHECK_THROWS_WITH_AS(load_series(dir.file("gap.csv")),
                         doctest::Contains("missing period '2003Q2'"), DataError);

    write_file(dir.file("short.csv"), "period,value\n2003Q1\n");
    CHECK_THROWS_WITH_AS(load_series(dir.file("short.csv")),
                         doctest::Contains("malformed row"), DataError);

    write_file(dir.file("mixed.csv"), "period,value\n2003Q1,1\n2003-07,2\n");
    CHECK_THROWS_AS(load_series(dir.file("mixed.csv")), DataError);

    CHECK_THROWS_AS(load_series(dir.file("does_not_exist.csv")), DataError);
}

TEST_CASE("load_series: tab delimiter and column mapping") {
    TempDir dir("ingest");
    ColumnSchema schema;
    schema.period_column = "Quarter";
    schema.value_column = "Index";
    schema.label = "hk";
    const auto s = load_text(dir, "t.tsv",
                             "Quarter\tIndex\textra\n2003Q1\t21.3\tx\n2003Q2\t22\ty\n",
                             schema);
    CHECK(s.size() == 2);
    CHECK(s.label() == "hk");

    ColumnSchema missing;
    missing.period_column = "nope";
    write_file(dir.file("m.csv"), "period,value\n2003Q1,1\n");
    CHECK_THROWS_WITH_AS(load_series(dir.file("m.csv"), missing),
                         doctest::Contains("no column named 'nope'"), DataError);
}

TEST_CASE("load_series: decimal time column yields an irregular series") {
    TempDir dir("ingest");
    const auto s = load_text(dir, "irr.csv", "time,value\n2003.1,1\n2003.7,2\n2004.9,3\n",
                             ColumnSchema{"time", "value", ""});
    CHECK(s.frequency() == Frequency::irregular);
    CHECK(s.observations()[1].t == 2003.7);
}

TEST_CASE("write/load round-trips values bit-exactly") {
    TempDir dir("ingest");
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.001, 5000.0);
    std::vector<Observation> obs;
    Period p = Period::parse("1993-04");
    for (int i = 0; i < 200; ++i) {
        obs.push_back({p.mid_time(), dist(rng)});
        p = p.next();
    }
    const PriceSeries s("roundtrip", Frequency::monthly, Basis::nominal, obs);
    write_series(s, dir.file("rt.csv"));
    const auto back = load_series(dir.file("rt.csv"));
    REQUIRE(back.size() == s.size());
    CHECK(back.label() == "roundtrip");
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(back.observations()[i].t == s.observations()[i].t);
        CHECK(back.observations()[i].value == s.observations()[i].value);
    }
}

TEST_CASE("sidecar restores basis and deflation record") {
    TempDir dir("ingest");
    const auto s = testsup::make_deflated({{2003.125, 1.0}, {2003.375, 2.0}},
                                          Frequency::quarterly, "defl");
    write_series(s, dir.file("d.csv"));
    const auto back = load_series(dir.file("d.csv"));
    CHECK(back.basis() == Basis::deflated);
    REQUIRE(back.deflation());
    CHECK(back.deflation()->cpi_label == "test-cpi");
    CHECK(back.deflation()->base == "2000");
    CHECK(back.label() == "defl");
}

TEST_CASE("deflate: constant cpi is the identity") {
    std::vector<Observation> po, co;
    Period p = Period::parse("2000Q1");
    for (int i = 0; i < 8; ++i) {
        po.push_back({p.mid_time(), 10.0 + i});
        co.push_back({p.mid_time(), 123.4});
        p = p.next();
    }
    const auto out = deflate(testsup::make_nominal(po), testsup::make_nominal(co, Frequency::quarterly, "cpi"),
                             Period::parse("2000Q1"));
    CHECK(out.basis() == Basis::deflated);
    REQUIRE(out.deflation());
    CHECK(out.deflation()->cpi_label == "cpi");
    CHECK(out.deflation()->base == "2000Q1");
    for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(out.observations()[i].value == po[i].value);  // v * c/c is exact
}

TEST_CASE("deflate: single ratio example") {
    // value 100 where cpi(t)=120 and cpi(base)=100 -> 83.333...
    const auto prices = testsup::make_nominal({{2000.5, 100.0}}, Frequency::annual);
    const auto cpi = testsup::make_nominal({{1999.5, 100.0}, {2000.5, 120.0}},
                                           Frequency::annual, "cpi");
    const auto out = deflate(prices, cpi, Period::parse("1999"));
    CHECK(out.observations()[0].value == doctest::Approx(100.0 * 100.0 / 120.0).epsilon(1e-12));
}

TEST_CASE("deflate: 2%/yr CPI vs row-by-row oracle") {
    // flat nominal series under steady 2%/yr inflation; expected deflated
    // values recomputed independently per row
    std::vector<Observation> po, co;
    for (int i = 0; i < 10; ++i) {
        const double t = 2000.5 + i;
        po.push_back({t, 100.0});
        co.push_back({t, 80.0 * std::pow(1.02, i)});
    }
    const auto out = deflate(testsup::make_nominal(po, Frequency::annual),
                             testsup::make_nominal(co, Frequency::annual, "cpi"),
                             Period::parse("2000"));
    for (int i = 0; i < 10; ++i) {
        const double expected = 100.0 * (80.0 * 1.0) / (80.0 * std::pow(1.02, i));
        CHECK(out.observations()[i].value == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("deflate: finer-frequency cpi and mean-over-base rebasing") {
    // quarterly series against monthly cpi; base year uses the annual mean
    std::vector<Observation> po, co;
    Period q = Period::parse("2001Q1");
    for (int i = 0; i < 4; ++i) {
        po.push_back({q.mid_time(), 50.0});
        q = q.next();
    }
    Period m = Period::parse("2001-01");
    double cpi_sum = 0.0;
    for (int i = 0; i < 12; ++i) {
        const double v = 100.0 + i;
        cpi_sum += v;
        co.push_back({m.mid_time(), v});
        m = m.next();
    }
    const auto out = deflate(testsup::make_nominal(po), testsup::make_nominal(co, Frequency::monthly, "cpi"),
                             Period::parse("2001"));
    const double base = cpi_sum / 12.0;
    // 2001Q1 midpoint falls in February (cpi = 101)
    CHECK(out.observations()[0].value == doctest::Approx(50.0 * base / 101.0).epsilon(1e-12));
    // Q4 midpoint falls in November (cpi = 110)
    CHECK(out.observations()[3].value == doctest::Approx(50.0 * base / 110.0).epsilon(1e-12));
}

TEST_CASE("deflate: error paths") {
    const auto prices = testsup::make_nominal({{2000.5, 1.0}, {2001.5, 2.0}},
                                              Frequency::annual);
    // coverage gap
    const auto cpi_short = testsup::make_nominal({{2000.5, 100.0}}, Frequency::annual, "c");
    CHECK_THROWS_WITH_AS(deflate(prices, cpi_short, Period::parse("2000")),
                         doctest::Contains("does not cover"), DataError);
    // coarser cpi than the series
    const auto q = testsup::make_nominal({{2000.125, 1.0}, {2000.375, 1.0}});
    const auto cpi_annual = testsup::make_nominal({{2000.5, 100.0}}, Frequency::annual, "c");
    CHECK_THROWS_WITH_AS(deflate(q, cpi_annual, Period::parse("2000")),
                         doctest::Contains("coarser"), DataError);
    // non-positive cpi
    const auto cpi_zero = testsup::make_nominal({{2000.5, 0.0}, {2001.5, 1.0}},
                                                Frequency::annual, "c");
    CHECK_THROWS_AS(deflate(prices, cpi_zero, Period::parse("2000")), DataError);
}

TEST_CASE("deflate properties: idempotence under identity and linearity") {
    std::vector<Observation> po, co, ones;
    Period p = Period::parse("2000Q1");
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(50.0, 150.0);
    for (int i = 0; i < 12; ++i) {
        po.push_back({p.mid_time(), dist(rng)});
        co.push_back({p.mid_time(), dist(rng)});
        ones.push_back({p.mid_time(), 1.0});
        p = p.next();
    }
    const auto base = Period::parse("2000Q1");
    const auto cpi = testsup::make_nominal(co, Frequency::quarterly, "cpi");
    const auto once = deflate(testsup::make_nominal(po), cpi, base);
    const auto twice = deflate(once, testsup::make_nominal(ones, Frequency::quarterly, "one"), base);
    for (std::size_t i = 0; i < once.size(); ++i)
        CHECK(twice.observations()[i].value == once.observations()[i].value);

    auto scaled = po;
    for (auto& o : scaled) o.value *= 3.5;
    const auto defl_scaled = deflate(testsup::make_nominal(scaled), cpi, base);
    for (std::size_t i = 0; i < once.size(); ++i)
        CHECK(defl_scaled.observations()[i].value ==
              doctest::Approx(3.5 * once.observations()[i].value).epsilon(1e-12));
}

TEST_CASE("series invariants are enforced") {
    CHECK_THROWS_AS(PriceSeries("x", Frequency::quarterly, Basis::nominal, {}),
                    DataError);
    CHECK_THROWS_AS(PriceSeries("x", Frequency::quarterly, Basis::nominal,
                                {{2000.125, 1.0}, {2000.125, 2.0}}),
                    DataError);
    // wrong spacing for the declared frequency
    CHECK_THROWS_AS(PriceSeries("x", Frequency::quarterly, Basis::nominal,
                                {{2000.125, 1.0}, {2000.5, 2.0}}),
                    DataError);
    // deflated without a record
    CHECK_THROWS_AS(PriceSeries("x", Frequency::quarterly, Basis::deflated,
                                {{2000.125, 1.0}}),
                    DataError);
    // non-finite value
    CHECK_THROWS_AS(PriceSeries("x", Frequency::quarterly, Basis::nominal,
                                {{2000.125, std::nan("")}}),
                    DataError);
}
