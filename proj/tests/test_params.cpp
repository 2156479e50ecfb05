#include "pvt/collector_design.hpp"
#include "pvt/datasheet.hpp"
#include "pvt/errors.hpp"
#include "pvt/weather.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace pvt;

namespace {

std::string reference_design_json() {
    return collector_config_to_json(testing::reference_design());
}

std::string msx60_json() {
    return R"({
        "I_sc_ref": 3.8, "V_oc_ref": 21.1, "I_mp_ref": 3.5, "V_mp_ref": 17.1,
        "K_I_percent": 0.065, "K_V": -0.080, "NOCT": 49, "T_ref": 25,
        "G_ref": 1000, "R_sh_fixed": 300, "N_s": 36
    })";
}

} // namespace

TEST_CASE("collector config loads the reference document") {
    std::istringstream in(reference_design_json());
    const CollectorDesign d = load_collector_config(in);
    CHECK(d.A_c == doctest::Approx(0.516));
    CHECK(d.m_dot == doctest::Approx(0.016));
    CHECK(d.M_w == doctest::Approx(45.0));
    CHECK(d.h_T == doctest::Approx(500.0));
    CHECK(d.plate_conductance == doctest::Approx(0.231));
}

TEST_CASE("collector config round-trips") {
    std::istringstream in(reference_design_json());
    const CollectorDesign d = load_collector_config(in);
    std::istringstream again(collector_config_to_json(d));
    const CollectorDesign d2 = load_collector_config(again);
    CHECK(d2.A_c == d.A_c);
    CHECK(d2.UA_edge == d.UA_edge);
    CHECK(d2.tau_g == d.tau_g);
    CHECK(d2.eta_c_ref == d.eta_c_ref);
    CHECK(d2.T_w0 == d.T_w0);
    CHECK(d2.plate_conductance == d.plate_conductance);
}

TEST_CASE("collector config: beta_c = 0 is a validation error naming the field") {
    CollectorDesign d = testing::reference_design();
    d.beta_c = 0.0;
    std::istringstream in(collector_config_to_json(d));
    CHECK_THROWS_WITH_AS(load_collector_config(in),
                         doctest::Contains("beta_c"), validation_error);
}

TEST_CASE("collector config: missing h_T is a parse error naming the field") {
    std::string doc = reference_design_json();
    const auto pos = doc.find("\"h_T\"");
    REQUIRE(pos != std::string::npos);
    const auto end = doc.find('\n', pos);
    doc.erase(pos, end - pos + 1);
    std::istringstream in(doc);
    CHECK_THROWS_WITH_AS(load_collector_config(in), doctest::Contains("h_T"), parse_error);
}

TEST_CASE("collector config: tube must fit within the spacing") {
    CollectorDesign d = testing::reference_design();
    d.D = d.W;
    CHECK_THROWS_AS(validate(d), validation_error);
}

TEST_CASE("datasheet loads MSX-60 and converts the percent coefficient") {
    std::istringstream in(msx60_json());
    const DatasheetSpec ds = load_datasheet(in);
    CHECK(ds.I_sc_ref == doctest::Approx(3.8));
    CHECK(ds.K_I == doctest::Approx(0.00247));
    CHECK(ds.NOCT == doctest::Approx(49.0));
    CHECK(ds.N_s == 36);
}

TEST_CASE("datasheet rejects I_mp >= I_sc") {
    DatasheetSpec ds = testing::msx60();
    ds.I_mp_ref = 3.9;
    CHECK_THROWS_AS(validate(ds), validation_error);
}

TEST_CASE("datasheet round-trips") {
    const DatasheetSpec ds = testing::msx60();
    std::istringstream in(datasheet_to_json(ds));
    const DatasheetSpec ds2 = load_datasheet(in);
    CHECK(ds2.I_sc_ref == ds.I_sc_ref);
    CHECK(ds2.K_I == ds.K_I);
    CHECK(ds2.R_sh_fixed == ds.R_sh_fixed);
    CHECK(ds2.N_s == ds.N_s);
}

TEST_CASE("weather CSV: well-formed input") {
    std::istringstream in("time,irradiance,ambient\n0,800,28\n60,810,28.1\n120,805,28.2\n");
    const WeatherSeries s = load_weather_csv(in);
    REQUIRE(s.size() == 3);
    CHECK(s.samples[1].t == doctest::Approx(60.0));
    CHECK(s.samples[1].G == doctest::Approx(810.0));
    CHECK(s.samples[2].T_a == doctest::Approx(28.2));
}

TEST_CASE("weather CSV: HH:MM timestamps") {
    std::istringstream in("time,irradiance,ambient\n08:00,500,26\n08:01,510,26.1\n");
    const WeatherSeries s = load_weather_csv(in);
    CHECK(s.samples[0].t == doctest::Approx(8 * 3600.0));
    CHECK(s.samples[1].t == doctest::Approx(8 * 3600.0 + 60.0));
}

TEST_CASE("weather CSV: malformed HH:MM cell") {
    std::istringstream in("time,irradiance,ambient\n08:61,500,26\n09:00,510,26.1\n");
    CHECK_THROWS_AS(load_weather_csv(in), parse_error);
}

TEST_CASE("weather CSV: rows out of time order") {
    std::istringstream in("time,irradiance,ambient\n60,800,28\n0,810,28.1\n");
    CHECK_THROWS_AS(load_weather_csv(in), validation_error);
}

TEST_CASE("weather CSV: duplicate timestamps rejected") {
    std::istringstream in("time,irradiance,ambient\n0,800,28\n0,810,28.1\n");
    CHECK_THROWS_AS(load_weather_csv(in), validation_error);
}

TEST_CASE("weather CSV: negative irradiance rejected") {
    std::istringstream in("time,irradiance,ambient\n0,800,28\n60,-5,28.1\n");
    CHECK_THROWS_AS(load_weather_csv(in), validation_error);
}

TEST_CASE("weather CSV: fewer than two rows rejected") {
    std::istringstream in("time,irradiance,ambient\n0,800,28\n");
    CHECK_THROWS_AS(load_weather_csv(in), validation_error);
}

TEST_CASE("resample: constant signal stays constant") {
    WeatherSeries s{{{0, 1000, 30}, {120, 1000, 30}}};
    const WeatherSeries r = resample_weather(s, 60.0);
    REQUIRE(r.size() == 3);
    CHECK(r.samples[1].t == doctest::Approx(60.0));
    CHECK(r.samples[1].G == doctest::Approx(1000.0));
    CHECK(r.samples[1].T_a == doctest::Approx(30.0));
}

TEST_CASE("resample: midpoint of a linear segment") {
    WeatherSeries s{{{0, 0, 20}, {100, 100, 30}}};
    const WeatherSeries r = resample_weather(s, 50.0);
    REQUIRE(r.size() == 3);
    CHECK(r.samples[1].t == doctest::Approx(50.0));
    CHECK(r.samples[1].G == doctest::Approx(50.0));
    CHECK(r.samples[1].T_a == doctest::Approx(25.0));
}

TEST_CASE("resample: hourly grid over seven hours has eight samples") {
    // count = floor(span/step) + 1, checked by enumerating the grid
    WeatherSeries s;
    for (int m = 0; m <= 7 * 60; ++m)
        s.samples.push_back({m * 60.0, 500.0 + m, 25.0});
    const WeatherSeries r = resample_weather(s, 3600.0);
    size_t expected = 0;
    for (double t = 0.0; t <= s.span() + 1e-9; t += 3600.0)
        ++expected;
    CHECK(expected == 8);
    CHECK(r.size() == expected);
}

TEST_CASE("resample: step must be positive and within the span") {
    WeatherSeries s{{{0, 100, 20}, {100, 100, 20}}};
    CHECK_THROWS_AS(resample_weather(s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(resample_weather(s, -5.0), std::invalid_argument);
    CHECK_THROWS_AS(resample_weather(s, 101.0), std::invalid_argument);
}

TEST_CASE("resample at the native step is the identity on sample values") {
    WeatherSeries s;
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> g(0.0, 1000.0), a(15.0, 35.0);
    for (int i = 0; i < 50; ++i)
        s.samples.push_back({i * 60.0, g(rng), a(rng)});
    const WeatherSeries r = resample_weather(s, 60.0);
    REQUIRE(r.size() == s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        CHECK(r.samples[i].t == s.samples[i].t);
        CHECK(r.samples[i].G == s.samples[i].G);
        CHECK(r.samples[i].T_a == s.samples[i].T_a);
    }
}

TEST_CASE("resample never produces negative G or non-monotone time") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> g(0.0, 1100.0), a(-5.0, 40.0), dt(10.0, 400.0);
    for (int trial = 0; trial < 25; ++trial) {
        WeatherSeries s;
        double t = 0.0;
        for (int i = 0; i < 20; ++i) {
            s.samples.push_back({t, g(rng), a(rng)});
            t += dt(rng);
        }
        const double step = dt(rng);
        if (step > s.span())
            continue;
        const WeatherSeries r = resample_weather(s, step);
        for (size_t i = 0; i < r.size(); ++i) {
            CHECK(r.samples[i].G >= 0.0);
            if (i > 0)
                CHECK(r.samples[i].t > r.samples[i - 1].t);
        }
    }
}
