#include "pvt/engine.hpp"
#include "pvt/errors.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace pvt;
using testing::msx60;
using testing::reference_design;

namespace {

WeatherSeries constant_weather(double G, double T_a, double step, int n) {
    WeatherSeries w;
    for (int i = 0; i < n; ++i)
        w.samples.push_back({i * step, G, T_a});
    return w;
}

SimulationOptions plain_options(double step) {
    SimulationOptions o;
    o.step = step;
    o.radiative_correction = false;
    return o;
}

} // namespace

TEST_CASE("global equilibrium: dark sky, tank at ambient") {
    auto design = reference_design();
    design.T_w0 = 28.0;
    const auto records =
        run_simulation(design, msx60(), constant_weather(0.0, 28.0, 60.0, 10), plain_options(60.0));
    REQUIRE(records.size() == 10);
    for (const auto& r : records) {
        CHECK(std::abs(r.T_w - 28.0) < 1e-9);
        CHECK(std::abs(r.T_bs - 28.0) < 1e-9);
        CHECK(std::abs(r.T_c - 28.0) < 1e-9);
        CHECK(r.eta_i == 0.0);
    }
}

TEST_CASE("dark decay follows the closed-form exponential at every step") {
    auto design = reference_design();
    design.T_w0 = 50.0;
    const SimulationOptions opts = plain_options(60.0);
    const auto weather = constant_weather(0.0, 30.0, 60.0, 240);
    const auto records = run_simulation(design, msx60(), weather, opts);

    const auto coeffs = derive_coefficients(design, design.T_w0, 30.0, {false, true});
    for (size_t k = 0; k < records.size(); ++k) {
        const double expected = 30.0 + 20.0 * std::exp(-coeffs.m_decay * records[k].t);
        CHECK(std::abs(records[k].T_w - expected) < 1e-9);
    }
}

TEST_CASE("determinism: identical inputs give bit-identical records") {
    const auto design = reference_design();
    WeatherSeries w;
    for (int i = 0; i < 120; ++i)
        w.samples.push_back({i * 60.0, 400.0 + 300.0 * std::sin(i * 0.05), 25.0 + 3.0 * std::sin(i * 0.01)});
    SimulationOptions opts;
    opts.step = 60.0;
    const auto a = run_simulation(design, msx60(), w, opts);
    const auto b = run_simulation(design, msx60(), w, opts);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].T_w == b[i].T_w);
        CHECK(a[i].T_bs == b[i].T_bs);
        CHECK(a[i].T_c == b[i].T_c);
        CHECK(a[i].Q_u == b[i].Q_u);
    }
}

TEST_CASE("tank energy bookkeeping closes within 2%") {
    const auto design = reference_design();
    WeatherSeries w;
    for (int i = 0; i <= 240; ++i)
        w.samples.push_back({i * 60.0, 700.0, 30.0});
    SimulationOptions opts = plain_options(60.0);
    const auto records = run_simulation(design, msx60(), w, opts);

    // integrate Q_u - UA_tank (T_w - T_a) with per-step midpoints
    double integral = 0.0;
    for (size_t k = 1; k < records.size(); ++k) {
        const double qu = 0.5 * (records[k - 1].Q_u + records[k].Q_u);
        const double tw = 0.5 * (records[k - 1].T_w + records[k].T_w);
        integral += (qu - design.UA_tank * (tw - records[k].T_a)) * opts.step;
    }
    const double stored =
        design.M_w * design.C_w * (records.back().T_w - records.front().T_w);
    CHECK(stored == doctest::Approx(integral).epsilon(0.02));
}

TEST_CASE("coupled mode keeps the fed-back efficiency physical and close to constant mode") {
    const auto design = reference_design();
    WeatherSeries w;
    for (int i = 0; i <= 180; ++i)
        w.samples.push_back({i * 60.0, 300.0 + 500.0 * std::sin(3.14159 * i / 180.0), 28.0});
    SimulationOptions constant_mode = plain_options(60.0);
    SimulationOptions coupled = constant_mode;
    coupled.couple_electrical = true;

    const auto base = run_simulation(design, msx60(), w, constant_mode);
    const auto fed = run_simulation(design, msx60(), w, coupled);
    REQUIRE(base.size() == fed.size());
    for (size_t k = 0; k < fed.size(); ++k) {
        if (fed[k].G > 0.0) {
            CHECK(fed[k].eta_e >= 0.0);
            CHECK(fed[k].eta_e <= 0.25);
            CHECK(fed[k].P_mp > 0.0);
        }
        CHECK(std::abs(fed[k].T_c - base[k].T_c) < 3.0);
    }
}

TEST_CASE("negative useful energy is reported, or zeroed when clamping is on") {
    auto design = reference_design();
    design.T_w0 = 45.0; // hot tank under a dark sky loses heat
    const auto weather = constant_weather(0.0, 25.0, 60.0, 20);

    SimulationOptions opts = plain_options(60.0);
    const auto raw = run_simulation(design, msx60(), weather, opts);
    CHECK(raw[5].Q_u < 0.0);

    opts.clamp_negative_qu = true;
    const auto clamped = run_simulation(design, msx60(), weather, opts);
    for (const auto& r : clamped)
        CHECK(r.Q_u == 0.0);
}

TEST_CASE("weather grid must match the requested step") {
    const auto design = reference_design();
    WeatherSeries w{{{0, 500, 25}, {60, 500, 25}, {180, 500, 25}}};
    SimulationOptions opts;
    opts.step = 60.0;
    CHECK_THROWS_AS(run_simulation(design, msx60(), w, opts), std::invalid_argument);
}

TEST_CASE("thermal efficiency") {
    const auto design = reference_design();

    SUBCASE("zero when the tank ends where it started") {
        std::vector<SimulationRecord> recs(3);
        recs[0] = {0, 500, 25, 30, 0, 0, 0, 0};
        recs[1] = {60, 500, 25, 31, 0, 0, 0, 0};
        recs[2] = {120, 500, 25, 30, 0, 0, 0, 0};
        CHECK(thermal_efficiency(recs, design, 60.0) == doctest::Approx(0.0));
    }
    SUBCASE("hand-sized energy ratio") {
        // two hour-long intervals of constant 1000 W/m^2
        std::vector<SimulationRecord> recs(3);
        recs[0] = {0, 1000, 25, 28, 0, 0, 0, 0};
        recs[1] = {3600, 1000, 25, 33, 0, 0, 0, 0};
        recs[2] = {7200, 1000, 25, 38, 0, 0, 0, 0};
        const double expected = 45.0 * 4190.0 * 10.0 / (0.516 * 1000.0 * 7200.0);
        CHECK(thermal_efficiency(recs, design, 3600.0) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("invariant under re-expression of the same energy sum") {
        // the same constant-G window sampled at two grids gives one eta_th
        std::vector<SimulationRecord> fine(121), coarse(3);
        for (int i = 0; i < 121; ++i)
            fine[i] = {i * 60.0, 800, 25, 28 + i * (4.0 / 120.0), 0, 0, 0, 0};
        for (int i = 0; i < 3; ++i)
            coarse[i] = {i * 3600.0, 800, 25, 28 + i * 2.0, 0, 0, 0, 0};
        CHECK(thermal_efficiency(fine, design, 60.0) ==
              doctest::Approx(thermal_efficiency(coarse, design, 3600.0)).epsilon(1e-12));
    }
    SUBCASE("undefined with zero insolation") {
        std::vector<SimulationRecord> recs(2);
        recs[0] = {0, 0, 25, 28, 0, 0, 0, 0};
        recs[1] = {60, 0, 25, 28, 0, 0, 0, 0};
        CHECK_THROWS_AS(thermal_efficiency(recs, design, 60.0), std::domain_error);
    }
}

TEST_CASE("overall efficiency") {
    CHECK(overall_efficiency(0.4078, 0.09) == doctest::Approx(0.4978));
    CHECK(overall_efficiency(0.0, 0.12) == doctest::Approx(0.12));
    CHECK(overall_efficiency(0.3, 0.1) > 0.3);
    CHECK_THROWS_AS(overall_efficiency(-0.1, 0.5), std::invalid_argument);
}

TEST_CASE("rms deviation") {
    SUBCASE("symmetric two-point case is exactly ten percent") {
        const auto report =
            rms_deviation({{0, 10.0}, {60, 10.0}}, {{0, 9.0}, {60, 11.0}});
        CHECK(report.rms_percent == doctest::Approx(10.0).epsilon(1e-12));
        CHECK(report.n == 2);
    }
    SUBCASE("identical series deviate by zero") {
        const auto report = rms_deviation({{0, 42.0}, {60, 43.0}}, {{0, 42.0}, {60, 43.0}});
        CHECK(report.rms_percent == doctest::Approx(0.0));
    }
    SUBCASE("single pair") {
        const auto report = rms_deviation({{0, 50.0}, {60, 50.0}}, {{2, 49.0}});
        CHECK(report.n == 1);
        CHECK(report.rms_percent == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("nearest-timestamp pairing within half a grid step") {
        // t=29 pairs with sim t=0, t=95 with sim t=120, t=500 falls outside the window
        const auto report = rms_deviation({{0, 10.0}, {60, 20.0}, {120, 40.0}},
                                          {{29, 10.0}, {95, 40.0}, {500, 99.0}});
        CHECK(report.n == 2);
        CHECK(report.residuals[0].sim == 10.0);
        CHECK(report.residuals[1].sim == 40.0);
    }
    SUBCASE("zero simulated value in a pair is a division error") {
        CHECK_THROWS_AS(rms_deviation({{0, 0.0}, {60, 1.0}}, {{0, 1.0}}), std::domain_error);
    }
    SUBCASE("unsorted simulated series is an argument error") {
        CHECK_THROWS_AS(rms_deviation({{60, 1.0}, {0, 1.0}}, {{0, 1.0}}), std::invalid_argument);
    }
    SUBCASE("zero iff identical on paired points") {
        const auto report = rms_deviation({{0, 10.0}, {60, 20.0}}, {{0, 10.0}, {60, 20.000001}});
        CHECK(report.rms_percent > 0.0);
    }
}

TEST_CASE("step size study") {
    const auto design = reference_design();

    SUBCASE("constant forcing: any step size lands on the same final tank state") {
        const auto w = constant_weather(600.0, 28.0, 60.0, 7 * 60 + 1); // 7 h, minute grid
        const auto runs =
            step_size_study(design, msx60(), w, {60.0, 3600.0}, plain_options(60.0));
        REQUIRE(runs.size() == 2);
        CHECK(std::abs(runs[0].back().T_w - runs[1].back().T_w) < 1e-9);
        CHECK(runs[0].back().t == runs[1].back().t);
    }
    SUBCASE("fluctuating weather: the fine trace keeps at least as many cell extrema") {
        WeatherSeries w;
        for (int i = 0; i <= 7 * 60; ++i) {
            const double t = i * 60.0;
            const double wave = 650.0 + 250.0 * std::sin(t / 1800.0) + 90.0 * std::sin(t / 290.0);
            w.samples.push_back({t, std::max(0.0, wave), 27.0});
        }
        const auto runs =
            step_size_study(design, msx60(), w, {60.0, 3600.0}, plain_options(60.0));
        auto count_extrema = [](const std::vector<SimulationRecord>& recs) {
            int n = 0;
            for (size_t k = 2; k < recs.size(); ++k) {
                const double a = recs[k - 1].T_c - recs[k - 2].T_c;
                const double b = recs[k].T_c - recs[k - 1].T_c;
                if (a * b < 0.0)
                    ++n;
            }
            return n;
        };
        CHECK(count_extrema(runs[0]) >= count_extrema(runs[1]));
        CHECK(runs[0].size() > runs[1].size());
    }
    SUBCASE("empty step list gives empty output") {
        const auto w = constant_weather(600.0, 28.0, 60.0, 61);
        CHECK(step_size_study(design, msx60(), w, {}, plain_options(60.0)).empty());
    }
}

TEST_CASE("record CSV writing") {
    std::vector<SimulationRecord> recs(2);
    recs[0] = {0, 800, 28, 30.123456, 31.2, 33.4, 150.5, 0.365};
    recs[1] = {60, 810, 28.1, 30.2, 31.3, 33.5, 151.0, 0.366};

    SUBCASE("uncoupled header and row shape") {
        std::ostringstream out;
        write_records_csv(out, recs, false);
        std::istringstream in(out.str());
        std::string header;
        std::getline(in, header);
        CHECK(header == "t,G,T_a,T_w,T_bs,T_c,Q_u,eta_i");
    }
    SUBCASE("round-trip through the column reader at six significant digits") {
        std::ostringstream out;
        write_records_csv(out, recs, false);
        std::istringstream in(out.str());
        const auto tw = read_time_column_csv(in, "T_w");
        REQUIRE(tw.size() == 2);
        CHECK(tw[0].second == doctest::Approx(30.123456).epsilon(1e-4));
        CHECK(tw[1].first == doctest::Approx(60.0));
    }
    SUBCASE("coupled header carries the electrical columns") {
        std::ostringstream out;
        write_records_csv(out, recs, true);
        CHECK(out.str().substr(0, out.str().find('\n')) ==
              "t,G,T_a,T_w,T_bs,T_c,Q_u,eta_i,eta_e,P_mp,V_mp,I_mp");
    }
}
