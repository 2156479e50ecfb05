#include "pvt/curve_family.hpp"
#include "pvt/errors.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace pvt;
using testing::msx60;

TEST_CASE("parallel curve family matches the serial reference bit for bit") {
    const auto ds = msx60();
    const auto ref = extract_reference_params(ds);
    const std::vector<double> temps{25.0, 40.0, 55.0, 70.0};
    const std::vector<double> irr{250.0, 500.0, 750.0, 1000.0};

    const auto par = curve_family(ref, ds, temps, irr, 40);
    const auto ser = curve_family_serial(ref, ds, temps, irr, 40);
    REQUIRE(par.size() == ser.size());
    REQUIRE(par.size() == temps.size() * irr.size() * 40);
    for (size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].T_c == ser[i].T_c);
        CHECK(par[i].G == ser[i].G);
        CHECK(par[i].V == ser[i].V);
        CHECK(par[i].I == ser[i].I);
        CHECK(par[i].P == ser[i].P);
    }
}

TEST_CASE("parallel MPP grid matches the serial reference bit for bit") {
    const auto ds = msx60();
    const auto ref = extract_reference_params(ds);
    const std::vector<double> temps{25.0, 50.0, 75.0};
    const std::vector<double> irr{300.0, 650.0, 1000.0};

    const auto par = mpp_grid(ref, ds, temps, irr);
    const auto ser = mpp_grid_serial(ref, ds, temps, irr);
    REQUIRE(par.size() == ser.size());
    for (size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].mpp.V == ser[i].mpp.V);
        CHECK(par[i].mpp.I == ser[i].mpp.I);
        CHECK(par[i].mpp.P == ser[i].mpp.P);
    }
}

TEST_CASE("curve family rows are grouped by pair in grid order") {
    const auto ds = msx60();
    const auto ref = extract_reference_params(ds);
    const auto table = curve_family(ref, ds, {25.0, 50.0}, {500.0, 1000.0}, 3);
    REQUIRE(table.size() == 12);
    CHECK(table[0].T_c == 25.0);
    CHECK(table[0].G == 500.0);
    CHECK(table[3].G == 1000.0);
    CHECK(table[6].T_c == 50.0);
    // voltage ramps from zero to the pair's open-circuit point within a group
    CHECK(table[0].V == 0.0);
    CHECK(table[2].V > table[1].V);
}

TEST_CASE("irradiance family reproduces the proportional short-circuit ladder") {
    const auto ds = msx60();
    const auto ref = extract_reference_params(ds);
    const auto table = curve_family(ref, ds, {25.0}, {250.0, 500.0, 750.0, 1000.0}, 25);
    const double base = table[3 * 25].I; // first point of the 1000 W/m^2 curve
    CHECK(table[0 * 25].I == doctest::Approx(base * 0.25).epsilon(5e-3));
    CHECK(table[1 * 25].I == doctest::Approx(base * 0.50).epsilon(5e-3));
    CHECK(table[2 * 25].I == doctest::Approx(base * 0.75).epsilon(5e-3));
}

TEST_CASE("kernel argument validation") {
    const auto ds = msx60();
    const auto ref = extract_reference_params(ds);
    CHECK_THROWS_AS(curve_family(ref, ds, {}, {1000.0}, 10), std::invalid_argument);
    CHECK_THROWS_AS(curve_family(ref, ds, {25.0}, {1000.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(mpp_grid(ref, ds, {25.0}, {}), std::invalid_argument);
}
