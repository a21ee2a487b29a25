#include <doctest.h>

#include <cmath>

#include "veldrift/constants.hpp"
#include "veldrift/errors.hpp"

using namespace veldrift;

namespace {

PhysicalConstants unit_constants(double c = 1.0, double hbar = 1.0, double G = 1.0) {
    return {c, hbar, G, 1.0, 1.0};
}

}  // namespace

TEST_CASE("planck length against the CODATA value") {
    // CODATA 2018 lists l_P = 1.616255e-35 m.
    CHECK(planck_length(kCodata) == doctest::Approx(1.616255e-35).epsilon(1e-6));
    CHECK(planck_length(kCodata) == doctest::Approx(1.6163e-35).epsilon(1e-3));
    CHECK(planck_length(unit_constants()) == 1.0);
    CHECK(planck_length(unit_constants(1.0, 1.0, 4.0)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("planck mass") {
    // CODATA 2018: m_P = 2.176434e-8 kg.
    CHECK(planck_mass(kCodata) == doctest::Approx(2.176434e-8).epsilon(1e-6));
    // About 2e-5 g.
    CHECK(std::abs(planck_mass(kCodata) * 1e3 - 2e-5) / 2e-5 < 0.1);
    CHECK(planck_mass(unit_constants()) == 1.0);
    CHECK(planck_mass(unit_constants(4.0)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("planck identities") {
    const auto& k = kCodata;
    const double l0 = planck_length(k);
    CHECK(l0 * l0 * k.c * k.c * k.c / k.hbar == doctest::Approx(k.G).epsilon(1e-14));
    CHECK(planck_mass(k) * l0 * k.c == doctest::Approx(k.hbar).epsilon(1e-14));
}

TEST_CASE("nonrelativistic check") {
    const auto one_kg = check_nonrelativistic(1.0, kCodata);
    CHECK(one_kg.ratio == doctest::Approx(2.176434e-8).epsilon(1e-5));
    CHECK(one_kg.pass);

    const double mp = planck_mass(kCodata);
    const auto at_mp = check_nonrelativistic(mp, kCodata);
    CHECK(at_mp.ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(at_mp.pass);

    const auto boundary = check_nonrelativistic(100.0 * mp, kCodata);
    CHECK(boundary.ratio == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(boundary.threshold == 1e-2);

    CHECK_THROWS_AS(check_nonrelativistic(0.0, kCodata), InvalidInput);
}

TEST_CASE("constants validation and unit systems") {
    CHECK_NOTHROW(kCodata.validate());
    PhysicalConstants bad = kCodata;
    bad.G = -1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    bad = kCodata;
    bad.c = std::nan("");
    CHECK_THROWS_AS(bad.validate(), InvalidInput);

    const auto nd = UnitSystem::nondimensional();
    CHECK(nd.mode == UnitMode::Nondimensional);
    CHECK(nd.constants.c == kDefaultSimulationC);
    CHECK(nd.constants.hbar == 1.0);
    CHECK(UnitSystem::nondimensional(7.0).constants.c == 7.0);
    CHECK(UnitSystem::si().constants.c == 299792458.0);

    CHECK(unit_mode_from_string("SI") == UnitMode::SI);
    CHECK(unit_mode_from_string("nondimensional") == UnitMode::Nondimensional);
    CHECK_THROWS_AS(unit_mode_from_string("cgs"), InvalidInput);
}
