#include <doctest.h>

#include <cmath>

#include "veldrift/errors.hpp"
#include "veldrift/split_consistency.hpp"

using namespace veldrift;
using namespace veldrift::split;

TEST_CASE("update bookkeeping") {
    auto [a, b] = apply_updates(1.0, 2.0, {0.0, 0.0, 0.0, -0.0});
    CHECK(a == 1.0);
    CHECK(b == 2.0);
    CHECK(com_increment({0.1, -0.1, 0.05, -0.05}) == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS_AS(apply_updates(0.0, 0.0, {0.1, 0.1, 0.05, 0.05}), InvalidInput);
}

TEST_CASE("COM increment identity on many records") {
    Substream rng(99, 0);
    for (int i = 0; i < 1000; ++i) {
        const double a = rng.normal(), b = rng.normal(), d = 100.0 * rng.normal();
        const UpdateRecord u{a, b, d, -d};
        REQUIRE(u.conserves_momentum());
        const double v1 = rng.normal(), v2 = rng.normal();
        const auto [w1, w2] = apply_updates(v1, v2, u);
        CHECK((w1 + w2) / 2.0 - (v1 + v2) / 2.0 == doctest::Approx(a + b).epsilon(1e-12).scale(1.0));
        CHECK(com_increment(u) == doctest::Approx(a + b).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("COM variance matches the unsplit prediction") {
    auto s = SplitScenario::with_alpha(1.0, 1.0, 1, 100000);
    const auto r = com_variance_experiment(s);
    CHECK(r.predicted_var == 1.0);
    CHECK(std::abs(r.z_score) < 3.0);
    CHECK(r.n_samples == 100000);

    // Naive one-shot bookkeeping: alpha^2 M^2 / 8.
    CHECK(r.naive_predicted == 0.125);
    CHECK(std::abs(r.naive_var_per_tau - 0.125) < 3.0 * 0.125 * std::sqrt(2.0 / 99999.0));
}

TEST_CASE("mutual increments never reach the COM") {
    auto s = SplitScenario::with_alpha(1.0, 1.0, 2, 20000);
    s.delta_sigma = 0.0;
    const auto quiet = com_variance_experiment(s);
    s.delta_sigma = 100.0;
    const auto loud = com_variance_experiment(s);
    CHECK(loud.measured_var_per_tau == doctest::Approx(quiet.measured_var_per_tau).epsilon(1e-9));
}

TEST_CASE("zero coupling and validation") {
    const auto r = com_variance_experiment(SplitScenario::with_alpha(0.0, 3.0, 2, 100));
    CHECK(r.measured_var_per_tau == 0.0);
    CHECK(r.predicted_var == 0.0);
    CHECK_THROWS_AS(SplitScenario::with_alpha(1.0, 1.0, 1, 1), InvalidInput);
    CHECK_THROWS_AS(SplitScenario::with_alpha(1.0, -1.0, 1, 10), InvalidInput);
    CHECK_THROWS_AS(SplitScenario::with_alpha(1.0, 1.0, 0, 10), InvalidInput);

    const auto p = SplitScenario::from_physics(1.0, 1.0, kCodata, 1, 10);
    const double l0 = planck_length(kCodata);
    CHECK(p.alpha == doctest::Approx(l0 * l0 * kCodata.c * kCodata.c / kCodata.hbar));
}
