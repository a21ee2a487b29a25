#include <doctest.h>

#include <cmath>

#include "veldrift/ensemble.hpp"
#include "veldrift/errors.hpp"
#include "veldrift/evolve.hpp"

using namespace veldrift;

TEST_CASE("zero resolution leaves velocities unchanged") {
    const auto m = DiffusionModel::make(0.0, 1.0, 100.0);
    const auto ens = EnsembleState::gaussian(1000, 1.0, 2.0, 3);
    auto next = ens;
    for (int i = 0; i < 10; ++i) next = sde_step(next, m, std::nullopt, 0.1);
    CHECK(next.velocities == ens.velocities);
    CHECK(next.step == 10);
}

TEST_CASE("ensemble moments") {
    EnsembleState ens;
    ens.velocities = {1.0, 2.0, 3.0, 4.0};
    const auto mo = moments(ens);
    CHECK(mo.mean == 2.5);
    CHECK(mo.variance == doctest::Approx(5.0 / 3.0));
    CHECK(mo.se_mean == doctest::Approx(std::sqrt(5.0 / 12.0)));
    CHECK(mo.n == 4);
}

TEST_CASE("results do not depend on the worker split") {
    const auto m = DiffusionModel::make(1.0, 1.0, 100.0);
    const auto f = FrictionModel::self_consistent(0.1);
    const auto ens = EnsembleState::gaussian(10001, 0.0, 0.5, 77);
    auto a = ens, b = ens, c = ens;
    for (int i = 0; i < 20; ++i) {
        a = sde_step(a, m, f, 0.01, 1);
        b = sde_step(b, m, f, 0.01, 3);
        c = sde_step(c, m, f, 0.01, 8);
    }
    CHECK(a.velocities == b.velocities);
    CHECK(a.velocities == c.velocities);

    const auto again = EnsembleState::gaussian(10001, 0.0, 0.5, 77);
    CHECK(again.velocities == ens.velocities);
    CHECK(EnsembleState::gaussian(10001, 0.0, 0.5, 78).velocities != ens.velocities);
}

TEST_CASE("samples near c abort the run") {
    const auto m = DiffusionModel::make(1.0, 1.0, 100.0);
    EnsembleState ens;
    ens.velocities = {0.0, 99.5};
    CHECK_THROWS_AS(sde_step(ens, m, std::nullopt, 0.01), StepRejected);
    ens.velocities = {0.0, -99.5};
    CHECK_THROWS_AS(sde_step(ens, m, std::nullopt, 0.01), StepRejected);
    CHECK_THROWS_AS(sde_step(ens, m, std::nullopt, 0.0), InvalidInput);
}

TEST_CASE("ensemble drift and stationary variance") {
    const auto m = DiffusionModel::make(1.0, 1.0, 100.0);
    // Free run: mean drift is exact per step in expectation.
    EvolveOptions opt{10.0, 10.0, 0.05, 1};
    const auto run = evolve(EnsembleState::gaussian(100000, 0.0, 0.5, 5), m, std::nullopt, opt);
    const auto& end = run.sampled.back();
    CHECK(std::abs(end.mean - (-0.05)) < 3.0 * end.se_mean);

    const auto f = FrictionModel::fixed(0.1, 0.0);
    EvolveOptions ou{60.0, 60.0, 0.05, 1};
    const auto st = evolve(EnsembleState::gaussian(20000, 0.0, std::sqrt(5.0), 6), m, f, ou);
    const auto& mo = st.sampled.back();
    // Euler bias on the stationary variance is gamma dt / 2 = 0.25 %.
    CHECK(std::abs(mo.variance - 5.0025) < 4.0 * mo.se_variance);
}
