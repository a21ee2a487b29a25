#include "veldrift/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "veldrift/errors.hpp"
#include "veldrift/random.hpp"

namespace veldrift {

EnsembleState EnsembleState::gaussian(std::size_t n_samples, double mean, double sigma,
                                      std::uint64_t seed) {
    if (n_samples == 0) throw InvalidInput("ensemble must be non-empty");
    if (!(sigma >= 0.0)) throw InvalidInput("initial width must be >= 0");
    EnsembleState ens;
    ens.seed = seed;
    ens.velocities.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        ens.velocities[i] = mean + sigma * Substream::normal_at(seed, i, 0);
    }
    return ens;
}

EnsembleMoments moments(const EnsembleState& ens) {
    const auto& v = ens.velocities;
    const std::size_t n = v.size();
    if (n < 2) throw InvalidInput("ensemble moments need at least two samples");
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(n);
    double m2 = 0.0;
    double m4 = 0.0;
    for (double x : v) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    const double nd = static_cast<double>(n);
    const double pop_var = m2 / nd;
    const double variance = m2 / (nd - 1.0);
    const double central4 = m4 / nd;
    const double se_var = std::sqrt(std::max(central4 - pop_var * pop_var, 0.0) / nd);
    return {mean, variance, std::sqrt(variance / nd), se_var, n};
}

EnsembleState sde_step(const EnsembleState& ens, const DiffusionModel& m,
                       const std::optional<FrictionModel>& f, double dt, std::size_t workers) {
    if (!(dt > 0.0)) throw InvalidInput("sde_step: dt must be > 0");
    if (ens.velocities.empty()) throw InvalidInput("sde_step: empty ensemble");

    const double base = m.base_coefficient();
    const double slope = m.slope();
    const double gamma = f ? f->gamma : 0.0;
    double v0 = 0.0;
    if (gamma > 0.0) {
        if (f->mode == FrictionMode::SelfConsistent) {
            double sum = 0.0;
            for (double x : ens.velocities) sum += x;
            v0 = sum / static_cast<double>(ens.velocities.size());
        } else {
            v0 = f->v0;
        }
    }
    const double limit = m.c * (1.0 - kLightSpeedMargin);
    const double sqrt_dt = std::sqrt(dt);
    const std::uint64_t position = ens.step + 1;

    EnsembleState next;
    next.seed = ens.seed;
    next.step = ens.step + 1;
    next.time = ens.time + dt;
    next.velocities.resize(ens.velocities.size());

    std::atomic<bool> escaped{false};
    auto advance = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double v = ens.velocities[i];
            const double d = std::max(base * (1.0 - v / m.c), 0.0);
            const double xi = Substream::normal_at(ens.seed, i, position);
            const double v_new = v + (slope - gamma * (v - v0)) * dt + std::sqrt(2.0 * d) * sqrt_dt * xi;
            if (!(std::abs(v_new) < limit)) escaped.store(true, std::memory_order_relaxed);
            next.velocities[i] = v_new;
        }
    };

    const std::size_t n = ens.velocities.size();
    workers = std::clamp<std::size_t>(workers, 1, n);
    if (workers == 1) {
        advance(0, n);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin < end) pool.emplace_back(advance, begin, end);
        }
    }

    if (escaped.load()) {
        throw StepRejected("sde_step: a sample reached |v| >= c (1 - " + std::to_string(kLightSpeedMargin) +
                           ") at t = " + std::to_string(next.time) + "; model validity exceeded");
    }
    return next;
}

}  // namespace veldrift
