#include "veldrift/evolve.hpp"

#include <cmath>

#include "veldrift/errors.hpp"

namespace veldrift {

std::vector<double> record_times(double t_end, double record_every) {
    if (!(t_end >= 0.0)) throw InvalidInput("evolve: t_end must be >= 0");
    if (!(record_every > 0.0)) throw InvalidInput("evolve: record_every must be > 0");
    std::vector<double> times{0.0};
    if (t_end == 0.0) return times;
    for (std::size_t k = 1;; ++k) {
        const double t = static_cast<double>(k) * record_every;
        if (t >= t_end * (1.0 - 1e-12)) break;
        times.push_back(t);
    }
    times.push_back(t_end);
    return times;
}

namespace {

std::size_t substeps(double span, double max_dt) {
    return static_cast<std::size_t>(std::max(1.0, std::ceil(span / max_dt * (1.0 - 1e-12))));
}

MomentRecord to_record(double time, const DistributionMoments& mo) {
    return {time, mo.mean, mo.variance, mo.total_mass};
}

}  // namespace

FpRun evolve(DistributionState initial, const VelocityGrid& grid, const DiffusionModel& m,
             const std::optional<FrictionModel>& f, const EvolveOptions& opt) {
    grid.require_positive_diffusion(m);
    const auto times = record_times(opt.t_end, opt.record_every);
    double dt_max = max_stable_dt(grid, m, f);
    if (opt.max_dt) dt_max = std::min(dt_max, *opt.max_dt);

    FpRun run;
    run.final_state = std::move(initial);
    run.final_state.time = 0.0;
    run.records.push_back(to_record(0.0, moments(run.final_state, grid, m)));
    for (std::size_t r = 1; r < times.size(); ++r) {
        const double span = times[r] - times[r - 1];
        const std::size_t n = substeps(span, dt_max);
        const double dt = span / static_cast<double>(n);
        for (std::size_t s = 0; s < n; ++s) {
            run.final_state = fp_step(run.final_state, grid, m, f, dt);
        }
        run.final_state.time = times[r];
        run.records.push_back(to_record(times[r], moments(run.final_state, grid, m)));
    }
    return run;
}

SdeRun evolve(EnsembleState initial, const DiffusionModel& m, const std::optional<FrictionModel>& f,
              const EvolveOptions& opt) {
    if (!opt.max_dt || !(*opt.max_dt > 0.0)) throw InvalidInput("evolve: SDE needs a positive max_dt");
    const auto times = record_times(opt.t_end, opt.record_every);

    SdeRun run;
    run.final_state = std::move(initial);
    run.final_state.time = 0.0;
    auto record = [&](double t) {
        const auto mo = moments(run.final_state);
        run.sampled.push_back(mo);
        run.records.push_back({t, mo.mean, mo.variance, 1.0});
    };
    record(0.0);
    for (std::size_t r = 1; r < times.size(); ++r) {
        const double span = times[r] - times[r - 1];
        const std::size_t n = substeps(span, *opt.max_dt);
        const double dt = span / static_cast<double>(n);
        for (std::size_t s = 0; s < n; ++s) {
            run.final_state = sde_step(run.final_state, m, f, dt, opt.workers);
        }
        run.final_state.time = times[r];
        record(times[r]);
    }
    return run;
}

}  // namespace veldrift
