#include "veldrift/fokker_planck.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <string>

#include "veldrift/errors.hpp"

namespace veldrift {

VelocityGrid VelocityGrid::make(double v_min, double v_max, std::size_t n_cells) {
    if (!(std::isfinite(v_min) && std::isfinite(v_max) && v_min < v_max)) {
        throw InvalidInput("velocity grid: need finite v_min < v_max");
    }
    if (n_cells < kMinCells) {
        throw InvalidInput("velocity grid: at least " + std::to_string(kMinCells) + " cells required");
    }
    return VelocityGrid(v_min, v_max, n_cells);
}

void VelocityGrid::require_positive_diffusion(const DiffusionModel& m) const {
    if (!(v_max_ < m.c)) {
        throw DomainError("velocity grid reaches v = " + std::to_string(v_max_) +
                          ", where D_v is no longer positive (c = " + std::to_string(m.c) + ")");
    }
}

VelocityGrid default_grid(const DiffusionModel& m, const std::optional<FrictionModel>& f,
                          double mean0, double sigma0, double t_end, std::size_t n_cells) {
    const double drift = theoretical_drift(m);
    double mean_end = mean0 + drift * t_end;
    const double gamma = f ? f->gamma : 0.0;
    if (f && gamma > 0.0 && f->mode == FrictionMode::Fixed) {
        mean_end = stationary_mean(m, *f);
    }
    const double lo = std::min(mean0, mean_end);
    const double hi = std::max(mean0, mean_end);

    const double d_max = m.base_coefficient() * (1.0 - lo / m.c);
    double w2 = sigma0 * sigma0 + 2.0 * d_max * t_end;
    if (gamma > 0.0) w2 = std::min(w2, std::max(sigma0 * sigma0, d_max / gamma));
    const double pad = kDefaultWindowWidths * std::sqrt(w2);

    auto grid = VelocityGrid::make(lo - pad, hi + pad, n_cells);
    grid.require_positive_diffusion(m);
    return grid;
}

DistributionState DistributionState::gaussian(const VelocityGrid& grid, double mean, double sigma) {
    if (!(sigma > 0.0)) throw InvalidInput("initial width must be > 0");
    DistributionState s;
    s.mass.resize(grid.n_cells());
    for (std::size_t i = 0; i < grid.n_cells(); ++i) {
        const double z = (grid.center(i) - mean) / sigma;
        s.mass[i] = std::exp(-0.5 * z * z);
    }
    const double total = std::accumulate(s.mass.begin(), s.mass.end(), 0.0);
    if (!(total > 0.0)) throw InvalidInput("initial Gaussian lies outside the grid");
    for (double& p : s.mass) p /= total;
    return s;
}

DistributionMoments moments(const DistributionState& s, const VelocityGrid& grid,
                            const DiffusionModel& m) {
    double total = 0.0;
    double first = 0.0;
    for (std::size_t i = 0; i < s.mass.size(); ++i) {
        total += s.mass[i];
        first += s.mass[i] * grid.center(i);
    }
    const double mean = first / total;
    double second = 0.0;
    for (std::size_t i = 0; i < s.mass.size(); ++i) {
        const double d = grid.center(i) - mean;
        second += s.mass[i] * d * d;
    }
    const double variance = second / total;
    // D_v is linear, so <D_v> = D_v(<v>) exactly.
    const double mean_d = m.base_coefficient() * (1.0 - mean / m.c);
    return {mean, variance, total, mean_d};
}

double max_stable_dt(const VelocityGrid& grid, const DiffusionModel& m,
                     const std::optional<FrictionModel>& f) {
    const double h = grid.dv_cell();
    // D_v decreases with v: the maximum sits on the lowest interior face.
    const double d_max = m.base_coefficient() * (1.0 - grid.face(1) / m.c);
    double dt = d_max > 0.0 ? kDiffusionCfl * h * h / d_max : std::numeric_limits<double>::infinity();
    if (f && f->gamma > 0.0) dt = std::min(dt, kFrictionCfl / f->gamma);
    return dt;
}

DistributionState fp_step(const DistributionState& state, const VelocityGrid& grid,
                          const DiffusionModel& m, const std::optional<FrictionModel>& f,
                          double dt) {
    const std::size_t n = grid.n_cells();
    if (state.mass.size() != n) throw InvalidInput("fp_step: state does not match grid");
    if (!(dt > 0.0)) throw InvalidInput("fp_step: dt must be > 0");
    const double dt_max = max_stable_dt(grid, m, f);
    if (dt > dt_max * (1.0 + 1e-9)) {
        throw StepRejected("fp_step: dt = " + std::to_string(dt) + " exceeds stability bound " +
                           std::to_string(dt_max));
    }

    const double h = grid.dv_cell();
    const double base = m.base_coefficient();
    const double gamma = f ? f->gamma : 0.0;
    double v0 = 0.0;
    if (gamma > 0.0) {
        v0 = f->mode == FrictionMode::SelfConsistent ? moments(state, grid, m).mean : f->v0;
    }

    // flux[k] = probability per unit time crossing face k in the +v direction
    std::vector<double> flux(n + 1, 0.0);
    const auto& p = state.mass;
    for (std::size_t k = 1; k < n; ++k) {
        const double v_face = grid.face(k);
        const double d_face = base * (1.0 - v_face / m.c);
        double j = -d_face * (p[k] - p[k - 1]) / (h * h);
        if (gamma > 0.0) {
            const double a_face = gamma * (v_face - v0);
            if (std::abs(a_face) * h > kMaxCellPeclet * d_face) {
                throw StepRejected("fp_step: cell Peclet number above 2 at v = " + std::to_string(v_face) +
                                   "; refine the grid");
            }
            j -= a_face * 0.5 * (p[k] + p[k - 1]) / h;
        }
        flux[k] = j;
    }

    DistributionState next;
    next.time = state.time + dt;
    next.clipped_steps = state.clipped_steps;
    next.mass.resize(n);
    bool clipped = false;
    for (std::size_t i = 0; i < n; ++i) {
        double value = p[i] - dt * (flux[i + 1] - flux[i]);
        if (value < 0.0) {
            if (value < kNegativeMassFloor) {
                throw StepRejected("fp_step: negative mass " + std::to_string(value) + " in cell " +
                                   std::to_string(i) + "; configuration is unstable");
            }
            value = 0.0;
            clipped = true;
        }
        next.mass[i] = value;
    }
    if (clipped) {
        const double total = std::accumulate(next.mass.begin(), next.mass.end(), 0.0);
        for (double& q : next.mass) q /= total;
        ++next.clipped_steps;
        std::clog << "warning: fp_step clipped negative masses at t = " << next.time << '\n';
    }

    const double low_edge = next.mass[0] + next.mass[1];
    const double high_edge = next.mass[n - 1] + next.mass[n - 2];
    if (low_edge > kBoundaryMassLimit || high_edge > kBoundaryMassLimit) {
        throw StepRejected("fp_step: probability reached the grid boundary (edge mass " +
                           std::to_string(std::max(low_edge, high_edge)) + ") at t = " +
                           std::to_string(next.time) + "; widen the grid");
    }
    return next;
}

}  // namespace veldrift
