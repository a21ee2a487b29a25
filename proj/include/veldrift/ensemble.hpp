#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "veldrift/diffusion.hpp"

namespace veldrift {

/// Samples aborting the run once |v| >= c (1 - kLightSpeedMargin).
inline constexpr double kLightSpeedMargin = 1e-2;

/// Monte Carlo representation of the velocity distribution. Sample i draws
/// its step-k noise from block k + 1 of counter stream i (block 0 is the
/// initial condition), so trajectories are reproducible from the seed alone.
struct EnsembleState {
    std::vector<double> velocities;
    double time = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t step = 0;

    static EnsembleState gaussian(std::size_t n_samples, double mean, double sigma, std::uint64_t seed);
};

struct EnsembleMoments {
    double mean;
    double variance;  ///< unbiased (N - 1)
    double se_mean;
    double se_variance;
    std::size_t n;
};

/// Sample moments with standard errors, reduced in sample order.
EnsembleMoments moments(const EnsembleState& ens);

/// One Euler-Maruyama step in the Ito convention:
/// dv = [D'(v) - gamma (v - v0)] dt + sqrt(2 D_v(v) dt) xi.
/// Work is split into `workers` contiguous blocks; output does not depend
/// on the split.
EnsembleState sde_step(const EnsembleState& ens, const DiffusionModel& m,
                       const std::optional<FrictionModel>& f, double dt, std::size_t workers = 1);

}  // namespace veldrift
