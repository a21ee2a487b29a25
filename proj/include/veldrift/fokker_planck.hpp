#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "veldrift/diffusion.hpp"

namespace veldrift {

inline constexpr std::size_t kMinCells = 16;
inline constexpr std::size_t kDefaultCells = 1024;
inline constexpr double kDefaultWindowWidths = 12.0;
inline constexpr double kBoundaryMassLimit = 1e-8;
inline constexpr double kNegativeMassFloor = -1e-12;
inline constexpr double kDiffusionCfl = 0.4;
inline constexpr double kFrictionCfl = 0.1;
inline constexpr double kMaxCellPeclet = 2.0;

/// Uniform finite-volume grid on [v_min, v_max].
class VelocityGrid {
public:
    static VelocityGrid make(double v_min, double v_max, std::size_t n_cells);

    double v_min() const { return v_min_; }
    double v_max() const { return v_max_; }
    std::size_t n_cells() const { return n_cells_; }
    double dv_cell() const { return dv_cell_; }

    double center(std::size_t i) const { return v_min_ + (static_cast<double>(i) + 0.5) * dv_cell_; }
    /// Face i sits between cells i-1 and i; faces 0 and n are the walls.
    double face(std::size_t i) const { return v_min_ + static_cast<double>(i) * dv_cell_; }

    /// Throws DomainError unless D_v > 0 on the whole grid (v_max < c).
    void require_positive_diffusion(const DiffusionModel& m) const;

private:
    VelocityGrid(double v_min, double v_max, std::size_t n_cells)
        : v_min_(v_min), v_max_(v_max), n_cells_(n_cells),
          dv_cell_((v_max - v_min) / static_cast<double>(n_cells)) {}

    double v_min_;
    double v_max_;
    std::size_t n_cells_;
    double dv_cell_;
};

/// Default window: the initial and predicted final means, padded by
/// kDefaultWindowWidths times the largest width the run is expected to reach.
VelocityGrid default_grid(const DiffusionModel& m, const std::optional<FrictionModel>& f,
                          double mean0, double sigma0, double t_end,
                          std::size_t n_cells = kDefaultCells);

/// Per-cell probability masses (not densities) at a given time.
struct DistributionState {
    std::vector<double> mass;
    double time = 0.0;
    std::size_t clipped_steps = 0;  ///< steps where tiny negative masses were clipped

    /// Gaussian sampled at cell centres and normalised to unit mass.
    static DistributionState gaussian(const VelocityGrid& grid, double mean, double sigma);
};

struct DistributionMoments {
    double mean;
    double variance;
    double total_mass;
    double mean_diffusion;  ///< <D_v>
};

DistributionMoments moments(const DistributionState& s, const VelocityGrid& grid,
                            const DiffusionModel& m);

/// Largest explicit step: 0.4 h^2 / max D on the faces, and 0.1 / gamma.
double max_stable_dt(const VelocityGrid& grid, const DiffusionModel& m,
                     const std::optional<FrictionModel>& f);

/// One explicit step of dP/dt = d/dv( gamma (v - v0) P + D_v dP/dv ) in
/// flux form with zero-flux walls. Throws StepRejected when dt exceeds the
/// stability bound, the cell Peclet number exceeds 2, a mass goes below
/// -1e-12, or boundary cells hold more than kBoundaryMassLimit.
DistributionState fp_step(const DistributionState& state, const VelocityGrid& grid,
                          const DiffusionModel& m, const std::optional<FrictionModel>& f,
                          double dt);

}  // namespace veldrift
