#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "veldrift/diffusion.hpp"
#include "veldrift/ensemble.hpp"
#include "veldrift/fokker_planck.hpp"

namespace veldrift {

/// One row of moments.csv.
struct MomentRecord {
    double time;
    double mean;
    double variance;
    double total_mass;
};

struct EvolveOptions {
    double t_end = 0.0;
    double record_every = 1.0;
    /// Upper bound on the step; the solver default is used when empty.
    std::optional<double> max_dt;
    std::size_t workers = 1;  ///< SDE only
};

struct FpRun {
    std::vector<MomentRecord> records;
    DistributionState final_state;
};

struct SdeRun {
    std::vector<MomentRecord> records;
    std::vector<EnsembleMoments> sampled;  ///< same rows, with standard errors
    EnsembleState final_state;
};

/// Times at which moments are recorded: 0, record_every, 2 record_every, ...,
/// always ending at t_end.
std::vector<double> record_times(double t_end, double record_every);

/// Step the distribution to t_end, recording moments at record_times().
/// Substeps are sized so that every record time is hit exactly.
FpRun evolve(DistributionState initial, const VelocityGrid& grid, const DiffusionModel& m,
             const std::optional<FrictionModel>& f, const EvolveOptions& opt);

/// Ensemble counterpart; max_dt is required.
SdeRun evolve(EnsembleState initial, const DiffusionModel& m, const std::optional<FrictionModel>& f,
              const EvolveOptions& opt);

}  // namespace veldrift
