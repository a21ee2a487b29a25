#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "veldrift/constants.hpp"
#include "veldrift/random.hpp"

namespace veldrift::split {

/// Object A split into two halves A1, A2 of mass M/2, each measured
/// directly by a distant observer and by the other half.
struct SplitScenario {
    double total_mass;         ///< M_A
    double separation;         ///< r (informational when alpha is given directly)
    double alpha;              ///< (m/s)/kg, l0^2 c^2 / (hbar r)
    std::size_t n_intervals;   ///< full fluctuation times tau_A accumulated per sample
    std::size_t samples;
    std::uint64_t seed = kDefaultSeed;
    double delta_sigma = 1.0;  ///< rms of the mutual (cross-measured) increments

    /// alpha from the Planck-scale chain.
    static SplitScenario from_physics(double total_mass, double separation, const PhysicalConstants& k,
                                      std::size_t n_intervals, std::size_t samples);
    /// alpha given directly (nondimensional studies).
    static SplitScenario with_alpha(double alpha, double total_mass, std::size_t n_intervals,
                                    std::size_t samples);

    /// Unsplit prediction of the per-tau_A variance, alpha^2 M^2.
    double predicted_variance() const { return alpha * alpha * total_mass * total_mass; }

    void validate() const;
};

/// Velocity increments registered during one half-interval tau_A / 2.
struct UpdateRecord {
    double dv_a1;        ///< direct increment of A1
    double dv_a2;        ///< direct increment of A2
    double delta2_v_a1;  ///< A1 as measured by A2
    double delta1_v_a2;  ///< A2 as measured by A1

    /// Momentum conservation of the mutual measurement: delta2 + delta1 == 0.
    bool conserves_momentum() const { return delta2_v_a1 + delta1_v_a2 == 0.0; }
};

/// Observer-side velocity update of both halves. Throws InvalidInput when
/// the record violates momentum conservation.
std::pair<double, double> apply_updates(double v_a1, double v_a2, const UpdateRecord& u);

/// (v1' + v2')/2 - (v1 + v2)/2 for the update, equal to dv_a1 + dv_a2.
double com_increment(const UpdateRecord& u);

struct SplitResult {
    double measured_var_per_tau;
    double predicted_var;
    double standard_error;
    double z_score;
    /// Halves measured independently once per tau_A, averaged into the COM.
    double naive_var_per_tau;
    double naive_predicted;  ///< alpha^2 M^2 / 8
    std::size_t n_samples;
};

/// Monte Carlo of the split bookkeeping: per half-interval, direct
/// increments N(0, (alpha M/2)^2) for each half plus equal-and-opposite
/// mutual increments; COM variance accumulated over n_intervals tau_A.
SplitResult com_variance_experiment(const SplitScenario& s);

}  // namespace veldrift::split
