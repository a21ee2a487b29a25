#pragma once

#include <string_view>

namespace veldrift {

inline constexpr double kMaxResolutionOverC = 0.1;

/// Doppler-modulated velocity diffusion: an observer receives velocity
/// information of rms resolution dv_rms once per emission time tau, and the
/// reception rate is Doppler shifted by the relative velocity v.
///
/// Sign convention: positive v points from the observer towards the
/// source, so v > 0 means the source recedes and is measured less often.
struct DiffusionModel {
    double dv_rms;  ///< m/s; zero disables measurement
    double tau;     ///< s
    double c;       ///< m/s

    /// Validated constructor: dv_rms >= 0, tau > 0, c > 0 and
    /// dv_rms / c < max_ratio.
    static DiffusionModel make(double dv_rms, double tau, double c,
                               double max_ratio = kMaxResolutionOverC);

    /// 1/2 dv^2 / tau, the coefficient at v = 0.
    double base_coefficient() const { return 0.5 * dv_rms * dv_rms / tau; }

    /// dD/dv, constant for the first-order Doppler law.
    double slope() const { return -base_coefficient() / c; }
};

enum class FrictionMode { Fixed, SelfConsistent };

/// Friction towards an environment moving with velocity v0. In
/// SelfConsistent mode v0 follows the current mean velocity.
struct FrictionModel {
    double gamma = 0.0;  ///< 1/s
    FrictionMode mode = FrictionMode::Fixed;
    double v0 = 0.0;     ///< m/s, used in Fixed mode only

    static FrictionModel fixed(double gamma, double v0);
    static FrictionModel self_consistent(double gamma);
};

std::string_view to_string(FrictionMode mode);

/// Environment velocity the friction relaxes towards, given the current mean.
inline double environment_velocity(const FrictionModel& f, double mean_v) {
    return f.mode == FrictionMode::SelfConsistent ? mean_v : f.v0;
}

/// D_v(v) = 1/2 (dv^2 / tau) (1 - v/c). DomainError when v >= c.
double diffusion_coefficient(const DiffusionModel& m, double v);

/// Doppler-shifted reception rate (1/tau_emit)(1 - v/c). DomainError when |v| >= c.
double doppler_rate(double tau_emit, double v, double c);

/// Emergent acceleration of the mean measured velocity, -dv^2 / (2 c tau).
/// Equal to dD_v/dv.
double theoretical_drift(const DiffusionModel& m);

/// d(w^2)/dt = 2 <D_v>, evaluated at the mean velocity (leading order in v/c).
double theoretical_heating_rate(const DiffusionModel& m, double mean_v);

/// Width at which friction balances measurement heating, <D_v> / gamma.
/// DomainError when gamma == 0.
double stationary_variance(const DiffusionModel& m, const FrictionModel& f, double mean_v);

/// Stationary mean for fixed-environment friction, v0 + drift / gamma.
double stationary_mean(const DiffusionModel& m, const FrictionModel& f);

/// Relative acceleration a_A - a_B when A and B measure each other.
/// Both models must share c.
double mutual_drift(const DiffusionModel& source_a, const DiffusionModel& source_b);

/// True when the stationary width stays far below c: sqrt(<D>/gamma) / c < max_ratio.
/// Always true for gamma == 0 (no stationary width).
bool friction_keeps_width_nonrelativistic(const DiffusionModel& m, const FrictionModel& f,
                                          double mean_v, double max_ratio = kMaxResolutionOverC);

}  // namespace veldrift
