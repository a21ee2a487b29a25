#include "veldrift/diffusion.hpp"

#include <cmath>
#include <string>

#include "veldrift/errors.hpp"

namespace veldrift {

DiffusionModel DiffusionModel::make(double dv_rms, double tau, double c, double max_ratio) {
    if (!(std::isfinite(dv_rms) && dv_rms >= 0.0)) throw InvalidInput("dv_rms must be >= 0");
    if (!(std::isfinite(tau) && tau > 0.0)) throw InvalidInput("tau must be > 0");
    if (!(std::isfinite(c) && c > 0.0)) throw InvalidInput("c must be > 0");
    if (!(dv_rms / c < max_ratio)) {
        throw DomainError("dv_rms / c = " + std::to_string(dv_rms / c) + " is not below " +
                          std::to_string(max_ratio));
    }
    return {dv_rms, tau, c};
}

FrictionModel FrictionModel::fixed(double gamma, double v0) {
    if (!(std::isfinite(gamma) && gamma >= 0.0)) throw InvalidInput("gamma must be >= 0");
    return {gamma, FrictionMode::Fixed, v0};
}

FrictionModel FrictionModel::self_consistent(double gamma) {
    if (!(std::isfinite(gamma) && gamma >= 0.0)) throw InvalidInput("gamma must be >= 0");
    return {gamma, FrictionMode::SelfConsistent, 0.0};
}

std::string_view to_string(FrictionMode mode) {
    return mode == FrictionMode::Fixed ? "fixed" : "self-consistent";
}

double diffusion_coefficient(const DiffusionModel& m, double v) {
    if (!(v < m.c)) {
        throw DomainError("diffusion_coefficient: v = " + std::to_string(v) + " is not below c");
    }
    return m.base_coefficient() * (1.0 - v / m.c);
}

double doppler_rate(double tau_emit, double v, double c) {
    if (!(std::abs(v) < c)) throw DomainError("doppler_rate: |v| must be below c");
    return (1.0 / tau_emit) * (1.0 - v / c);
}

double theoretical_drift(const DiffusionModel& m) {
    return -(m.dv_rms * m.dv_rms) / (2.0 * m.c * m.tau);
}

double theoretical_heating_rate(const DiffusionModel& m, double mean_v) {
    if (!(std::abs(mean_v) < m.c)) throw DomainError("heating rate: |<v>| must be below c");
    return 2.0 * diffusion_coefficient(m, mean_v);
}

double stationary_variance(const DiffusionModel& m, const FrictionModel& f, double mean_v) {
    if (!(f.gamma > 0.0)) {
        throw DomainError("stationary_variance: free diffusion (gamma = 0) has no stationary width");
    }
    return diffusion_coefficient(m, mean_v) / f.gamma;
}

double stationary_mean(const DiffusionModel& m, const FrictionModel& f) {
    if (!(f.gamma > 0.0)) throw DomainError("stationary_mean: gamma must be > 0");
    return f.v0 + theoretical_drift(m) / f.gamma;
}

double mutual_drift(const DiffusionModel& source_a, const DiffusionModel& source_b) {
    if (source_a.c != source_b.c) throw InvalidInput("mutual_drift: models disagree on c");
    // a_A = drift(A) < 0 points A towards B; a_B = -drift(B) > 0 points B towards A.
    const double a_a = theoretical_drift(source_a);
    const double a_b = -theoretical_drift(source_b);
    return a_a - a_b;
}

bool friction_keeps_width_nonrelativistic(const DiffusionModel& m, const FrictionModel& f,
                                          double mean_v, double max_ratio) {
    if (f.gamma == 0.0) return true;
    return std::sqrt(stationary_variance(m, f, mean_v)) / m.c < max_ratio;
}

}  // namespace veldrift
