#include "veldrift/gravity.hpp"

#include <cmath>
#include <numbers>

#include "veldrift/errors.hpp"

namespace veldrift {

namespace {

constexpr double kWienX = 2.821439372122079;

void require_positive(double value, const char* what) {
    if (!(std::isfinite(value) && value > 0.0)) {
        throw InvalidInput(std::string(what) + " must be positive");
    }
}

}  // namespace

void MacroObject::validate() const {
    require_positive(mass, "mass");
    if (density) require_positive(*density, "density");
    if (size) require_positive(*size, "size");
    if (temperature && !(*temperature >= 0.0)) throw InvalidInput("temperature must be >= 0");
    if (surface_area) require_positive(*surface_area, "surface_area");
}

BodyPair BodyPair::make(MacroObject a, MacroObject b, double r, const PhysicalConstants& k,
                        double min_ratio) {
    a.validate();
    b.validate();
    require_positive(r, "separation");
    const double l0 = planck_length(k);
    for (const auto* body : {&a, &b}) {
        const double wavepacket = k.c * fluctuation_time(body->mass, l0, k);
        if (!(r / wavepacket > min_ratio)) {
            throw DomainError("separation is not much larger than the photon wave packet length c tau");
        }
    }
    return {std::move(a), std::move(b), r};
}

double fluctuation_time(double mass, double l0, const PhysicalConstants& k) {
    require_positive(mass, "mass");
    return mass * l0 * l0 / k.hbar;
}

double velocity_resolution(const BodyPair& pair, Body which, const PhysicalConstants& k) {
    const double tau = fluctuation_time(pair.body(which).mass, planck_length(k), k);
    return tau * k.c * k.c / pair.r;
}

ChainReport newton_chain(const MacroObject& source, double r, const PhysicalConstants& k) {
    require_positive(r, "separation");
    ChainReport report;
    report.l0 = planck_length(k);
    report.tau = fluctuation_time(source.mass, report.l0, k);
    report.lyapunov_rate = 1.0 / report.tau;
    report.dv = report.tau * k.c * k.c / r;
    report.a_measured = -(report.dv * report.dv) / (2.0 * k.c * report.tau);
    report.prefactor_note = kPrefactorNote;
    return report;
}

double measured_acceleration(const MacroObject& source, double r, const PhysicalConstants& k) {
    return newton_chain(source, r, k).a_measured;
}

double relative_measured_acceleration(const BodyPair& pair, const PhysicalConstants& k) {
    const double a_a = measured_acceleration(pair.a, pair.r, k);
    // B is pulled towards A, i.e. along +v.
    const double a_b = std::abs(measured_acceleration(pair.b, pair.r, k));
    return a_a - a_b;
}

SplitAccelerations split_accelerations(const BodyPair& pair, double a_rel) {
    if (!(a_rel < 0.0)) throw InvalidInput("split_accelerations: a_rel must be negative (attraction)");
    const double total = pair.a.mass + pair.b.mass;
    return {a_rel * pair.b.mass / total, -a_rel * pair.a.mass / total};
}

double resolution_threshold(double tau_emit, double t0, double c) {
    require_positive(t0, "t0");
    return tau_emit * c / t0;
}

double wien_peak_angular_frequency(double temperature, const PhysicalConstants& k) {
    require_positive(temperature, "temperature");
    return kWienX * k.kB * temperature / k.hbar;
}

double recoil_ratio(const MacroObject& source, double omega, const PhysicalConstants& k) {
    if (!source.density || !source.size) {
        throw InvalidInput("recoil_ratio: source needs density and size");
    }
    const double l0 = planck_length(k);
    const double rho = *source.density;
    const double radius = *source.size;
    return k.hbar * k.hbar * omega /
           (rho * rho * std::pow(radius, 5) * l0 * l0 * k.c * k.c * k.c);
}

PhotonBudget photon_budget(const MacroObject& source, double solid_angle, const PhysicalConstants& k) {
    if (!source.temperature || !source.surface_area) {
        throw InvalidInput("photon_budget: source needs temperature and surface_area");
    }
    const double l0 = planck_length(k);
    const double t = *source.temperature;
    const double n = k.sigma_SB * l0 * l0 / (k.kB * k.hbar) * t * t * t * *source.surface_area *
                     source.mass * solid_angle;
    return {n, n >= 1.0};
}

double trembling_temperature(double mass, const PhysicalConstants& k) {
    require_positive(mass, "mass");
    return k.hbar * k.c * k.c * k.c / (k.kB * k.G * mass);
}

double hawking_temperature(double mass, const PhysicalConstants& k) {
    require_positive(mass, "mass");
    return k.hbar * k.c * k.c * k.c / (8.0 * std::numbers::pi * k.G * mass * k.kB);
}

double spatial_diffusion_coefficient(double mass, const PhysicalConstants& k) {
    require_positive(mass, "mass");
    return k.hbar / mass;
}

double wavepacket_width(double sigma0, double mass, double t, const PhysicalConstants& k) {
    require_positive(sigma0, "sigma0");
    require_positive(mass, "mass");
    if (!(t >= 0.0)) throw InvalidInput("wavepacket_width: t must be >= 0");
    const double spread = k.hbar / (mass * sigma0) * t;
    return std::sqrt(sigma0 * sigma0 + spread * spread);
}

}  // namespace veldrift
