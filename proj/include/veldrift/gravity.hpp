#pragma once

#include <optional>
#include <string>

#include "veldrift/constants.hpp"

namespace veldrift {

/// A macroscopic body. Only mass is always required; the optional fields
/// feed the consistency calculators.
struct MacroObject {
    double mass;                          ///< kg
    std::optional<double> density;        ///< kg/m^3
    std::optional<double> size;           ///< m
    std::optional<double> temperature;    ///< K
    std::optional<double> surface_area;   ///< m^2

    void validate() const;
};

enum class Body { A, B };

inline constexpr double kMinSeparationOverWavepacket = 10.0;

/// Two bodies a distance r apart. make() enforces r > 0 and
/// r / (c tau) > min_ratio for both bodies, tau being each fluctuation time.
struct BodyPair {
    MacroObject a;
    MacroObject b;
    double r;

    static BodyPair make(MacroObject a, MacroObject b, double r, const PhysicalConstants& k,
                         double min_ratio = kMinSeparationOverWavepacket);
    const MacroObject& body(Body which) const { return which == Body::A ? a : b; }
};

/// Every chain output is built with unit prefactors; see kPrefactorNote.
inline constexpr const char* kPrefactorNote =
    "unit prefactors throughout the chain; the resulting acceleration is exactly -G M / (2 r^2). "
    "Only scalings and orders of magnitude are meaningful.";

struct ChainReport {
    double l0;             ///< m
    double tau;            ///< s, fluctuation time of the source
    double lyapunov_rate;  ///< 1/s, taken as 1 / tau (no chaotic dynamics simulated)
    double dv;             ///< m/s, velocity resolution at the separation
    double a_measured;     ///< m/s^2, < 0 for attraction
    std::string prefactor_note;
};

/// M l0^2 / hbar.
double fluctuation_time(double mass, double l0, const PhysicalConstants& k);

/// tau c^2 / r for the selected body of the pair.
double velocity_resolution(const BodyPair& pair, Body which, const PhysicalConstants& k);

/// Full chain for a source observed at distance r.
ChainReport newton_chain(const MacroObject& source, double r, const PhysicalConstants& k);

/// Acceleration of the source's mean measured velocity, -(1/2c) dv^2 / tau.
double measured_acceleration(const MacroObject& source, double r, const PhysicalConstants& k);

/// a_A - a_B for mutually measuring bodies.
double relative_measured_acceleration(const BodyPair& pair, const PhysicalConstants& k);

struct SplitAccelerations {
    double a_prime_a;
    double a_prime_b;
};

/// Laboratory accelerations with a'_A - a'_B = a_rel and M_A a'_A + M_B a'_B = 0.
SplitAccelerations split_accelerations(const BodyPair& pair, double a_rel);

/// Minimal velocity resolvable after round trip 2 t0: tau c / t0.
double resolution_threshold(double tau_emit, double t0, double c);

/// Wien displacement peak in angular frequency: hbar omega = 2.821439 kB T.
double wien_peak_angular_frequency(double temperature, const PhysicalConstants& k);

/// Photon momentum over the momentum width of the source, for an observer
/// one body size away: hbar^2 omega / (rho^2 R^5 l0^2 c^3). Needs density and size.
double recoil_ratio(const MacroObject& source, double omega, const PhysicalConstants& k);

struct PhotonBudget {
    double photons_per_tau;
    bool pass;  ///< at least one photon detected per fluctuation time
};

/// (sigma_SB l0^2 / (kB hbar)) T^3 A M Omega. Needs temperature and surface area.
PhotonBudget photon_budget(const MacroObject& source, double solid_angle, const PhysicalConstants& k);

/// hbar c^3 / (kB G M).
double trembling_temperature(double mass, const PhysicalConstants& k);

/// hbar c^3 / (8 pi G M kB), for comparison with trembling_temperature.
double hawking_temperature(double mass, const PhysicalConstants& k);

/// hbar / M.
double spatial_diffusion_coefficient(double mass, const PhysicalConstants& k);

/// Free Gaussian packet width sqrt(sigma0^2 + (hbar t / (M sigma0))^2).
double wavepacket_width(double sigma0, double mass, double t, const PhysicalConstants& k);

}  // namespace veldrift
