#pragma once

#include <string_view>

namespace veldrift {

/// Physical constants in SI units (or in simulation units for
/// nondimensional runs). All fields strictly positive.
struct PhysicalConstants {
    double c;         ///< speed of light, m/s
    double hbar;      ///< reduced Planck constant, J s
    double G;         ///< gravitational constant, m^3 / (kg s^2)
    double kB;        ///< Boltzmann constant, J/K
    double sigma_SB;  ///< Stefan-Boltzmann constant, W / (m^2 K^4)

    /// Throws InvalidInput unless every field is finite and > 0.
    void validate() const;
};

/// CODATA 2018 recommended values.
inline constexpr PhysicalConstants kCodata{
    299792458.0,
    1.054571817e-34,
    6.67430e-11,
    1.380649e-23,
    5.670374419e-8,
};

enum class UnitMode { SI, Nondimensional };

std::string_view to_string(UnitMode mode);
UnitMode unit_mode_from_string(std::string_view text);

/// Default speed of light in simulation units. Large enough that w << c,
/// small enough that O(v/c) drift is visible with ~1e5 samples.
inline constexpr double kDefaultSimulationC = 100.0;

/// Unit convention for a run. In SI mode the constants are CODATA and the
/// scales are 1. In nondimensional mode hbar = G = kB = sigma_SB = 1 and c
/// is a finite configurable number; velocity_scale and time_scale record
/// how one simulation unit maps to m/s and s.
struct UnitSystem {
    UnitMode mode = UnitMode::SI;
    double velocity_scale = 1.0;
    double time_scale = 1.0;
    PhysicalConstants constants = kCodata;

    static UnitSystem si();
    static UnitSystem nondimensional(double c = kDefaultSimulationC);
};

/// sqrt(G hbar / c^3).
double planck_length(const PhysicalConstants& k);

/// sqrt(hbar c / G).
double planck_mass(const PhysicalConstants& k);

inline constexpr double kNonrelativisticThreshold = 1e-2;

struct NonrelativisticReport {
    /// hbar / (M l0 c): the Planck-scale fluctuation velocity over c.
    double ratio;
    double threshold;
    bool pass;  ///< ratio < threshold
};

/// Validity of the non-relativistic treatment for a body of `mass` kg.
NonrelativisticReport check_nonrelativistic(double mass, const PhysicalConstants& k,
                                            double threshold = kNonrelativisticThreshold);

}  // namespace veldrift
