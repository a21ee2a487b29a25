#include "veldrift/constants.hpp"

#include <cmath>
#include <string>

#include "veldrift/errors.hpp"

namespace veldrift {

void PhysicalConstants::validate() const {
    auto check = [](double value, const char* name) {
        if (!(std::isfinite(value) && value > 0.0)) {
            throw InvalidInput(std::string("physical constant ") + name + " must be positive and finite");
        }
    };
    check(c, "c");
    check(hbar, "hbar");
    check(G, "G");
    check(kB, "kB");
    check(sigma_SB, "sigma_SB");
}

std::string_view to_string(UnitMode mode) {
    return mode == UnitMode::SI ? "SI" : "Nondimensional";
}

UnitMode unit_mode_from_string(std::string_view text) {
    if (text == "SI" || text == "si") return UnitMode::SI;
    if (text == "Nondimensional" || text == "nondimensional") return UnitMode::Nondimensional;
    throw InvalidInput("unknown unit mode '" + std::string(text) + "'");
}

UnitSystem UnitSystem::si() { return UnitSystem{}; }

UnitSystem UnitSystem::nondimensional(double c) {
    UnitSystem units;
    units.mode = UnitMode::Nondimensional;
    units.constants = PhysicalConstants{c, 1.0, 1.0, 1.0, 1.0};
    units.constants.validate();
    return units;
}

double planck_length(const PhysicalConstants& k) {
    return std::sqrt(k.G * k.hbar / (k.c * k.c * k.c));
}

double planck_mass(const PhysicalConstants& k) {
    return std::sqrt(k.hbar * k.c / k.G);
}

NonrelativisticReport check_nonrelativistic(double mass, const PhysicalConstants& k,
                                            double threshold) {
    if (!(mass > 0.0)) {
        throw InvalidInput("check_nonrelativistic: mass must be positive");
    }
    const double ratio = k.hbar / (mass * planck_length(k) * k.c);
    return {ratio, threshold, ratio < threshold};
}

}  // namespace veldrift
