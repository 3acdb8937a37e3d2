#ifndef EHDSIM_CONSTANTS_HPP
#define EHDSIM_CONSTANTS_HPP

#include <numbers>
#include <stdexcept>

namespace ehd {

inline constexpr double pi = std::numbers::pi_v<double>;

/// ε₀ — vacuum permittivity [F/m], CODATA 2018.
inline constexpr double vacuum_permittivity = 8.8541878128e-12;

/// Ambient/physical constants shared across modules. SI units.
struct PhysicalConstants {
    double vacuum_permittivity = ehd::vacuum_permittivity; // F/m
    double air_dynamic_viscosity = 1.81e-5;                // Pa·s
    double air_density = 1.204;                            // kg/m³
    double gravity = 9.81;                                 // m/s², applied along -z
    bool gravity_enabled = true;

    void validate() const {
        if (vacuum_permittivity <= 0.0 || air_dynamic_viscosity <= 0.0 || air_density <= 0.0 ||
            gravity <= 0.0) {
            throw std::invalid_argument("PhysicalConstants: all fields must be strictly positive");
        }
    }

    /// Effective gravitational acceleration, 0 when toggled off.
    double effective_gravity() const { return gravity_enabled ? gravity : 0.0; }
};

} // namespace ehd

#endif // EHDSIM_CONSTANTS_HPP
