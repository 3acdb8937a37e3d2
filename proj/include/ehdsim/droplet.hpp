#ifndef EHDSIM_DROPLET_HPP
#define EHDSIM_DROPLET_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "ehdsim/constants.hpp"
#include "ehdsim/ink.hpp"
#include "ehdsim/vec.hpp"

namespace ehd {

enum class DropletStatus { in_flight, deposited, aerosolized, escaped };

inline const char* to_string(DropletStatus s) {
    switch (s) {
        case DropletStatus::in_flight: return "in_flight";
        case DropletStatus::deposited: return "deposited";
        case DropletStatus::aerosolized: return "aerosolized";
        case DropletStatus::escaped: return "escaped";
    }
    return "?";
}

/// Charged, evaporating particle. The id encodes lineage: the upper bits carry
/// the emission (root) index, the lower bits the birth sequence within that
/// root's fission cascade, so sorting by id is the canonical event order.
struct Droplet {
    static constexpr int seq_bits = 20;

    std::uint64_t id = 0;
    Vec3 position{};        // m
    Vec3 velocity{};        // m/s
    double diameter = 0.0;  // m
    double charge = 0.0;    // C
    double solvent_mass = 0.0; // kg
    double solid_mass = 0.0;   // kg
    int generation = 0;     // fission depth, 0 = parent
    DropletStatus status = DropletStatus::in_flight;
    double time = 0.0;      // s, age of the run at the droplet's current state

    static std::uint64_t make_id(std::uint64_t root, std::uint64_t seq) {
        return (root << seq_bits) | seq;
    }
    std::uint64_t root() const { return id >> seq_bits; }
    std::uint64_t seq() const { return id & ((std::uint64_t(1) << seq_bits) - 1); }

    double total_mass() const { return solvent_mass + solid_mass; }
    double volume() const { return pi / 6.0 * diameter * diameter * diameter; }
};

/// Rayleigh charge limit q_R = sqrt(8 π² ε₀ γ d³) of a spherical droplet [C].
inline double rayleigh_limit(double diameter, double surface_tension,
                             double epsilon0 = vacuum_permittivity) {
    if (diameter < 0.0) throw std::invalid_argument("rayleigh_limit: negative diameter");
    if (!(surface_tension > 0.0)) throw std::invalid_argument("rayleigh_limit: surface_tension must be > 0");
    return std::sqrt(8.0 * pi * pi * epsilon0 * surface_tension * diameter * diameter * diameter);
}

/// Diameter of the dry solid core alone (evaporation floor).
inline double solid_core_diameter(double solid_mass, double solid_density) {
    return std::cbrt(6.0 * solid_mass / (pi * solid_density));
}

/// Diameter consistent with the droplet's masses:
/// (π/6) d³ = solvent_mass/ρ_solvent + solid_mass/ρ_solid.
inline double diameter_from_masses(double solvent_mass, double solid_mass, double solvent_density,
                                   double solid_density) {
    const double v = solvent_mass / solvent_density + solid_mass / solid_density;
    return std::cbrt(6.0 * v / pi);
}

} // namespace ehd

#endif // EHDSIM_DROPLET_HPP
