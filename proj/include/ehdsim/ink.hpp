#ifndef EHDSIM_INK_HPP
#define EHDSIM_INK_HPP

#include <stdexcept>
#include <string>

namespace ehd {

/// Fluid, electrical and solid-content properties of a printable ink. SI units.
struct InkProperties {
    double density = 0.0;               // kg/m³, bulk ink
    double surface_tension = 0.0;       // N/m
    double conductivity = 0.0;          // S/m
    double relative_permittivity = 1.0; // dimensionless, ≥ 1
    double viscosity = 0.0;             // Pa·s
    double solid_mass_fraction = 0.0;   // kg solid / kg ink, in [0, 1)
    double solid_density = 0.0;         // kg/m³, dry solid
    double evaporation_constant = 0.0;  // m²/s, d²-law rate β

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0)) throw std::invalid_argument(std::string("InkProperties: ") + name + " must be > 0");
        };
        positive(density, "density");
        positive(surface_tension, "surface_tension");
        positive(conductivity, "conductivity");
        positive(viscosity, "viscosity");
        positive(solid_density, "solid_density");
        positive(evaporation_constant, "evaporation_constant");
        if (relative_permittivity < 1.0)
            throw std::invalid_argument("InkProperties: relative_permittivity must be >= 1");
        if (solid_mass_fraction < 0.0 || solid_mass_fraction >= 1.0)
            throw std::invalid_argument("InkProperties: solid_mass_fraction must be in [0, 1)");
    }

    /// Volume fraction of solid in the bulk ink (ideal mixing).
    double solid_volume_fraction() const {
        return solid_mass_fraction * density / solid_density;
    }

    /// Density of the solvent phase alone, recovered by inverting ideal mixing:
    /// 1/ρ_ink = w/ρ_solid + (1−w)/ρ_solv. For w = 0 this is the ink density.
    double solvent_density() const {
        if (solid_mass_fraction == 0.0) return density;
        const double inv = 1.0 / density - solid_mass_fraction / solid_density;
        return (1.0 - solid_mass_fraction) / inv;
    }
};

/// Bulk densities of the recipe components. Defaults: glycine / water / ethanol.
struct RecipeDensities {
    double solid = 1607.0;   // kg/m³
    double water = 997.0;    // kg/m³
    double ethanol = 789.0;  // kg/m³
};

/// Build ink properties from a mass-of-solute / volume-of-solvents recipe under
/// ideal mixing (total volume = Σ component volumes). Electrical and fluid
/// parameters are measured quantities and pass through unchanged.
inline InkProperties derive_ink_from_recipe(double solute_mass,      // kg
                                            double water_volume,     // m³
                                            double ethanol_volume,   // m³
                                            const RecipeDensities& densities,
                                            double measured_conductivity,          // S/m
                                            double measured_relative_permittivity, // -
                                            double surface_tension,                // N/m
                                            double viscosity,                      // Pa·s
                                            double evaporation_constant)           // m²/s
{
    if (solute_mass < 0.0) throw std::invalid_argument("derive_ink_from_recipe: solute_mass must be >= 0");
    if (!(water_volume > 0.0)) throw std::invalid_argument("derive_ink_from_recipe: water_volume must be > 0");
    if (ethanol_volume < 0.0) throw std::invalid_argument("derive_ink_from_recipe: ethanol_volume must be >= 0");
    if (!(densities.solid > 0.0 && densities.water > 0.0 && densities.ethanol > 0.0))
        throw std::invalid_argument("derive_ink_from_recipe: component densities must be > 0");

    const double water_mass = densities.water * water_volume;
    const double ethanol_mass = densities.ethanol * ethanol_volume;
    const double solute_volume = solute_mass / densities.solid;

    const double total_mass = solute_mass + water_mass + ethanol_mass;
    const double total_volume = solute_volume + water_volume + ethanol_volume;

    InkProperties ink;
    ink.density = total_mass / total_volume;
    ink.solid_mass_fraction = solute_mass / total_mass;
    ink.solid_density = densities.solid;
    ink.surface_tension = surface_tension;
    ink.conductivity = measured_conductivity;
    ink.relative_permittivity = measured_relative_permittivity;
    ink.viscosity = viscosity;
    ink.evaporation_constant = evaporation_constant;

    if (ink.solid_mass_fraction >= 1.0)
        throw std::invalid_argument("derive_ink_from_recipe: solid_mass_fraction >= 1");
    ink.validate();
    return ink;
}

} // namespace ehd

#endif // EHDSIM_INK_HPP
