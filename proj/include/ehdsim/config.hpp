#ifndef EHDSIM_CONFIG_HPP
#define EHDSIM_CONFIG_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ehdsim/constants.hpp"
#include "ehdsim/deposition.hpp"
#include "ehdsim/errors.hpp"
#include "ehdsim/ink.hpp"
#include "ehdsim/layout.hpp"
#include "ehdsim/printhead.hpp"
#include "ehdsim/rng.hpp"
#include "ehdsim/spray.hpp"
#include "ehdsim/transport.hpp"

namespace ehd {

/// Flat run configuration. Field names are section_key; the schema table below
/// maps them onto the plain-text `[section]` / `key = value` format. Every
/// default lives here; the three measured ink properties (surface tension,
/// conductivity, permittivity) have no sensible default and are required.
struct Config {
    // [recipe] — optional input; when present it resolves into ink density and
    // solid fraction. Declared first so the ink defaults below derive from it.
    double recipe_solute_mass = 2.0e-3;   // kg
    double recipe_water_volume = 20.0e-6; // m³
    double recipe_ethanol_volume = 5.0e-6;
    double recipe_solid_density = 1607.0;
    double recipe_water_density = 997.0;
    double recipe_ethanol_density = 789.0;

    // [ink] — density and solid fraction default to the stock recipe under
    // ideal mixing and may be overridden directly or through [recipe]
    double ink_surface_tension = 0.0;       // required
    double ink_conductivity = 0.0;          // required
    double ink_relative_permittivity = 0.0; // required
    double ink_density =
        (recipe_solute_mass + recipe_water_density * recipe_water_volume +
         recipe_ethanol_density * recipe_ethanol_volume) /
        (recipe_solute_mass / recipe_solid_density + recipe_water_volume + recipe_ethanol_volume);
    double ink_solid_mass_fraction =
        recipe_solute_mass / (recipe_solute_mass + recipe_water_density * recipe_water_volume +
                              recipe_ethanol_density * recipe_ethanol_volume);
    double ink_solid_density = recipe_solid_density;
    double ink_viscosity = 1.0e-3;
    double ink_evaporation_constant = 1.0e-9;

    // [printhead]
    double printhead_dedendum_diameter = 10e-3;
    std::int64_t printhead_spike_count = 16;
    double printhead_spike_length = 1e-3;
    double printhead_tip_radius = 1e-5;
    double printhead_disk_thickness = 20e-6;

    // [process]
    double process_applied_voltage = 8000.0;
    double process_standoff = 20e-3;
    double process_flow_rate = 1e-10; // m³/s per head
    double process_substrate_speed = 0.0;
    double process_substrate_direction_x = 1.0;
    double process_substrate_direction_y = 0.0;

    // [layout]
    std::string layout_pattern = "parallel";
    std::int64_t layout_n_heads = 2;
    double layout_spacing = 0.02;

    // [spray]
    double spray_current_prefactor = 18.0;
    double spray_jet_diameter_coefficient = 1.0;
    double spray_breakup_diameter_ratio = 1.89;
    double spray_emitted_charge_fraction = 0.5;
    double spray_diameter_sigma = 0.0;
    double spray_activity_threshold = 0.8;

    // [transport]
    std::int64_t transport_offspring_count = 7;
    double transport_fission_charge_fraction = 0.20;
    double transport_fission_mass_fraction = 0.02;
    std::int64_t transport_generation_cap = 8;
    double transport_aerosol_cutoff = 100e-9;
    bool transport_cunningham_slip = false;
    double transport_air_mean_free_path = 68e-9;
    double transport_domain_half_width = 0.25;
    double transport_domain_top = 0.1;
    double transport_max_step_displacement_fraction = 0.25;
    double transport_emission_step = 1e-5;

    // [ambient]
    double ambient_air_viscosity = 1.81e-5;
    double ambient_air_density = 1.204;
    double ambient_gravity = 9.81;
    bool ambient_gravity_enabled = true;

    // [deposition]
    double deposition_cell_size = 1e-3;
    std::int64_t deposition_nx = 101;
    std::int64_t deposition_ny = 101;
    double deposition_origin_x = -0.0505;
    double deposition_origin_y = -0.0505;
    double deposition_window_start = 0.0;
    double deposition_window_end = 0.0; // 0/0 = whole run
    double deposition_splat_radius = 0.0;

    // [run]
    double run_duration = 0.01;
    std::int64_t run_seed = 1;

    // [field_map]
    double field_map_x_min = -0.02;
    double field_map_x_max = 0.02;
    std::int64_t field_map_nx = 41;
    double field_map_y_min = -0.02;
    double field_map_y_max = 0.02;
    std::int64_t field_map_ny = 41;
    double field_map_z_min = 1e-3;
    double field_map_z_max = 19e-3;
    std::int64_t field_map_nz = 1;

    // [interference]
    double interference_spacing_min = 0.01205;
    double interference_spacing_max = 0.1;
    std::int64_t interference_points = 20;
    bool interference_log_scale = true;

    // [layout_opt]
    double layout_opt_s_lo = 0.01205;
    double layout_opt_s_hi = 0.1;
    double layout_opt_tol = 1e-5;

    // [rate]
    std::int64_t rate_n_min = 1;
    std::int64_t rate_n_max = 8;
};

namespace config_detail {

using Member = std::variant<double Config::*, std::int64_t Config::*, bool Config::*, std::string Config::*>;

struct Entry {
    const char* section;
    const char* key;
    Member member;
    bool required = false;
    bool serialized = true; // recipe inputs resolve into ink and are not echoed
};

inline const std::vector<Entry>& schema() {
    static const std::vector<Entry> entries = {
        {"ink", "surface_tension", &Config::ink_surface_tension, true},
        {"ink", "conductivity", &Config::ink_conductivity, true},
        {"ink", "relative_permittivity", &Config::ink_relative_permittivity, true},
        {"ink", "density", &Config::ink_density},
        {"ink", "solid_mass_fraction", &Config::ink_solid_mass_fraction},
        {"ink", "solid_density", &Config::ink_solid_density},
        {"ink", "viscosity", &Config::ink_viscosity},
        {"ink", "evaporation_constant", &Config::ink_evaporation_constant},

        {"recipe", "solute_mass", &Config::recipe_solute_mass, false, false},
        {"recipe", "water_volume", &Config::recipe_water_volume, false, false},
        {"recipe", "ethanol_volume", &Config::recipe_ethanol_volume, false, false},
        {"recipe", "solid_density", &Config::recipe_solid_density, false, false},
        {"recipe", "water_density", &Config::recipe_water_density, false, false},
        {"recipe", "ethanol_density", &Config::recipe_ethanol_density, false, false},

        {"printhead", "dedendum_diameter", &Config::printhead_dedendum_diameter},
        {"printhead", "spike_count", &Config::printhead_spike_count},
        {"printhead", "spike_length", &Config::printhead_spike_length},
        {"printhead", "tip_radius", &Config::printhead_tip_radius},
        {"printhead", "disk_thickness", &Config::printhead_disk_thickness},

        {"process", "applied_voltage", &Config::process_applied_voltage},
        {"process", "standoff", &Config::process_standoff},
        {"process", "flow_rate", &Config::process_flow_rate},
        {"process", "substrate_speed", &Config::process_substrate_speed},
        {"process", "substrate_direction_x", &Config::process_substrate_direction_x},
        {"process", "substrate_direction_y", &Config::process_substrate_direction_y},

        {"layout", "pattern", &Config::layout_pattern},
        {"layout", "n_heads", &Config::layout_n_heads},
        {"layout", "spacing", &Config::layout_spacing},

        {"spray", "current_prefactor", &Config::spray_current_prefactor},
        {"spray", "jet_diameter_coefficient", &Config::spray_jet_diameter_coefficient},
        {"spray", "breakup_diameter_ratio", &Config::spray_breakup_diameter_ratio},
        {"spray", "emitted_charge_fraction", &Config::spray_emitted_charge_fraction},
        {"spray", "diameter_sigma", &Config::spray_diameter_sigma},
        {"spray", "activity_threshold", &Config::spray_activity_threshold},

        {"transport", "offspring_count", &Config::transport_offspring_count},
        {"transport", "fission_charge_fraction", &Config::transport_fission_charge_fraction},
        {"transport", "fission_mass_fraction", &Config::transport_fission_mass_fraction},
        {"transport", "generation_cap", &Config::transport_generation_cap},
        {"transport", "aerosol_cutoff", &Config::transport_aerosol_cutoff},
        {"transport", "cunningham_slip", &Config::transport_cunningham_slip},
        {"transport", "air_mean_free_path", &Config::transport_air_mean_free_path},
        {"transport", "domain_half_width", &Config::transport_domain_half_width},
        {"transport", "domain_top", &Config::transport_domain_top},
        {"transport", "max_step_displacement_fraction", &Config::transport_max_step_displacement_fraction},
        {"transport", "emission_step", &Config::transport_emission_step},

        {"ambient", "air_viscosity", &Config::ambient_air_viscosity},
        {"ambient", "air_density", &Config::ambient_air_density},
        {"ambient", "gravity", &Config::ambient_gravity},
        {"ambient", "gravity_enabled", &Config::ambient_gravity_enabled},

        {"deposition", "cell_size", &Config::deposition_cell_size},
        {"deposition", "nx", &Config::deposition_nx},
        {"deposition", "ny", &Config::deposition_ny},
        {"deposition", "origin_x", &Config::deposition_origin_x},
        {"deposition", "origin_y", &Config::deposition_origin_y},
        {"deposition", "window_start", &Config::deposition_window_start},
        {"deposition", "window_end", &Config::deposition_window_end},
        {"deposition", "splat_radius", &Config::deposition_splat_radius},

        {"run", "duration", &Config::run_duration},
        {"run", "seed", &Config::run_seed},

        {"field_map", "x_min", &Config::field_map_x_min},
        {"field_map", "x_max", &Config::field_map_x_max},
        {"field_map", "nx", &Config::field_map_nx},
        {"field_map", "y_min", &Config::field_map_y_min},
        {"field_map", "y_max", &Config::field_map_y_max},
        {"field_map", "ny", &Config::field_map_ny},
        {"field_map", "z_min", &Config::field_map_z_min},
        {"field_map", "z_max", &Config::field_map_z_max},
        {"field_map", "nz", &Config::field_map_nz},

        {"interference", "spacing_min", &Config::interference_spacing_min},
        {"interference", "spacing_max", &Config::interference_spacing_max},
        {"interference", "points", &Config::interference_points},
        {"interference", "log_scale", &Config::interference_log_scale},

        {"layout_opt", "s_lo", &Config::layout_opt_s_lo},
        {"layout_opt", "s_hi", &Config::layout_opt_s_hi},
        {"layout_opt", "tol", &Config::layout_opt_tol},

        {"rate", "n_min", &Config::rate_n_min},
        {"rate", "n_max", &Config::rate_n_max},
    };
    return entries;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline void assign(Config& cfg, const Entry& entry, const std::string& raw, int line) {
    const std::string value = trim(raw);
    if (value.empty()) throw ConfigError(std::string("empty value for key '") + entry.section + "." + entry.key + "'", line);
    if (auto pd = std::get_if<double Config::*>(&entry.member)) {
        std::size_t pos = 0;
        double v = 0.0;
        try { v = std::stod(value, &pos); } catch (const std::exception&) { pos = 0; }
        if (pos != value.size())
            throw ConfigError("expected a number for '" + std::string(entry.section) + "." + entry.key + "', got '" + value + "'", line);
        cfg.**pd = v;
    } else if (auto pi = std::get_if<std::int64_t Config::*>(&entry.member)) {
        std::size_t pos = 0;
        long long v = 0;
        try { v = std::stoll(value, &pos); } catch (const std::exception&) { pos = 0; }
        if (pos != value.size())
            throw ConfigError("expected an integer for '" + std::string(entry.section) + "." + entry.key + "', got '" + value + "'", line);
        cfg.**pi = v;
    } else if (auto pb = std::get_if<bool Config::*>(&entry.member)) {
        if (value == "true") cfg.**pb = true;
        else if (value == "false") cfg.**pb = false;
        else throw ConfigError("expected true/false for '" + std::string(entry.section) + "." + entry.key + "', got '" + value + "'", line);
    } else if (auto ps = std::get_if<std::string Config::*>(&entry.member)) {
        cfg.**ps = value;
    }
}

inline std::string render(const Config& cfg, const Entry& entry) {
    if (auto pd = std::get_if<double Config::*>(&entry.member)) return format_double(cfg.**pd);
    if (auto pi = std::get_if<std::int64_t Config::*>(&entry.member)) return std::to_string(cfg.**pi);
    if (auto pb = std::get_if<bool Config::*>(&entry.member)) return cfg.**pb ? "true" : "false";
    return cfg.*(*std::get_if<std::string Config::*>(&entry.member));
}

} // namespace config_detail

/// Parse result: the config plus which keys the file set explicitly.
struct ParsedConfig {
    Config values;
    std::set<std::string> explicit_keys; // "section.key"
};

/// Parse the plain-text config format. Unknown sections/keys, type errors and
/// duplicates are reported with their line number.
inline ParsedConfig parse_config(std::istream& is) {
    ParsedConfig parsed;
    std::string line;
    std::string section;
    int line_no = 0;

    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = config_detail::trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header '" + line + "'", line_no);
            section = config_detail::trim(line.substr(1, line.size() - 2));
            bool known = false;
            for (const auto& e : config_detail::schema())
                if (section == e.section) { known = true; break; }
            if (!known) throw ConfigError("unknown section '" + section + "'", line_no);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + line + "'", line_no);
        const std::string key = config_detail::trim(line.substr(0, eq));
        const std::string value = line.substr(eq + 1);
        if (section.empty()) throw ConfigError("key '" + key + "' outside any [section]", line_no);

        const config_detail::Entry* entry = nullptr;
        for (const auto& e : config_detail::schema())
            if (section == e.section && key == e.key) { entry = &e; break; }
        if (!entry) throw ConfigError("unknown key '" + section + "." + key + "'", line_no);

        const std::string full = section + "." + key;
        if (!parsed.explicit_keys.insert(full).second)
            throw ConfigError("duplicate key '" + full + "'", line_no);
        config_detail::assign(parsed.values, *entry, value, line_no);
    }
    return parsed;
}

/// Load + resolve a config: applies the recipe (if present), checks required
/// keys, and leaves a fully resolved value set that serializes canonically.
inline Config load_config(std::istream& is) {
    ParsedConfig parsed = parse_config(is);
    Config& cfg = parsed.values;

    bool recipe_given = false;
    for (const auto& key : parsed.explicit_keys)
        if (key.rfind("recipe.", 0) == 0) recipe_given = true;

    if (recipe_given) {
        if (parsed.explicit_keys.count("ink.density") || parsed.explicit_keys.count("ink.solid_mass_fraction"))
            throw ConfigError("ink.density / ink.solid_mass_fraction conflict with a [recipe] section");
        RecipeDensities densities{cfg.recipe_solid_density, cfg.recipe_water_density, cfg.recipe_ethanol_density};
        // electrical/fluid parameters are not known yet if the required keys
        // are missing; check those first for a precise diagnostic
        for (const auto& e : config_detail::schema())
            if (e.required && !parsed.explicit_keys.count(std::string(e.section) + "." + e.key))
                throw ConfigError(std::string("missing required key '") + e.section + "." + e.key + "'");
        const InkProperties ink = derive_ink_from_recipe(
            cfg.recipe_solute_mass, cfg.recipe_water_volume, cfg.recipe_ethanol_volume, densities,
            cfg.ink_conductivity, cfg.ink_relative_permittivity, cfg.ink_surface_tension,
            cfg.ink_viscosity, cfg.ink_evaporation_constant);
        cfg.ink_density = ink.density;
        cfg.ink_solid_mass_fraction = ink.solid_mass_fraction;
        cfg.ink_solid_density = ink.solid_density;
    }

    for (const auto& e : config_detail::schema())
        if (e.required && !parsed.explicit_keys.count(std::string(e.section) + "." + e.key))
            throw ConfigError(std::string("missing required key '") + e.section + "." + e.key + "'");
    return cfg;
}

inline Config load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config file '" + path + "'");
    return load_config(f);
}

/// Canonical serialization of the resolved config. Re-parsing this text yields
/// an identical configuration; its hash is the run's provenance id.
inline std::string serialize_config(const Config& cfg) {
    std::ostringstream os;
    std::string section;
    for (const auto& e : config_detail::schema()) {
        if (!e.serialized) continue;
        if (section != e.section) {
            if (!section.empty()) os << '\n';
            section = e.section;
            os << '[' << section << "]\n";
        }
        os << e.key << " = " << config_detail::render(cfg, e) << '\n';
    }
    return os.str();
}

/// Default config listing for --print-defaults: required keys appear as
/// commented placeholders, everything else with its default value.
inline std::string describe_defaults() {
    const Config cfg;
    std::ostringstream os;
    std::string section;
    for (const auto& e : config_detail::schema()) {
        if (section != e.section) {
            if (!section.empty()) os << '\n';
            section = e.section;
            os << '[' << section << "]\n";
            if (section == std::string("recipe"))
                os << "# optional section; when present, ink density and solid_mass_fraction\n"
                      "# are derived from it under ideal mixing\n";
        }
        if (e.required)
            os << "# " << e.key << " = <required, no default>\n";
        else
            os << e.key << " = " << config_detail::render(cfg, e) << '\n';
    }
    return os.str();
}

inline std::uint64_t config_hash(const Config& cfg) {
    const std::string text = serialize_config(cfg);
    return fnv1a64(text.data(), text.size());
}

/// Domain objects resolved from a config.
struct Resolved {
    InkProperties ink;
    PrintheadGeometry head;
    ProcessConditions process;
    ConeJetModel model;
    TransportSettings transport;
    PhysicalConstants constants;
    LayoutPattern pattern = LayoutPattern::parallel;
    int n_heads = 1;
    double spacing = 0.0;
    double activity_threshold = 0.8;
    GridSpec grid;
    SubstrateMotion motion;
    double duration = 0.0;
    std::uint64_t seed = 0;
};

inline LayoutPattern parse_pattern(const std::string& name) {
    if (name == "parallel") return LayoutPattern::parallel;
    if (name == "angled60") return LayoutPattern::angled60;
    if (name == "angled90") return LayoutPattern::angled90;
    if (name == "custom") return LayoutPattern::custom;
    throw ConfigError("unknown layout.pattern '" + name + "'");
}

namespace config_detail {

/// Range-checked narrowing for user-provided integers.
inline int to_int(const char* name, std::int64_t v, std::int64_t lo, std::int64_t hi) {
    if (v < lo || v > hi)
        throw ConfigError(std::string(name) + " must be in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "], got " + std::to_string(v));
    return static_cast<int>(v);
}

} // namespace config_detail

/// Build and validate the domain objects. Violations of physical invariants
/// surface as ConfigError (they are configuration mistakes).
inline Resolved resolve_config(const Config& cfg) {
    using config_detail::to_int;
    Resolved r;
    try {
        r.ink.density = cfg.ink_density;
        r.ink.surface_tension = cfg.ink_surface_tension;
        r.ink.conductivity = cfg.ink_conductivity;
        r.ink.relative_permittivity = cfg.ink_relative_permittivity;
        r.ink.viscosity = cfg.ink_viscosity;
        r.ink.solid_mass_fraction = cfg.ink_solid_mass_fraction;
        r.ink.solid_density = cfg.ink_solid_density;
        r.ink.evaporation_constant = cfg.ink_evaporation_constant;
        r.ink.validate();

        r.head.dedendum_diameter = cfg.printhead_dedendum_diameter;
        r.head.spike_count = to_int("printhead.spike_count", cfg.printhead_spike_count, 1, 4096);
        r.head.spike_length = cfg.printhead_spike_length;
        r.head.tip_regularization_radius = cfg.printhead_tip_radius;
        r.head.disk_thickness = cfg.printhead_disk_thickness;
        r.head.center = {0.0, 0.0, cfg.process_standoff};
        r.head.validate();

        r.process.applied_voltage = cfg.process_applied_voltage;
        r.process.standoff = cfg.process_standoff;
        r.process.flow_rate_per_head = cfg.process_flow_rate;
        r.process.substrate_speed = cfg.process_substrate_speed;
        {
            Vec2 dir{cfg.process_substrate_direction_x, cfg.process_substrate_direction_y};
            const double n = norm(dir);
            if (!(n > 0.0)) throw std::invalid_argument("process.substrate_direction must be nonzero");
            r.process.substrate_direction = {dir.x / n, dir.y / n};
        }
        r.process.validate();

        r.model.current_prefactor = cfg.spray_current_prefactor;
        r.model.jet_diameter_coefficient = cfg.spray_jet_diameter_coefficient;
        r.model.breakup_diameter_ratio = cfg.spray_breakup_diameter_ratio;
        r.model.emitted_charge_fraction = cfg.spray_emitted_charge_fraction;
        r.model.diameter_sigma = cfg.spray_diameter_sigma;
        r.model.validate();
        if (!(cfg.spray_activity_threshold > 0.0 && cfg.spray_activity_threshold < 1.0))
            throw std::invalid_argument("spray.activity_threshold must be in (0, 1)");
        r.activity_threshold = cfg.spray_activity_threshold;

        r.transport.offspring_count = to_int("transport.offspring_count", cfg.transport_offspring_count, 1, 1024);
        r.transport.fission_charge_fraction = cfg.transport_fission_charge_fraction;
        r.transport.fission_mass_fraction = cfg.transport_fission_mass_fraction;
        r.transport.generation_cap = to_int("transport.generation_cap", cfg.transport_generation_cap, 1, 64);
        r.transport.aerosol_cutoff = cfg.transport_aerosol_cutoff;
        r.transport.cunningham_slip = cfg.transport_cunningham_slip;
        r.transport.air_mean_free_path = cfg.transport_air_mean_free_path;
        r.transport.domain_half_width = cfg.transport_domain_half_width;
        r.transport.domain_top = cfg.transport_domain_top;
        r.transport.max_step_displacement_fraction = cfg.transport_max_step_displacement_fraction;
        r.transport.emission_step = cfg.transport_emission_step;
        r.transport.validate();

        r.constants.air_dynamic_viscosity = cfg.ambient_air_viscosity;
        r.constants.air_density = cfg.ambient_air_density;
        r.constants.gravity = cfg.ambient_gravity;
        r.constants.gravity_enabled = cfg.ambient_gravity_enabled;
        r.constants.validate();

        r.pattern = parse_pattern(cfg.layout_pattern);
        if (r.pattern == LayoutPattern::custom)
            throw std::invalid_argument("layout.pattern = custom is not available from config files");
        r.n_heads = to_int("layout.n_heads", cfg.layout_n_heads, 1, 1024);
        r.spacing = cfg.layout_spacing;
        if (!(r.spacing > 0.0)) throw std::invalid_argument("layout.spacing must be > 0");

        r.grid.cell_size = cfg.deposition_cell_size;
        r.grid.nx = to_int("deposition.nx", cfg.deposition_nx, 1, 100000);
        r.grid.ny = to_int("deposition.ny", cfg.deposition_ny, 1, 100000);
        r.grid.origin = {cfg.deposition_origin_x, cfg.deposition_origin_y};
        r.grid.window_start = cfg.deposition_window_start;
        r.grid.window_end = cfg.deposition_window_end;
        r.grid.splat_radius = cfg.deposition_splat_radius;
        r.grid.validate();

        r.motion.speed = cfg.process_substrate_speed;
        r.motion.direction = r.process.substrate_direction;

        if (cfg.run_duration < 0.0) throw std::invalid_argument("run.duration must be >= 0");
        r.duration = cfg.run_duration;
        r.seed = static_cast<std::uint64_t>(cfg.run_seed);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return r;
}

} // namespace ehd

#endif // EHDSIM_CONFIG_HPP
