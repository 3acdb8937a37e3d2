#ifndef EHDSIM_PRINTHEAD_HPP
#define EHDSIM_PRINTHEAD_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehdsim/constants.hpp"
#include "ehdsim/errors.hpp"
#include "ehdsim/vec.hpp"

namespace ehd {

/// Spiked-disk printhead. The substrate is the grounded plane z = 0; the disk
/// lies in the plane through `center` with normal `disk_normal`, and the spike
/// tips sit on the circle of radius dedendum_radius + spike_length.
struct PrintheadGeometry {
    double dedendum_diameter = 10e-3;        // m
    int spike_count = 16;
    double spike_length = 1e-3;              // m
    double tip_regularization_radius = 1e-5; // m, "a"
    double disk_thickness = 20e-6;           // m, informational only
    Vec3 center{0.0, 0.0, 20e-3};            // m
    Vec3 disk_normal{0.0, 0.0, 1.0};         // unit

    double tip_circle_radius() const { return 0.5 * dedendum_diameter + spike_length; }

    void validate() const {
        if (spike_count < 1) throw std::invalid_argument("PrintheadGeometry: spike_count must be >= 1");
        if (!(dedendum_diameter > 0.0)) throw std::invalid_argument("PrintheadGeometry: dedendum_diameter must be > 0");
        if (!(spike_length > 0.0)) throw std::invalid_argument("PrintheadGeometry: spike_length must be > 0");
        if (!(tip_regularization_radius > 0.0) || tip_regularization_radius >= 0.5 * spike_length)
            throw std::invalid_argument("PrintheadGeometry: tip radius must satisfy 0 < a << spike_length");
        if (!(center.z > 0.0)) throw std::invalid_argument("PrintheadGeometry: center must be above the plane");
        const double n = norm(disk_normal);
        if (std::fabs(n - 1.0) > 1e-9) throw std::invalid_argument("PrintheadGeometry: disk_normal must be a unit vector");
    }
};

/// Voltage, standoff and flow conditions for a run.
struct ProcessConditions {
    double applied_voltage = 8000.0;   // V, typical operating range 7-10 kV
    double standoff = 20e-3;           // m, tip plane to grounded plane
    double flow_rate_per_head = 1e-10; // m³/s
    double substrate_speed = 0.0;      // m/s
    Vec2 substrate_direction{1.0, 0.0};

    void validate() const {
        if (!(applied_voltage > 0.0)) throw std::invalid_argument("ProcessConditions: applied_voltage must be > 0");
        if (!(standoff > 0.0)) throw std::invalid_argument("ProcessConditions: standoff must be > 0");
        if (!(flow_rate_per_head > 0.0)) throw std::invalid_argument("ProcessConditions: flow_rate_per_head must be > 0");
        if (substrate_speed < 0.0) throw std::invalid_argument("ProcessConditions: substrate_speed must be >= 0");
        const double n = norm(substrate_direction);
        if (std::fabs(n - 1.0) > 1e-9)
            throw std::invalid_argument("ProcessConditions: substrate_direction must be a unit vector");
    }
};

enum class LayoutPattern { parallel, angled60, angled90, custom };

inline const char* to_string(LayoutPattern p) {
    switch (p) {
        case LayoutPattern::parallel: return "parallel";
        case LayoutPattern::angled60: return "angled60";
        case LayoutPattern::angled90: return "angled90";
        case LayoutPattern::custom: return "custom";
    }
    return "?";
}

/// Multi-head arrangement. `spacing` is center-to-center.
struct ArrayLayout {
    std::vector<PrintheadGeometry> heads;
    LayoutPattern pattern = LayoutPattern::custom;
    double spacing = 0.0; // m

    void validate() const {
        if (heads.empty()) throw std::invalid_argument("ArrayLayout: needs at least one head");
        for (const auto& h : heads) h.validate();
        for (std::size_t i = 0; i < heads.size(); ++i) {
            for (std::size_t j = i + 1; j < heads.size(); ++j) {
                if (norm(heads[i].center - heads[j].center) == 0.0)
                    throw GeometryError("ArrayLayout: head centers " + std::to_string(i) + " and " +
                                        std::to_string(j) + " coincide");
            }
        }
        if (pattern != LayoutPattern::custom) {
            const double z0 = heads.front().center.z;
            for (const auto& h : heads)
                if (std::fabs(h.center.z - z0) > 1e-12)
                    throw std::invalid_argument("ArrayLayout: non-custom patterns require equal head heights");
        }
    }
};

/// Spike tip positions: spike_count points evenly spaced on the tip circle in
/// the disk plane, starting from a deterministic in-plane reference axis.
inline std::vector<Vec3> tip_positions(const PrintheadGeometry& g) {
    g.validate();
    const Vec3 n = normalized(g.disk_normal);
    const Vec3 u = any_orthogonal(n);
    const Vec3 v = cross(n, u);
    const double r = g.tip_circle_radius();

    std::vector<Vec3> tips;
    tips.reserve(static_cast<std::size_t>(g.spike_count));
    for (int k = 0; k < g.spike_count; ++k) {
        const double angle = 2.0 * pi * static_cast<double>(k) / static_cast<double>(g.spike_count);
        tips.push_back(g.center + r * (std::cos(angle) * u + std::sin(angle) * v));
    }
    return tips;
}

/// Outward unit direction of each spike (radial in the disk plane).
inline std::vector<Vec3> tip_directions(const PrintheadGeometry& g) {
    auto tips = tip_positions(g);
    for (auto& t : tips) t = normalized(t - g.center);
    return tips;
}

} // namespace ehd

#endif // EHDSIM_PRINTHEAD_HPP
