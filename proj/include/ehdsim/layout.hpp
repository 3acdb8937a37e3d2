#ifndef EHDSIM_LAYOUT_HPP
#define EHDSIM_LAYOUT_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehdsim/errors.hpp"
#include "ehdsim/field.hpp"
#include "ehdsim/ink.hpp"
#include "ehdsim/printhead.hpp"

namespace ehd {

/// Build a multi-head layout from a pattern. `base` provides the per-head
/// geometry; only the centers move. Heights are set to `height`.
///
/// parallel  — collinear along x, equally spaced, centered on the origin.
/// angled60  — two straight arms meeting at 60°, heads alternating arms.
/// angled90  — same with a 90° opening.
///
/// The arm patterns place head k at rank floor(k/2)+1 on arm k mod 2; with the
/// arms symmetric about x, the closest pair on opposite arms is 2·r·sin(α/2)·s
/// apart, which is ≥ spacing for both openings, so the generator contract
/// (pairwise center distance ≥ spacing) holds for every pattern.
inline ArrayLayout generate_layout(LayoutPattern pattern, int n_heads, double spacing, double height,
                                   const PrintheadGeometry& base = {}) {
    if (n_heads < 1) throw std::invalid_argument("generate_layout: n_heads must be >= 1");
    if (!(spacing > 0.0)) throw std::invalid_argument("generate_layout: spacing must be > 0");
    if (!(height > 0.0)) throw std::invalid_argument("generate_layout: height must be > 0");
    if (pattern == LayoutPattern::custom)
        throw std::invalid_argument("generate_layout: custom layouts take explicit centers; use custom_layout");

    ArrayLayout layout;
    layout.pattern = pattern;
    layout.spacing = spacing;
    layout.heads.reserve(static_cast<std::size_t>(n_heads));

    const double half_angle = (pattern == LayoutPattern::angled60) ? pi / 6.0 : pi / 4.0;
    for (int k = 0; k < n_heads; ++k) {
        PrintheadGeometry head = base;
        head.disk_normal = {0.0, 0.0, 1.0};
        if (pattern == LayoutPattern::parallel) {
            const double x = (static_cast<double>(k) - 0.5 * (n_heads - 1)) * spacing;
            head.center = {x, 0.0, height};
        } else {
            const int rank = k / 2 + 1;
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            const double r = static_cast<double>(rank) * spacing;
            head.center = {r * std::cos(half_angle), sign * r * std::sin(half_angle), height};
        }
        layout.heads.push_back(head);
    }
    layout.validate();
    return layout;
}

/// Validate a caller-provided set of head centers as a custom layout.
inline ArrayLayout custom_layout(const std::vector<Vec3>& centers, const PrintheadGeometry& base = {}) {
    if (centers.empty()) throw std::invalid_argument("custom_layout: needs at least one center");
    ArrayLayout layout;
    layout.pattern = LayoutPattern::custom;
    double min_dist = std::numeric_limits<double>::infinity();
    for (const auto& c : centers) {
        PrintheadGeometry head = base;
        head.center = c;
        layout.heads.push_back(head);
    }
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            min_dist = std::fmin(min_dist, norm(centers[i] - centers[j]));
    layout.spacing = centers.size() > 1 ? min_dist : 0.0;
    layout.validate();
    return layout;
}

/// Smallest spacing in [s_lo, s_hi] at which every tip stays cone-jet active
/// (min_i ρ_i ≥ θ), found by bisection to `tol`.
///
/// If the predicate already holds at s_lo, s_lo is returned. If it fails at
/// s_hi the bracket is invalid and the sampled ratios are reported.
inline double min_clear_spacing(LayoutPattern pattern, int n_heads, const ProcessConditions& conditions,
                                double threshold, double s_lo, double s_hi, double tol,
                                const PrintheadGeometry& base = {},
                                const PhysicalConstants& constants = {}) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("min_clear_spacing: threshold must be in (0, 1)");
    if (!(tol > 0.0)) throw std::invalid_argument("min_clear_spacing: tol must be > 0");
    if (!(s_lo > 0.0 && s_hi > s_lo)) throw std::invalid_argument("min_clear_spacing: need 0 < s_lo < s_hi");

    const auto min_rho = [&](double s) {
        const ArrayLayout layout = generate_layout(pattern, n_heads, s, conditions.standoff, base);
        const auto rho = tip_interference_ratios(layout, conditions, constants);
        return *std::min_element(rho.begin(), rho.end());
    };

    const double rho_lo = min_rho(s_lo);
    if (rho_lo >= threshold) return s_lo; // predicate holds everywhere in the bracket
    const double rho_hi = min_rho(s_hi);
    if (rho_hi < threshold) {
        std::ostringstream msg;
        msg << "min_clear_spacing: invalid bracket, predicate fails at both ends"
            << " (min rho " << rho_lo << " at " << s_lo << " m, " << rho_hi << " at " << s_hi << " m)";
        throw NumericalError(msg.str());
    }

    double lo = s_lo, hi = s_hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (min_rho(mid) >= threshold)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

/// One row of the throughput table.
struct ThroughputRow {
    int n_heads = 0;
    double clear_spacing = 0.0; // m
    int active_tips = 0;
    double solid_rate = 0.0;    // µm³/s
    double wet_rate = 0.0;      // µm³/s
};

/// Steady-state throughput versus head count, each layout placed at its
/// minimum clear spacing. The solid rate is Σ active-head flow × solid volume
/// fraction; a head counts as active when at least one of its tips is (its
/// full flow then feeds the active tips).
inline std::vector<ThroughputRow> throughput_table(LayoutPattern pattern, int n_min, int n_max,
                                                   const ProcessConditions& conditions,
                                                   const InkProperties& ink, double threshold,
                                                   double s_lo, double s_hi, double tol,
                                                   const PrintheadGeometry& base = {},
                                                   const PhysicalConstants& constants = {}) {
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("throughput_table: invalid head range");
    const double per_head_solid = conditions.flow_rate_per_head * ink.solid_volume_fraction() * 1e18;
    const double per_head_wet = conditions.flow_rate_per_head * 1e18;

    std::vector<ThroughputRow> table;
    for (int n = n_min; n <= n_max; ++n) {
        ThroughputRow row;
        row.n_heads = n;
        row.clear_spacing = (n == 1) ? s_lo
                                     : min_clear_spacing(pattern, n, conditions, threshold, s_lo, s_hi,
                                                         tol, base, constants);
        const ArrayLayout layout =
            generate_layout(pattern, n, row.clear_spacing, conditions.standoff, base);
        const auto rho = tip_interference_ratios(layout, conditions, constants);
        const auto active = cone_jet_active(rho, threshold);

        // tips are enumerated head-major and all heads share base geometry
        std::vector<bool> head_active(static_cast<std::size_t>(n), false);
        const std::size_t tips_per_head = active.size() / static_cast<std::size_t>(n);
        for (std::size_t i = 0; i < active.size(); ++i)
            if (active[i]) head_active[i / tips_per_head] = true;

        int active_heads = 0;
        for (bool h : head_active) active_heads += h ? 1 : 0;
        row.active_tips = static_cast<int>(std::count(active.begin(), active.end(), true));
        row.solid_rate = static_cast<double>(active_heads) * per_head_solid;
        row.wet_rate = static_cast<double>(active_heads) * per_head_wet;
        table.push_back(row);
    }
    return table;
}

} // namespace ehd

#endif // EHDSIM_LAYOUT_HPP
