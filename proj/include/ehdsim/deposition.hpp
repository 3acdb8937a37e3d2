#ifndef EHDSIM_DEPOSITION_HPP
#define EHDSIM_DEPOSITION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ehdsim/vec.hpp"

namespace ehd {

/// One droplet landing, in the fixed lab frame.
struct DepositionEvent {
    std::uint64_t id = 0;      // droplet id, canonical sort key together with time
    double lab_x = 0.0;        // m
    double lab_y = 0.0;        // m
    double time = 0.0;         // s
    double solid_volume = 0.0;   // m³
    double solvent_volume = 0.0; // m³, residual solvent at impact (treated as evaporated)
    int generation = 0;
};

/// Roll-to-roll substrate motion.
struct SubstrateMotion {
    double speed = 0.0;            // m/s
    Vec2 direction{1.0, 0.0};      // unit
};

/// Lab-frame landing point mapped into the co-moving substrate frame.
inline Vec2 to_substrate_frame(const DepositionEvent& event, const SubstrateMotion& motion) {
    if (motion.speed < 0.0) throw std::invalid_argument("to_substrate_frame: speed must be >= 0");
    return {event.lab_x - motion.speed * motion.direction.x * event.time,
            event.lab_y - motion.speed * motion.direction.y * event.time};
}

/// Regular accumulation grid specification (substrate frame).
struct GridSpec {
    Vec2 origin{0.0, 0.0}; // m, lower-left corner
    double cell_size = 0.0; // m
    int nx = 0;
    int ny = 0;
    double window_start = 0.0; // s, events outside [start, end) are ignored
    double window_end = 0.0;   // s; end <= start means "no time filter"
    double splat_radius = 0.0; // m, Gaussian splat sigma; 0 = all volume to one cell

    void validate() const {
        if (!(cell_size > 0.0)) throw std::invalid_argument("GridSpec: cell_size must be > 0");
        if (nx < 1 || ny < 1) throw std::invalid_argument("GridSpec: nx and ny must be >= 1");
        if (splat_radius < 0.0) throw std::invalid_argument("GridSpec: splat_radius must be >= 0");
    }
};

/// Substrate-frame map of deposited solid film thickness.
struct DepositionGrid {
    Vec2 origin{};
    double cell_size = 0.0;
    int nx = 0;
    int ny = 0;
    double window_start = 0.0;
    double window_end = 0.0;
    std::vector<double> thickness;       // m, row-major: index iy * nx + ix
    double overflow_volume = 0.0;        // m³ of solid that landed outside the grid
    std::uint64_t overflow_events = 0;

    double& at(int ix, int iy) { return thickness[static_cast<std::size_t>(iy) * nx + ix]; }
    double at(int ix, int iy) const { return thickness[static_cast<std::size_t>(iy) * nx + ix]; }
    double cell_area() const { return cell_size * cell_size; }

    /// Total solid volume captured by the grid (excludes overflow) [m³].
    double total_volume() const {
        double v = 0.0;
        for (double t : thickness) v += t;
        return v * cell_area();
    }
};

/// Bin events into a substrate-frame thickness grid. Events falling outside
/// the grid are accounted in the overflow bin, never silently dropped.
inline DepositionGrid accumulate(const std::vector<DepositionEvent>& events,
                                 const SubstrateMotion& motion, const GridSpec& spec) {
    spec.validate();
    DepositionGrid grid;
    grid.origin = spec.origin;
    grid.cell_size = spec.cell_size;
    grid.nx = spec.nx;
    grid.ny = spec.ny;
    grid.window_start = spec.window_start;
    grid.window_end = spec.window_end;
    grid.thickness.assign(static_cast<std::size_t>(spec.nx) * spec.ny, 0.0);

    const bool windowed = spec.window_end > spec.window_start;
    const double inv_area = 1.0 / grid.cell_area();
    for (const auto& ev : events) {
        if (windowed && (ev.time < spec.window_start || ev.time >= spec.window_end)) continue;
        const Vec2 p = to_substrate_frame(ev, motion);
        const double fx = (p.x - spec.origin.x) / spec.cell_size;
        const double fy = (p.y - spec.origin.y) / spec.cell_size;
        const int ix = static_cast<int>(std::floor(fx));
        const int iy = static_cast<int>(std::floor(fy));

        if (spec.splat_radius <= 0.0) {
            if (ix < 0 || ix >= spec.nx || iy < 0 || iy >= spec.ny) {
                grid.overflow_volume += ev.solid_volume;
                grid.overflow_events += 1;
                continue;
            }
            grid.at(ix, iy) += ev.solid_volume * inv_area;
            continue;
        }

        // Gaussian splat, truncated at 3 sigma, renormalized over the covered
        // in-grid cells so the event volume is conserved exactly.
        const int reach = std::max(1, static_cast<int>(std::ceil(3.0 * spec.splat_radius / spec.cell_size)));
        const int x0 = std::max(0, ix - reach), x1 = std::min(spec.nx - 1, ix + reach);
        const int y0 = std::max(0, iy - reach), y1 = std::min(spec.ny - 1, iy + reach);
        double wsum = 0.0;
        for (int jy = y0; jy <= y1; ++jy) {
            for (int jx = x0; jx <= x1; ++jx) {
                const double cx = spec.origin.x + (jx + 0.5) * spec.cell_size;
                const double cy = spec.origin.y + (jy + 0.5) * spec.cell_size;
                const double r2 = (cx - p.x) * (cx - p.x) + (cy - p.y) * (cy - p.y);
                wsum += std::exp(-0.5 * r2 / (spec.splat_radius * spec.splat_radius));
            }
        }
        if (x1 < x0 || y1 < y0 || wsum == 0.0) {
            grid.overflow_volume += ev.solid_volume;
            grid.overflow_events += 1;
            continue;
        }
        for (int jy = y0; jy <= y1; ++jy) {
            for (int jx = x0; jx <= x1; ++jx) {
                const double cx = spec.origin.x + (jx + 0.5) * spec.cell_size;
                const double cy = spec.origin.y + (jy + 0.5) * spec.cell_size;
                const double r2 = (cx - p.x) * (cx - p.x) + (cy - p.y) * (cy - p.y);
                const double w = std::exp(-0.5 * r2 / (spec.splat_radius * spec.splat_radius)) / wsum;
                grid.at(jx, jy) += ev.solid_volume * w * inv_area;
            }
        }
    }
    return grid;
}

/// Deposition rate over a time window, in µm³/s (1 m³ = 1e18 µm³).
/// Event based, so the result is independent of any grid resolution.
inline double deposition_rate(const std::vector<DepositionEvent>& events, double window_start,
                              double window_end, bool include_solvent = false) {
    if (!(window_end > window_start)) throw std::invalid_argument("deposition_rate: empty window");
    double volume = 0.0;
    for (const auto& ev : events) {
        if (ev.time < window_start || ev.time >= window_end) continue;
        volume += ev.solid_volume;
        if (include_solvent) volume += ev.solvent_volume;
    }
    return volume / (window_end - window_start) * 1e18;
}

/// Rectangular mask in substrate-frame coordinates; cells whose centers fall
/// inside are selected.
struct MaskRect {
    double x0 = 0.0, x1 = 0.0;
    double y0 = 0.0, y1 = 0.0;
};

namespace detail {

inline double cv_of(const std::vector<double>& values) {
    if (values.size() < 2) throw std::invalid_argument("uniformity_cv: mask must contain >= 2 cells");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (mean == 0.0) throw std::invalid_argument("uniformity_cv: zero-mean region");
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size()); // population variance
    return std::sqrt(var) / mean;
}

} // namespace detail

/// Coefficient of variation (population sd / mean) of thickness over the whole grid.
inline double uniformity_cv(const DepositionGrid& grid) {
    return detail::cv_of(grid.thickness);
}

/// Coefficient of variation over a rectangular substrate-frame mask.
inline double uniformity_cv(const DepositionGrid& grid, const MaskRect& mask) {
    std::vector<double> values;
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double cx = grid.origin.x + (ix + 0.5) * grid.cell_size;
            const double cy = grid.origin.y + (iy + 0.5) * grid.cell_size;
            if (cx >= mask.x0 && cx < mask.x1 && cy >= mask.y0 && cy < mask.y1)
                values.push_back(grid.at(ix, iy));
        }
    }
    return detail::cv_of(values);
}

} // namespace ehd

#endif // EHDSIM_DEPOSITION_HPP
