#ifndef EHDSIM_FIELD_HPP
#define EHDSIM_FIELD_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehdsim/constants.hpp"
#include "ehdsim/errors.hpp"
#include "ehdsim/linsolve.hpp"
#include "ehdsim/printhead.hpp"
#include "ehdsim/vec.hpp"

namespace ehd {

/// Solved electrostatic state of a printhead array above the grounded plane
/// z = 0.
///
/// Every spike tip is a regularized point charge at its tip position with a
/// mirror image of opposite sign below the plane, so the plane is an exact
/// equipotential at 0 V. The charges solve the collocation system that puts
/// every tip's regularization sphere at the applied voltage.
struct FieldSolution {
    struct Tip {
        Vec3 point;            // m, z > 0
        Vec3 axis;             // outward spike direction (unit)
        double charge = 0.0;   // C
        double radius = 0.0;   // m, regularization radius a
        int head = 0;          // owning head index in the layout
    };

    std::vector<Tip> tips;
    double applied_voltage = 0.0; // V
    double plane_height = 0.0;    // grounded plane z = plane_height (always 0 here)

    /// New solution containing only the tips of one head, charges unchanged.
    FieldSolution subset(int head) const {
        FieldSolution s;
        s.applied_voltage = applied_voltage;
        s.plane_height = plane_height;
        for (const auto& t : tips)
            if (t.head == head) s.tips.push_back(t);
        return s;
    }
};

namespace detail {

inline double coulomb_factor(double vacuum_permittivity) {
    return 1.0 / (4.0 * pi * vacuum_permittivity);
}

inline Vec3 mirror(const Vec3& p) { return {p.x, p.y, -p.z}; }

/// Potential-coefficient entry: unit charge at `src` (plus its image) seen at
/// `at`, with the direct distance floored at `min_r` (self term uses a).
inline double pair_coefficient(const Vec3& at, const Vec3& src, double min_r, double k) {
    const double r = std::fmax(norm(at - src), min_r);
    const double ri = norm(at - mirror(src));
    return k * (1.0 / r - 1.0 / ri);
}

} // namespace detail

/// Potential coefficient matrix of the layout's tips (symmetric by the image
/// construction). Exposed for diagnostics and tests; solve_tip_charges uses it.
inline DenseMatrix capacitance_matrix(const std::vector<FieldSolution::Tip>& tips,
                                      const PhysicalConstants& constants) {
    const double k = detail::coulomb_factor(constants.vacuum_permittivity);
    const std::size_t n = tips.size();
    DenseMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double min_r = (i == j) ? tips[i].radius : 0.0;
            a(i, j) = detail::pair_coefficient(tips[i].point, tips[j].point, min_r, k);
        }
    }
    return a;
}

/// Solve for the tip charges of a full array at the applied voltage.
///
/// Preconditions: every tip at least 10 regularization radii above the plane;
/// no two tips closer than 2a (regularization spheres must not overlap).
inline FieldSolution solve_tip_charges(const ArrayLayout& layout, const ProcessConditions& conditions,
                                       const PhysicalConstants& constants = {}) {
    layout.validate();
    conditions.validate();

    FieldSolution solution;
    solution.applied_voltage = conditions.applied_voltage;
    for (std::size_t h = 0; h < layout.heads.size(); ++h) {
        const auto& head = layout.heads[h];
        const auto points = tip_positions(head);
        const auto axes = tip_directions(head);
        for (std::size_t t = 0; t < points.size(); ++t) {
            FieldSolution::Tip tip;
            tip.point = points[t];
            tip.axis = axes[t];
            tip.radius = head.tip_regularization_radius;
            tip.head = static_cast<int>(h);
            solution.tips.push_back(tip);
        }
    }

    for (const auto& tip : solution.tips) {
        if (tip.point.z <= 0.0)
            throw std::domain_error("solve_tip_charges: tip at or below the grounded plane");
        if (tip.point.z < 10.0 * tip.radius)
            throw std::domain_error("solve_tip_charges: tip closer than 10 regularization radii to the plane");
    }
    for (std::size_t i = 0; i < solution.tips.size(); ++i) {
        for (std::size_t j = i + 1; j < solution.tips.size(); ++j) {
            const double d = norm(solution.tips[i].point - solution.tips[j].point);
            const double lim = solution.tips[i].radius + solution.tips[j].radius;
            if (d < lim)
                throw GeometryError("solve_tip_charges: tips " + std::to_string(i) + " and " +
                                    std::to_string(j) + " closer than 2a (" + std::to_string(d) + " m)");
        }
    }

    const DenseMatrix a = capacitance_matrix(solution.tips, constants);
    const std::vector<double> rhs(solution.tips.size(), conditions.applied_voltage);
    const std::vector<double> q = solve_dense(a, rhs, 1e-10);
    for (std::size_t i = 0; i < q.size(); ++i) {
        solution.tips[i].charge = q[i];
        if (conditions.applied_voltage > 0.0 && !(q[i] > 0.0))
            throw NumericalError("solve_tip_charges: non-positive tip charge (degenerate layout)");
    }
    return solution;
}

/// Electric potential of the solved charge set at `point` [V].
///
/// Inside (or on) a tip's regularization sphere the evaluation clamps to the
/// tip's collocated boundary value, so sphere surfaces report the applied
/// voltage to within the solver residual.
inline double potential_at(const FieldSolution& solution, const Vec3& point,
                           const PhysicalConstants& constants = {}) {
    const double k = detail::coulomb_factor(constants.vacuum_permittivity);

    const Vec3* eval = &point;
    std::size_t clamp_tip = solution.tips.size();
    for (std::size_t i = 0; i < solution.tips.size(); ++i) {
        // boundary slack: points constructed on the sphere land within an ulp
        if (norm(point - solution.tips[i].point) <= solution.tips[i].radius * (1.0 + 1e-12)) {
            clamp_tip = i;
            eval = &solution.tips[i].point;
            break;
        }
    }

    double phi = 0.0;
    for (std::size_t j = 0; j < solution.tips.size(); ++j) {
        const double min_r = (j == clamp_tip) ? solution.tips[j].radius : 0.0;
        phi += solution.tips[j].charge *
               detail::pair_coefficient(*eval, solution.tips[j].point, min_r, k);
    }
    return phi;
}

/// Electric field E = −∇V at `point` [V/m], analytic superposition of all
/// charges and images. Points strictly inside a regularization sphere are
/// clamped radially to the sphere surface before evaluation.
inline Vec3 field_at(const FieldSolution& solution, const Vec3& point,
                     const PhysicalConstants& constants = {}) {
    const double k = detail::coulomb_factor(constants.vacuum_permittivity);

    Vec3 eval = point;
    for (const auto& tip : solution.tips) {
        const Vec3 d = point - tip.point;
        const double r = norm(d);
        if (r < tip.radius) {
            const Vec3 dir = (r > 0.0) ? d * (1.0 / r) : tip.axis;
            eval = tip.point + tip.radius * dir;
            break;
        }
    }

    Vec3 e{};
    for (const auto& tip : solution.tips) {
        const Vec3 d = eval - tip.point;
        const double r = norm(d);
        e += (tip.charge * k / (r * r * r)) * d;
        const Vec3 di = eval - detail::mirror(tip.point);
        const double ri = norm(di);
        e += (-tip.charge * k / (ri * ri * ri)) * di;
    }
    return e;
}

/// Field evaluation point of a tip: one regularization radius outward along
/// the spike axis. The field exactly at the singular point is regularization
/// dominated; just outside it is geometry sensitive.
inline Vec3 tip_evaluation_point(const FieldSolution::Tip& tip) {
    return tip.point + tip.radius * tip.axis;
}

/// Tip-effect interference ratios ρ_i = |E_array| / |E_alone| at every tip's
/// evaluation point. A single head compares against itself, so all ratios are
/// exactly 1; mutual interference in an array pushes ratios below 1.
inline std::vector<double> tip_interference_ratios(const ArrayLayout& layout,
                                                   const ProcessConditions& conditions,
                                                   const PhysicalConstants& constants = {}) {
    const FieldSolution full = solve_tip_charges(layout, conditions, constants);

    std::vector<double> rho(full.tips.size(), 1.0);
    for (std::size_t h = 0; h < layout.heads.size(); ++h) {
        ArrayLayout alone;
        alone.heads = {layout.heads[h]};
        alone.pattern = LayoutPattern::custom;
        alone.spacing = 0.0;
        const FieldSolution solo = solve_tip_charges(alone, conditions, constants);

        for (std::size_t i = 0; i < full.tips.size(); ++i) {
            if (full.tips[i].head != static_cast<int>(h)) continue;
            const Vec3 p = tip_evaluation_point(full.tips[i]);
            const double e_full = norm(field_at(full, p, constants));
            const double e_alone = norm(field_at(solo, p, constants));
            rho[i] = e_full / e_alone;
        }
    }
    return rho;
}

/// Cone-jet viability per tip: active iff ρ_i ≥ θ.
inline std::vector<bool> cone_jet_active(const std::vector<double>& interference_ratios,
                                         double threshold = 0.8) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("cone_jet_active: threshold must be in (0, 1)");
    std::vector<bool> active(interference_ratios.size());
    for (std::size_t i = 0; i < interference_ratios.size(); ++i)
        active[i] = interference_ratios[i] >= threshold;
    return active;
}

} // namespace ehd

#endif // EHDSIM_FIELD_HPP
