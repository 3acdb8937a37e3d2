#ifndef EHDSIM_PIPELINE_HPP
#define EHDSIM_PIPELINE_HPP

#include <cstdint>
#include <vector>

#include "ehdsim/config.hpp"
#include "ehdsim/field.hpp"
#include "ehdsim/layout.hpp"
#include "ehdsim/spray.hpp"
#include "ehdsim/transport.hpp"

namespace ehd {

/// Solved spray stage built from a resolved config: field, per-tip ratios,
/// activity flags and the emitter sources for the active tips.
struct SprayStage {
    ArrayLayout layout;
    FieldSolution solution;
    std::vector<double> interference;
    std::vector<bool> active;
    std::vector<TipSource> sources;
};

/// Build the layout, solve the field, grade every tip's cone-jet viability and
/// derive the per-tip sources. Each head's flow is split equally among its
/// active tips; heads with no active tip emit nothing.
inline SprayStage build_spray_stage(const Resolved& r) {
    SprayStage stage;
    stage.layout = generate_layout(r.pattern, r.n_heads, r.spacing, r.process.standoff, r.head);
    stage.solution = solve_tip_charges(stage.layout, r.process, r.constants);
    stage.interference = tip_interference_ratios(stage.layout, r.process, r.constants);
    stage.active = cone_jet_active(stage.interference, r.activity_threshold);

    std::vector<int> active_per_head(static_cast<std::size_t>(r.n_heads), 0);
    for (std::size_t i = 0; i < stage.active.size(); ++i)
        if (stage.active[i]) active_per_head[static_cast<std::size_t>(stage.solution.tips[i].head)] += 1;

    int tip_in_head = 0;
    int last_head = -1;
    for (std::size_t i = 0; i < stage.solution.tips.size(); ++i) {
        const auto& tip = stage.solution.tips[i];
        tip_in_head = (tip.head == last_head) ? tip_in_head + 1 : 0;
        last_head = tip.head;
        if (!stage.active[i]) continue;
        TipSource src;
        src.position = tip.point;
        src.direction = normalized(field_at(stage.solution, tip_evaluation_point(tip), r.constants));
        src.flow_rate = r.process.flow_rate_per_head / active_per_head[static_cast<std::size_t>(tip.head)];
        src.current = cone_jet_current(r.model, r.ink, src.flow_rate);
        src.head = tip.head;
        src.tip = tip_in_head;
        stage.sources.push_back(src);
    }
    return stage;
}

/// End-to-end plume run from a resolved config.
inline PlumeResult run_plume(const Resolved& r, const SprayStage& stage, int workers) {
    PlumeParams params;
    params.sources = stage.sources;
    params.field = &stage.solution;
    params.ink = r.ink;
    params.model = r.model;
    params.constants = r.constants;
    params.settings = r.transport;
    params.duration = r.duration;
    params.seed = r.seed;
    params.workers = workers;
    return simulate_plume(params);
}

} // namespace ehd

#endif // EHDSIM_PIPELINE_HPP
