#ifndef EHDSIM_TRANSPORT_HPP
#define EHDSIM_TRANSPORT_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ehdsim/constants.hpp"
#include "ehdsim/deposition.hpp"
#include "ehdsim/droplet.hpp"
#include "ehdsim/field.hpp"
#include "ehdsim/ink.hpp"
#include "ehdsim/rng.hpp"
#include "ehdsim/spray.hpp"
#include "ehdsim/vec.hpp"

namespace ehd {

/// Flight, fission and domain parameters of the transport stage.
struct TransportSettings {
    int offspring_count = 7;
    double fission_charge_fraction = 0.20; // Δq, fraction of charge carried by offspring
    double fission_mass_fraction = 0.02;   // Δm, fraction of total mass carried by offspring
    int generation_cap = 8;
    double aerosol_cutoff = 100e-9;        // m, droplets below this diameter leave transport
    bool cunningham_slip = false;
    double air_mean_free_path = 68e-9;     // m, used only when cunningham_slip is on
    double domain_half_width = 0.25;       // m, |x| and |y| bound
    double domain_top = 0.1;               // m, z bound
    double max_step_displacement_fraction = 0.25; // of the distance to the nearest tip
    double emission_step = 1e-5;           // s, batching step for droplet emission

    void validate() const {
        if (offspring_count < 1) throw std::invalid_argument("TransportSettings: offspring_count must be >= 1");
        if (!(fission_charge_fraction > 0.0 && fission_charge_fraction < 1.0))
            throw std::invalid_argument("TransportSettings: fission_charge_fraction must be in (0, 1)");
        if (!(fission_mass_fraction > 0.0 && fission_mass_fraction < 1.0))
            throw std::invalid_argument("TransportSettings: fission_mass_fraction must be in (0, 1)");
        if (generation_cap < 1) throw std::invalid_argument("TransportSettings: generation_cap must be >= 1");
        if (!(aerosol_cutoff > 0.0)) throw std::invalid_argument("TransportSettings: aerosol_cutoff must be > 0");
        if (!(domain_half_width > 0.0 && domain_top > 0.0))
            throw std::invalid_argument("TransportSettings: domain bounds must be > 0");
        if (!(max_step_displacement_fraction > 0.0 && max_step_displacement_fraction <= 1.0))
            throw std::invalid_argument("TransportSettings: max_step_displacement_fraction must be in (0, 1]");
        if (!(emission_step > 0.0)) throw std::invalid_argument("TransportSettings: emission_step must be > 0");
    }
};

/// Stokes relaxation time τ = m / (3 π μ d), optionally slip-corrected [s].
inline double stokes_time(const Droplet& droplet, const PhysicalConstants& constants,
                          const TransportSettings& settings = {}) {
    double tau = droplet.total_mass() /
                 (3.0 * pi * constants.air_dynamic_viscosity * droplet.diameter);
    if (settings.cunningham_slip) {
        const double kn = 2.0 * settings.air_mean_free_path / droplet.diameter;
        tau *= 1.0 + kn * (1.257 + 0.4 * std::exp(-1.1 / kn));
    }
    return tau;
}

namespace detail {

/// Shared kinematic kernel: semi-implicit update with a precomputed field.
/// Acceleration uses the current velocity in the drag term; the position
/// update uses the new velocity. Handles plane crossing and domain escape.
inline void advance_droplet(Droplet& d, const Vec3& field, double tau, double gravity,
                            const TransportSettings& settings, double dt) {
    const double inv_mass = 1.0 / d.total_mass();
    const Vec3 accel = (d.charge * inv_mass) * field + Vec3{0.0, 0.0, -gravity} - d.velocity * (1.0 / tau);
    const Vec3 v_new = d.velocity + accel * dt;
    const Vec3 x_new = d.position + v_new * dt;

    if (x_new.z <= 0.0) {
        const double z0 = d.position.z;
        const double s = (z0 > 0.0 && z0 != x_new.z) ? z0 / (z0 - x_new.z) : 0.0;
        d.position = d.position + s * (x_new - d.position);
        d.position.z = 0.0;
        d.velocity = v_new;
        d.time += s * dt;
        d.status = DropletStatus::deposited;
        return;
    }

    d.position = x_new;
    d.velocity = v_new;
    d.time += dt;
    if (std::fabs(x_new.x) > settings.domain_half_width ||
        std::fabs(x_new.y) > settings.domain_half_width || x_new.z > settings.domain_top) {
        d.status = DropletStatus::escaped;
    }
}

} // namespace detail

/// One integration step of a droplet in the solved field.
///
/// Contract: dt must satisfy the stability guard dt ≤ τ/10; violating calls
/// throw and the caller is expected to subcycle. Crossing z = 0 deposits the
/// droplet at the linearly interpolated landing point (z exactly 0); leaving
/// the domain box marks it escaped.
inline Droplet step_droplet(const Droplet& droplet, const FieldSolution& solution,
                            const PhysicalConstants& constants, const TransportSettings& settings,
                            double dt) {
    if (droplet.status != DropletStatus::in_flight)
        throw std::logic_error("step_droplet: droplet is not in flight");
    if (!(dt > 0.0)) throw std::invalid_argument("step_droplet: dt must be > 0");
    const double tau = stokes_time(droplet, constants, settings);
    if (dt > tau / 10.0)
        throw NumericalError("step_droplet: dt exceeds the stability guard tau/10; subcycle");

    Droplet out = droplet;
    const Vec3 field = field_at(solution, droplet.position, constants);
    detail::advance_droplet(out, field, tau, constants.effective_gravity(), settings, dt);
    return out;
}

/// d²-law evaporation of the solvent fraction over dt. The diameter floors at
/// the dry solid core; solid mass and charge are untouched.
inline Droplet evaporate(const Droplet& droplet, const InkProperties& ink, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("evaporate: dt must be > 0");
    Droplet out = droplet;
    const double core = solid_core_diameter(droplet.solid_mass, ink.solid_density);
    const double d2 = droplet.diameter * droplet.diameter - ink.evaporation_constant * dt;
    if (d2 <= core * core) {
        out.diameter = core;
        out.solvent_mass = 0.0;
        return out;
    }
    out.diameter = std::sqrt(d2);
    const double solvent_volume =
        pi / 6.0 * (out.diameter * out.diameter * out.diameter - core * core * core);
    out.solvent_mass = std::fmax(0.0, ink.solvent_density() * solvent_volume);
    return out;
}

/// Result of one Coulomb fission event.
struct FissionOutcome {
    Droplet residual;
    std::vector<Droplet> offspring;
};

namespace detail {

/// Split `amount` into n near-equal shares plus a residual such that the audit
/// sum residual + share_0 + ... + share_{n-1} (left to right) reproduces
/// `amount` bit-exactly. Exactly equal shares and exact conservation are
/// incompatible in binary arithmetic (amount/n need not be representable), so
/// the last share absorbs the rounding: it differs from the others by at most
/// a few ulps, and stepping it by single ulps moves the folded total through
/// every representable value, so the walk always lands.
struct ExactSplit {
    double share = 0.0;      // offspring 0..n-2
    double last_share = 0.0; // offspring n-1
    double residual = 0.0;
};

inline ExactSplit exact_split(double amount, double fraction, int n) {
    ExactSplit s;
    s.share = amount * fraction / static_cast<double>(n);
    s.residual = amount * (1.0 - fraction);

    double partial = s.residual;
    for (int i = 0; i < n - 1; ++i) partial += s.share;
    s.last_share = amount - partial;
    if (s.last_share < 0.0) s.last_share = 0.0;
    for (int guard = 0; guard < 128; ++guard) {
        const double total = partial + s.last_share;
        if (total == amount) return s;
        s.last_share = std::nextafter(s.last_share, total < amount
                                                        ? std::numeric_limits<double>::infinity()
                                                        : -std::numeric_limits<double>::infinity());
    }
    throw NumericalError("coulomb_fission: exact split failed to converge");
}

} // namespace detail

/// Rayleigh-limit breakup: `offspring_count` sub-droplets carry the configured
/// charge and mass fractions in equal shares; the residual keeps the rest.
/// Charge and mass are conserved exactly in the arithmetic. Offspring start
/// one parent radius away in directions drawn from the caller's rng stream,
/// inherit the parent velocity, and are marked aerosolized at birth if they
/// exceed the generation cap or fall below the aerosol cutoff.
inline FissionOutcome coulomb_fission(const Droplet& droplet, const InkProperties& ink,
                                      const TransportSettings& settings, RngStream& rng) {
    const double limit = rayleigh_limit(droplet.diameter, ink.surface_tension);
    if (droplet.charge < limit)
        throw std::logic_error("coulomb_fission: called below the Rayleigh trigger");

    const int n = settings.offspring_count;
    const auto charge = detail::exact_split(droplet.charge, settings.fission_charge_fraction, n);
    const auto solid = detail::exact_split(droplet.solid_mass, settings.fission_mass_fraction, n);
    const auto solvent = detail::exact_split(droplet.solvent_mass, settings.fission_mass_fraction, n);

    const double solvent_rho = ink.solvent_density();
    FissionOutcome outcome;
    outcome.residual = droplet;
    outcome.residual.charge = charge.residual;
    outcome.residual.solid_mass = solid.residual;
    outcome.residual.solvent_mass = solvent.residual;
    outcome.residual.diameter = diameter_from_masses(solvent.residual, solid.residual, solvent_rho,
                                                     ink.solid_density);

    const double parent_radius = 0.5 * droplet.diameter;
    outcome.offspring.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const bool last = (i == n - 1);
        Droplet child;
        child.position = droplet.position + parent_radius * rng.next_unit_vector();
        child.velocity = droplet.velocity;
        child.time = droplet.time;
        child.charge = last ? charge.last_share : charge.share;
        child.solid_mass = last ? solid.last_share : solid.share;
        child.solvent_mass = last ? solvent.last_share : solvent.share;
        child.diameter = diameter_from_masses(child.solvent_mass, child.solid_mass, solvent_rho,
                                              ink.solid_density);
        child.generation = droplet.generation + 1;
        if (child.generation >= settings.generation_cap || child.diameter < settings.aerosol_cutoff)
            child.status = DropletStatus::aerosolized;
        outcome.offspring.push_back(child);
    }
    return outcome;
}

/// Terminal state of one droplet (used for the conservation audit).
struct TerminalRecord {
    std::uint64_t id = 0;
    DropletStatus status = DropletStatus::in_flight;
    int generation = 0;
    double solid_mass = 0.0;
    double solvent_mass = 0.0;
    double charge = 0.0;
    double diameter = 0.0;
    double time = 0.0;
};

/// Per-run plume statistics.
struct PlumeStats {
    std::uint64_t emitted = 0; // parent droplets
    std::uint64_t total_droplets = 0;
    std::uint64_t deposited = 0;
    std::uint64_t aerosolized = 0;
    std::uint64_t escaped = 0;
    std::uint64_t in_flight = 0;
    std::uint64_t fission_events = 0;
    int max_generation = 0;

    double emitted_solid_mass = 0.0;   // kg
    double emitted_solvent_mass = 0.0; // kg
    double emitted_charge = 0.0;       // C

    double deposited_solid_mass = 0.0;
    double aerosolized_solid_mass = 0.0;
    double escaped_solid_mass = 0.0;
    double in_flight_solid_mass = 0.0;

    double deposited_charge = 0.0;
    double aerosolized_charge = 0.0;
    double escaped_charge = 0.0;
    double in_flight_charge = 0.0;

    double terminal_solvent_mass = 0.0; // kg still liquid at end of accounting
};

struct PlumeParams {
    std::vector<TipSource> sources;
    const FieldSolution* field = nullptr;
    InkProperties ink;
    ConeJetModel model;
    PhysicalConstants constants;
    TransportSettings settings;
    double duration = 0.0; // s
    std::uint64_t seed = 0;
    int workers = 1;
};

struct PlumeResult {
    std::vector<DepositionEvent> events;   // canonical order: (id, time)
    std::vector<TerminalRecord> records;   // one per droplet, canonical order by id
    PlumeStats stats;
};

namespace detail {

struct CascadeResult {
    std::vector<DepositionEvent> events;
    std::vector<TerminalRecord> records;
    std::uint64_t fissions = 0;
    int max_generation = 0;
};

inline double nearest_tip_distance(const FieldSolution& solution, const Vec3& p, double& tip_radius) {
    double best = std::numeric_limits<double>::infinity();
    tip_radius = 0.0;
    for (const auto& tip : solution.tips) {
        const double d = norm(p - tip.point);
        if (d < best) {
            best = d;
            tip_radius = tip.radius;
        }
    }
    return best;
}

inline void record_terminal(CascadeResult& out, const Droplet& d) {
    out.records.push_back({d.id, d.status, d.generation, d.solid_mass, d.solvent_mass, d.charge,
                           d.diameter, d.time});
    out.max_generation = std::max(out.max_generation, d.generation);
}

inline void record_deposit(CascadeResult& out, const Droplet& d, const InkProperties& ink) {
    DepositionEvent ev;
    ev.id = d.id;
    ev.lab_x = d.position.x;
    ev.lab_y = d.position.y;
    ev.time = d.time;
    ev.solid_volume = d.solid_mass / ink.solid_density;
    ev.solvent_volume = d.solvent_mass / ink.solvent_density();
    ev.generation = d.generation;
    out.events.push_back(ev);
    record_terminal(out, d);
}

/// Integrate one emitted parent and its whole fission cascade to termination
/// or to the end of the run. Deterministic: all randomness is keyed by the
/// droplet id, so the result is independent of scheduling.
inline CascadeResult integrate_cascade(Droplet parent, const PlumeParams& params) {
    const FieldSolution& field = *params.field;
    const double duration = params.duration;
    CascadeResult out;

    std::uint64_t next_seq = 1;
    std::vector<Droplet> work;
    work.push_back(parent);

    while (!work.empty()) {
        Droplet d = work.back();
        work.pop_back();

        if (d.status == DropletStatus::aerosolized) { // marked at birth by fission
            record_terminal(out, d);
            continue;
        }
        RngStream rng(params.seed, d.id, 0xD0F1);

        while (true) {
            if (d.time >= duration) {
                d.status = DropletStatus::in_flight;
                record_terminal(out, d);
                break;
            }
            if (d.position.z <= 0.0) { // offspring displaced through the plane
                d.position.z = 0.0;
                d.status = DropletStatus::deposited;
                record_deposit(out, d, params.ink);
                break;
            }

            const double tau = stokes_time(d, params.constants, params.settings);
            const Vec3 e = field_at(field, d.position, params.constants);
            const double inv_mass = 1.0 / d.total_mass();
            const Vec3 accel = (d.charge * inv_mass) * e +
                               Vec3{0.0, 0.0, -params.constants.effective_gravity()} -
                               d.velocity * (1.0 / tau);

            double tip_radius = 0.0;
            const double r_near = nearest_tip_distance(field, d.position, tip_radius);
            const double reach = params.settings.max_step_displacement_fraction *
                                 std::fmax(r_near, 2.0 * tip_radius);
            const double speed = norm(d.velocity);
            const double a_mag = norm(accel);
            double dt = tau / 10.0;
            if (speed > 0.0 || a_mag > 0.0)
                dt = std::fmin(dt, reach / (speed + std::sqrt(2.0 * a_mag * reach)));
            dt = std::fmin(dt, duration - d.time);

            advance_droplet(d, e, tau, params.constants.effective_gravity(), params.settings, dt);
            if (d.status == DropletStatus::deposited) {
                record_deposit(out, d, params.ink);
                break;
            }
            if (d.status == DropletStatus::escaped) {
                record_terminal(out, d);
                break;
            }

            d = evaporate(d, params.ink, dt);
            if (d.diameter < params.settings.aerosol_cutoff) {
                d.status = DropletStatus::aerosolized;
                record_terminal(out, d);
                break;
            }

            // fission trigger is checked every step; the residual cannot
            // re-trigger immediately, so this fires at most a few times
            bool terminated = false;
            while (d.charge >= rayleigh_limit(d.diameter, params.ink.surface_tension)) {
                FissionOutcome fo = coulomb_fission(d, params.ink, params.settings, rng);
                out.fissions += 1;
                for (auto& child : fo.offspring) {
                    if (next_seq >= (std::uint64_t(1) << Droplet::seq_bits))
                        throw NumericalError("simulate_plume: fission cascade exceeded id capacity");
                    child.id = Droplet::make_id(d.root(), next_seq++);
                    if (child.status == DropletStatus::aerosolized)
                        record_terminal(out, child);
                    else
                        work.push_back(child);
                }
                d = fo.residual;
                if (d.diameter < params.settings.aerosol_cutoff) {
                    d.status = DropletStatus::aerosolized;
                    record_terminal(out, d);
                    terminated = true;
                    break;
                }
            }
            if (terminated) break;
        }
    }
    return out;
}

} // namespace detail

/// Time-march emission, flight, evaporation and fission for all sources.
///
/// Every droplet owns a deterministic random stream keyed by (seed, id) and
/// cascades are independent, so the returned lists are bit-identical for any
/// worker count. Events are canonically sorted by (id, time).
inline PlumeResult simulate_plume(const PlumeParams& params) {
    if (params.duration < 0.0) throw std::invalid_argument("simulate_plume: duration must be >= 0");
    if (params.field == nullptr) throw std::invalid_argument("simulate_plume: missing field solution");
    params.settings.validate();
    params.model.validate();
    params.ink.validate();

    PlumeResult result;

    // deterministic emission schedule, enumerated up front
    std::vector<Droplet> parents;
    {
        std::vector<TipEmitter> emitters;
        emitters.reserve(params.sources.size());
        for (const auto& src : params.sources) {
            const std::uint64_t key =
                (static_cast<std::uint64_t>(static_cast<std::uint32_t>(src.head)) << 32) |
                static_cast<std::uint32_t>(src.tip);
            emitters.emplace_back(src, params.model, params.ink, RngStream(params.seed, key, 0xE417),
                                  params.constants.vacuum_permittivity);
        }
        const double step = params.settings.emission_step;
        const std::uint64_t batches =
            static_cast<std::uint64_t>(std::ceil(params.duration / step));
        std::uint64_t root = 0;
        for (std::uint64_t b = 0; b < batches; ++b) {
            const double t = static_cast<double>(b) * step;
            const double dt = std::fmin(step, params.duration - t);
            if (!(dt > 0.0)) break;
            for (auto& emitter : emitters) {
                for (Droplet& d : emitter.emit(dt, t)) {
                    d.id = Droplet::make_id(root++, 0);
                    parents.push_back(d);
                    result.stats.emitted_solid_mass += d.solid_mass;
                    result.stats.emitted_solvent_mass += d.solvent_mass;
                    result.stats.emitted_charge += d.charge;
                }
            }
        }
        result.stats.emitted = parents.size();
    }

    // integrate cascades; slots indexed by parent keep the merge deterministic
    std::vector<detail::CascadeResult> slots(parents.size());
    const int workers = std::max(1, params.workers);
    if (workers == 1 || parents.size() < 2) {
        for (std::size_t i = 0; i < parents.size(); ++i)
            slots[i] = detail::integrate_cascade(parents[i], params);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        std::exception_ptr first_error;
        std::mutex error_mutex;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                try {
                    for (;;) {
                        const std::size_t i = cursor.fetch_add(1);
                        if (i >= parents.size()) return;
                        slots[i] = detail::integrate_cascade(parents[i], params);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    for (auto& slot : slots) {
        result.stats.fission_events += slot.fissions;
        result.stats.max_generation = std::max(result.stats.max_generation, slot.max_generation);
        result.events.insert(result.events.end(), slot.events.begin(), slot.events.end());
        result.records.insert(result.records.end(), slot.records.begin(), slot.records.end());
    }
    std::sort(result.events.begin(), result.events.end(),
              [](const DepositionEvent& a, const DepositionEvent& b) {
                  return a.id != b.id ? a.id < b.id : a.time < b.time;
              });
    std::sort(result.records.begin(), result.records.end(),
              [](const TerminalRecord& a, const TerminalRecord& b) { return a.id < b.id; });

    for (const auto& r : result.records) {
        result.stats.total_droplets += 1;
        result.stats.terminal_solvent_mass += r.solvent_mass;
        switch (r.status) {
            case DropletStatus::deposited:
                result.stats.deposited += 1;
                result.stats.deposited_solid_mass += r.solid_mass;
                result.stats.deposited_charge += r.charge;
                break;
            case DropletStatus::aerosolized:
                result.stats.aerosolized += 1;
                result.stats.aerosolized_solid_mass += r.solid_mass;
                result.stats.aerosolized_charge += r.charge;
                break;
            case DropletStatus::escaped:
                result.stats.escaped += 1;
                result.stats.escaped_solid_mass += r.solid_mass;
                result.stats.escaped_charge += r.charge;
                break;
            case DropletStatus::in_flight:
                result.stats.in_flight += 1;
                result.stats.in_flight_solid_mass += r.solid_mass;
                result.stats.in_flight_charge += r.charge;
                break;
        }
    }
    return result;
}

} // namespace ehd

#endif // EHDSIM_TRANSPORT_HPP
