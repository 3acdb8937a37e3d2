#ifndef EHDSIM_SPRAY_HPP
#define EHDSIM_SPRAY_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ehdsim/constants.hpp"
#include "ehdsim/droplet.hpp"
#include "ehdsim/ink.hpp"
#include "ehdsim/rng.hpp"
#include "ehdsim/vec.hpp"

namespace ehd {

/// Cone-jet emission parameters.
struct ConeJetModel {
    double current_prefactor = 18.0;        // f(ε_r), adequate for ε_r ≳ 40
    double jet_diameter_coefficient = 1.0;  // c_d
    double breakup_diameter_ratio = 1.89;   // k_b, parent diameter / jet diameter
    double emitted_charge_fraction = 0.5;   // χ, cap as fraction of the Rayleigh limit
    double diameter_sigma = 0.0;            // log-normal jitter of parent diameter, 0 = off

    void validate() const {
        if (!(current_prefactor > 0.0 && jet_diameter_coefficient > 0.0 &&
              breakup_diameter_ratio > 0.0))
            throw std::invalid_argument("ConeJetModel: coefficients must be > 0");
        if (!(emitted_charge_fraction > 0.0 && emitted_charge_fraction < 1.0))
            throw std::invalid_argument("ConeJetModel: emitted_charge_fraction must be in (0, 1)");
        if (diameter_sigma < 0.0)
            throw std::invalid_argument("ConeJetModel: diameter_sigma must be >= 0");
    }
};

/// Cone-jet current I = f(ε_r) · sqrt(γ Q K / ε_r) [A].
inline double cone_jet_current(const ConeJetModel& model, const InkProperties& ink, double flow_rate) {
    if (!(flow_rate > 0.0)) throw std::invalid_argument("cone_jet_current: flow_rate must be > 0");
    return model.current_prefactor *
           std::sqrt(ink.surface_tension * flow_rate * ink.conductivity / ink.relative_permittivity);
}

/// Jet diameter d_jet = c_d · (Q ε₀ ε_r / K)^(1/3) [m].
inline double jet_diameter(const ConeJetModel& model, const InkProperties& ink, double flow_rate,
                           double epsilon0 = vacuum_permittivity) {
    if (!(flow_rate > 0.0)) throw std::invalid_argument("jet_diameter: flow_rate must be > 0");
    return model.jet_diameter_coefficient *
           std::cbrt(flow_rate * epsilon0 * ink.relative_permittivity / ink.conductivity);
}

/// Parent droplet diameter k_b · d_jet [m].
inline double parent_droplet_diameter(const ConeJetModel& model, const InkProperties& ink,
                                      double flow_rate, double epsilon0 = vacuum_permittivity) {
    return model.breakup_diameter_ratio * jet_diameter(model, ink, flow_rate, epsilon0);
}

/// One spray source: an active spike tip.
struct TipSource {
    Vec3 position{};      // m, tip point
    Vec3 direction{};     // unit, local field direction at the tip
    double flow_rate = 0.0; // m³/s through this tip
    double current = 0.0;   // A carried by this tip's jet
    int head = 0;
    int tip = 0;
};

/// Parent-droplet generator for one tip.
///
/// Droplet production rate is Ṅ = Q_tip / (π d_p³ / 6); the integer number
/// emitted per step comes from a fractional-rate carry so the long-run emitted
/// volume matches Q_tip to within one droplet volume. Emitted ids are left 0;
/// the transport engine assigns them.
class TipEmitter {
public:
    TipEmitter(const TipSource& source, const ConeJetModel& model, const InkProperties& ink,
               const RngStream& stream, double epsilon0 = vacuum_permittivity)
        : source_(source), model_(model), ink_(ink), rng_(stream), epsilon0_(epsilon0) {
        model.validate();
        if (!(source.flow_rate > 0.0)) throw std::invalid_argument("TipEmitter: flow_rate must be > 0");
        nominal_diameter_ = parent_droplet_diameter(model, ink, source.flow_rate, epsilon0);
        const double parent_volume =
            pi / 6.0 * nominal_diameter_ * nominal_diameter_ * nominal_diameter_;
        rate_ = source.flow_rate / parent_volume;
        const double djet = jet_diameter(model, ink, source.flow_rate, epsilon0);
        exit_speed_ = source.flow_rate / (pi * djet * djet / 4.0);
    }

    double production_rate() const { return rate_; }   // droplets/s
    double nominal_diameter() const { return nominal_diameter_; }
    double exit_speed() const { return exit_speed_; }  // m/s

    /// Emit the parents due in a step of length dt, all stamped with `time`.
    std::vector<Droplet> emit(double dt, double time) {
        if (!(dt > 0.0)) throw std::invalid_argument("TipEmitter::emit: dt must be > 0");
        carry_ += rate_ * dt;
        const double n = std::floor(carry_);
        carry_ -= n;

        std::vector<Droplet> out;
        out.reserve(static_cast<std::size_t>(n));
        const double nominal_charge = source_.current / rate_;
        for (double k = 0; k < n; ++k) {
            Droplet d;
            d.position = source_.position;
            d.velocity = exit_speed_ * source_.direction;
            d.time = time;
            d.diameter = nominal_diameter_;
            if (model_.diameter_sigma > 0.0)
                d.diameter *= std::exp(model_.diameter_sigma * rng_.next_normal());
            const double mass = ink_.density * (pi / 6.0) * d.diameter * d.diameter * d.diameter;
            d.solid_mass = ink_.solid_mass_fraction * mass;
            d.solvent_mass = mass - d.solid_mass;
            const double cap = model_.emitted_charge_fraction *
                               rayleigh_limit(d.diameter, ink_.surface_tension, epsilon0_);
            d.charge = std::fmin(nominal_charge, cap);
            out.push_back(d);
        }
        return out;
    }

private:
    TipSource source_;
    ConeJetModel model_;
    InkProperties ink_;
    RngStream rng_;
    double epsilon0_;
    double nominal_diameter_ = 0.0;
    double rate_ = 0.0;
    double exit_speed_ = 0.0;
    double carry_ = 0.0;
};

} // namespace ehd

#endif // EHDSIM_SPRAY_HPP
