#include "quup/beam.hpp"

#include <cmath>
#include <limits>

#include "quup/errors.hpp"

namespace quup {

void PhysicalConstants::validate() const {
    if (!(hbar > 0.0) || !(c > 0.0) || !(g_std > 0.0) || !(m_neutron > 0.0))
        throw DomainError("PhysicalConstants: all constants must be strictly positive");
}

const PhysicalConstants& default_constants() {
    static const PhysicalConstants k{};
    return k;
}

BeamParticle make_beam(double mass, double p0, double gamma, const PhysicalConstants& constants) {
    constants.validate();
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw DomainError("make_beam: mass must be positive and finite");
    if (!(p0 > 0.0) || !std::isfinite(p0))
        throw DomainError("make_beam: p0 must be positive and finite");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw DomainError("make_beam: gamma must be non-negative and finite");

    constexpr double inf = std::numeric_limits<double>::infinity();

    BeamParticle b;
    b.mass = mass;
    b.p0 = p0;
    b.gamma = gamma;
    b.stable = (gamma == 0.0);
    b.constants = constants;

    b.v_g = p0 / mass;
    b.lambda0 = constants.hbar / p0;
    if (b.stable) {
        b.ell0 = inf;
        b.kappa0 = 0.0;
        b.tau = inf;
    } else {
        b.ell0 = p0 / (mass * gamma);
        b.kappa0 = mass * gamma / (2.0 * p0);  // = 1/(2 ell0)
        b.tau = 1.0 / gamma;
    }
    const double k_free = p0 / constants.hbar;
    b.k0 = std::hypot(k_free, b.kappa0);
    b.rest_energy = mass * constants.c * constants.c;
    b.kinetic_energy = p0 * p0 / (2.0 * mass);
    return b;
}

ValidityReport check_validity(const BeamParticle& b, double threshold) {
    if (!(threshold > 0.0))
        throw DomainError("check_validity: threshold must be positive");
    ValidityReport r;
    r.r1 = b.kinetic_energy / b.rest_energy;
    r.r2 = b.stable ? 0.0 : b.constants.hbar * b.gamma / b.kinetic_energy;
    r.kappa_over_k = b.kappa0 / b.k0;
    r.threshold = threshold;
    r.r1_ok = r.r1 <= threshold;
    r.r2_ok = r.r2 <= threshold;
    r.pass = r.r1_ok && r.r2_ok;
    return r;
}

BeamParticle thermal_neutron(const PhysicalConstants& constants) {
    return make_beam(constants.m_neutron, constants.m_neutron * kThermalNeutronSpeed,
                     1.0 / kNeutronLifetime, constants);
}

BeamParticle stable_neutron(const PhysicalConstants& constants) {
    return make_beam(constants.m_neutron, constants.m_neutron * kThermalNeutronSpeed, 0.0,
                     constants);
}

}
