#include "quup/propagator.hpp"

#include <cmath>

#include "quup/errors.hpp"
#include "quup/quadrature.hpp"

namespace quup::propagator {

double distance(const Vec3& a, const Vec3& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double dz = b.z - a.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::complex<double> PropagatedAmplitude::amplitude() const {
    // e^{i(dyn + Re phi)} e^{-(att + Im phi)}
    return prefactor * std::exp(std::complex<double>(
                           -attenuation_exponent - potential_phase.imag_part,
                           dynamical_phase + potential_phase.real_part));
}

namespace {

// Line integral int V ds along the straight leg [J m].
double potential_line_integral(const BeamParticle& b, const PathLeg& leg,
                               const PotentialModel& pot) {
    if (std::holds_alternative<ZeroPotential>(pot)) return 0.0;
    if (const auto* ug = std::get_if<UniformGravity>(&pot)) {
        // V linear in z, so the integral is length * V(midpoint).
        const double z_mid = 0.5 * (leg.start.z + leg.end.z);
        return b.mass * ug->g * leg.length() * (z_mid - ug->z0);
    }
    const auto& profile = std::get<SampledLineProfile>(pot);
    if (profile.samples.size() < 2)
        throw DataError("leg_phase: sampled profile needs at least two samples");
    return quadrature::trapezoid(profile.samples);
}

}  // namespace

ComplexPhase leg_phase(const BeamParticle& b, const PathLeg& leg, const PotentialModel& pot) {
    const double len = leg.length();
    if (!(len > 0.0) || !std::isfinite(len))
        throw DomainError("leg_phase: leg must have positive finite length");

    const double iv = potential_line_integral(b, leg, pot);
    const double coeff = b.mass / (b.constants.hbar * b.p0);
    const double decay_ratio = b.stable ? 0.0 : b.lambda0 / (2.0 * b.ell0);
    return {-coeff * iv, coeff * decay_ratio * iv};
}

PropagatedAmplitude propagate(const BeamParticle& b, const std::vector<PathLeg>& legs,
                              const PotentialModel& pot, std::complex<double> prefactor) {
    if (legs.empty())
        throw DomainError("propagate: no legs given");
    constexpr double kContiguityTol = 1e-12;  // [m]
    for (size_t i = 1; i < legs.size(); ++i) {
        if (distance(legs[i - 1].end, legs[i].start) > kContiguityTol)
            throw GeometryError("propagate: legs are not contiguous");
    }

    double s = 0.0;
    ComplexPhase phi;
    for (const PathLeg& leg : legs) {
        s += leg.length();
        phi += leg_phase(b, leg, pot);
    }

    PropagatedAmplitude out;
    out.prefactor = prefactor;
    out.dynamical_phase = b.p0 * s / b.constants.hbar;
    out.attenuation_exponent = b.stable ? 0.0 : s / (2.0 * b.ell0);
    out.potential_phase = phi;
    out.total_length = s;
    return out;
}

}
