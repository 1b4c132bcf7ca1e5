#pragma once

#include "quup/constants.hpp"

namespace quup {

/// An unstable (or stable) beam particle together with the derived scales of
/// the complex-wavevector description.  The wave vector of an undecayed
/// unstable particle picks up an imaginary part kappa0, so a plane wave
/// attenuates as exp(-s/2*ell0) along its path; ell0 = p0/(m*gamma) is the
/// mean distance travelled before decay.
///
/// Stored relations:
///   kappa0 = m*gamma/(2*p0) = 1/(2*ell0)      (attenuation constant)
///   k0^2   = (p0/hbar)^2 + kappa0^2           (real part of the wave vector)
///   lambda0 = hbar/p0                         (reduced de Broglie wavelength)
///
/// Stability is an explicit flag, never an encoded tiny gamma: for stable
/// beams kappa0 = 0 and ell0 = tau = +infinity.
struct BeamParticle {
    // inputs
    double mass = 0.0;   // [kg]
    double p0 = 0.0;     // momentum [kg m/s]
    double gamma = 0.0;  // decay rate [1/s]
    bool stable = true;  // gamma == 0

    // derived
    double v_g = 0.0;             // group velocity p0/m [m/s]
    double lambda0 = 0.0;         // hbar/p0 [m]
    double ell0 = 0.0;            // survival length p0/(m*gamma) [m]
    double kappa0 = 0.0;          // m*gamma/(2*p0) [1/m]
    double k0 = 0.0;              // sqrt((p0/hbar)^2 + kappa0^2) [1/m]
    double rest_energy = 0.0;     // m c^2 [J]
    double kinetic_energy = 0.0;  // p0^2/(2m) [J]
    double tau = 0.0;             // lifetime 1/gamma [s]

    PhysicalConstants constants;  // the set used to derive the above
};

/// Dimensionless ratios behind the regime the formalism assumes:
/// r1 = (p0^2/2m)/(m c^2) (non-relativistic), r2 = hbar*gamma/(p0^2/2m)
/// (decay slow compared to the kinetic scale).  Both must stay below the
/// threshold for `pass`; kappa_over_k is reported alongside.
struct ValidityReport {
    double r1 = 0.0;
    double r2 = 0.0;
    double kappa_over_k = 0.0;
    double threshold = 0.0;
    bool r1_ok = false;
    bool r2_ok = false;
    bool pass = false;
};

BeamParticle make_beam(double mass, double p0, double gamma,
                       const PhysicalConstants& constants = default_constants());

ValidityReport check_validity(const BeamParticle& b, double threshold = 1e-3);

inline constexpr double kThermalNeutronSpeed = 2200.0;  // [m/s]
inline constexpr double kNeutronLifetime = 879.4;       // [s]

/// Neutron at 2200 m/s with the lifetime above.
BeamParticle thermal_neutron(const PhysicalConstants& constants = default_constants());
/// Same momentum, gamma = 0.
BeamParticle stable_neutron(const PhysicalConstants& constants = default_constants());

}
