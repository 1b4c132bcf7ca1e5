#pragma once

namespace quup {

/// Fundamental constants, SI units.  One default set is provided below and
/// echoed into every CLI output; alternative sets (including natural-unit
/// choices used in tests) can be passed wherever a PhysicalConstants
/// argument is accepted.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;         // reduced Planck constant [J s]
    double c = 2.99792458e8;               // speed of light [m/s]
    double g_std = 9.80;                   // gravitational acceleration [m/s^2]
    double m_neutron = 1.67492749804e-27;  // neutron mass [kg]

    void validate() const;  // throws DomainError unless all strictly positive
};

const PhysicalConstants& default_constants();

}
