#pragma once

#include <complex>
#include <utility>
#include <variant>
#include <vector>

#include "quup/beam.hpp"

namespace quup::propagator {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);

/// A straight segment of the unperturbed particle path.
struct PathLeg {
    Vec3 start;
    Vec3 end;
    double length() const { return distance(start, end); }
};

struct ZeroPotential {};

/// V(r) = m*g*(z - z0) for the beam particle's mass.
struct UniformGravity {
    double g = 0.0;   // [m/s^2]
    double z0 = 0.0;  // reference height [m]
};

/// Potential tabulated against arc length along the leg: (s [m], V [J]).
/// Must hold at least two samples, strictly increasing in s, all finite.
/// The line integral is the trapezoid over the samples as given; the caller
/// is responsible for covering the leg.
struct SampledLineProfile {
    std::vector<std::pair<double, double>> samples;
};

using PotentialModel = std::variant<ZeroPotential, UniformGravity, SampledLineProfile>;

/// Potential-dependent complex phase accumulated along a path.  real_part is
/// the dynamical contribution [rad]; imag_part is the decay-induced
/// attenuation-exponent contribution (dimensionless).  Additive under leg
/// concatenation.  For a single potential integral I = int V ds,
///   real_part = -(m/(hbar p0)) * I
///   imag_part = +(m/(hbar p0)) * (lambda0/(2 ell0)) * I
/// so imag/real = -lambda0/(2 ell0) and both vanish for stable beams at V = 0.
struct ComplexPhase {
    double real_part = 0.0;
    double imag_part = 0.0;

    std::complex<double> value() const { return {real_part, imag_part}; }
    ComplexPhase& operator+=(const ComplexPhase& o) {
        real_part += o.real_part;
        imag_part += o.imag_part;
        return *this;
    }
    friend ComplexPhase operator+(ComplexPhase a, const ComplexPhase& b) { return a += b; }
};

/// Stationary amplitude after propagating a total distance s:
///   prefactor * exp(i p0 s/hbar) * exp(-s/2 ell0) * exp(i phi)
/// with phi the accumulated potential phase.  The pieces are kept separate so
/// |amplitude|^2 = |prefactor|^2 exp(-s/ell0) exp(-2 Im phi) is testable.
struct PropagatedAmplitude {
    std::complex<double> prefactor{1.0, 0.0};
    double dynamical_phase = 0.0;       // p0 s / hbar [rad]
    double attenuation_exponent = 0.0;  // s / (2 ell0)
    ComplexPhase potential_phase;
    double total_length = 0.0;          // s [m]

    std::complex<double> amplitude() const;
};

/// Complex phase of one straight leg under the given potential.  Closed form
/// for ZeroPotential and UniformGravity, trapezoid for SampledLineProfile.
/// The potential must vary slowly on the scale of lambda0 for the result to
/// be meaningful; that is the caller's responsibility.
ComplexPhase leg_phase(const BeamParticle& b, const PathLeg& leg, const PotentialModel& pot);

/// Amplitude after traversing the given contiguous legs (end of leg i must
/// match the start of leg i+1 within 1e-12 m).
PropagatedAmplitude propagate(const BeamParticle& b, const std::vector<PathLeg>& legs,
                              const PotentialModel& pot,
                              std::complex<double> prefactor = {1.0, 0.0});

}
