#pragma once

#include <complex>
#include <vector>

#include "quup/beam.hpp"
#include "quup/propagator.hpp"

namespace quup::cow {

using propagator::ComplexPhase;

/// Interferometer loop: beam split at A, legs AB (horizontal, length L0) and
/// AC (vertical in the loop plane, length H0), recombined at D.  The loop
/// plane is tilted by alpha about the horizontal y-axis, so heights along the
/// vertical legs scale with sin(alpha).
struct CowGeometry {
    double H0 = 0.0;    // loop height along the tilted plane [m]
    double L0 = 0.0;    // loop length [m]
    double alpha = 0.0; // tilt angle [rad], in [-pi/2, pi/2]

    void validate() const;
};

/// Mirror phase factor and splitter reflection/transmission amplitudes.
/// A lossless splitter requires |R_M|^2 = 1, |R_BS|^2 + |T_BS|^2 = 1 and
/// R_BS T_BS* + R_BS* T_BS = 0.
struct BeamSplitterSet {
    std::complex<double> R_M{1.0, 0.0};
    std::complex<double> R_BS{0.0, 0.0};
    std::complex<double> T_BS{0.0, 0.0};

    void validate(double tol = 1e-12) const;
    static BeamSplitterSet balanced();  // T = 1/sqrt(2), R = i/sqrt(2)
};

/// Gravity-induced complex phases of the two paths and their dimensionless
/// amplitudes:
///   q_cow  = m^2 g H0 L0 / (hbar p0)     (real phase difference)
///   q_ucow = m^3 g Gamma H0 L0 / (2 p0^3) (decay-induced imaginary part)
/// The stored leg phases keep the full closed forms, including the small
/// hbar*Gamma/(2 m c^2) piece of the imaginary part; q_ucow excludes it.
/// Only the horizontal legs survive in the differences: the vertical-leg
/// contributions are common to both paths and cancel.
struct CowPhases {
    ComplexPhase phi_ABD;
    ComplexPhase phi_ACD;
    double q_cow = 0.0;
    double q_ucow = 0.0;          // 0 for stable beams
    double delta_phi_cow = 0.0;   // -q_cow  * sin(alpha)
    double delta_phi_ucow = 0.0;  // +q_ucow * sin(alpha)
};

CowPhases leg_phases(const BeamParticle& b, const CowGeometry& geo,
                     const PhysicalConstants& constants);
CowPhases leg_phases(const BeamParticle& b, const CowGeometry& geo);

/// Detector-1 probability in the dimensionless parameterization
/// (u = q_ucow sin(alpha), h = H0/L0, splitter weight |T_BS R_BS|^2):
///   w [ e^{-u(2+h)} + e^{-u h} + 2 e^{-u(1+h)} cos(q_cow sin(alpha)) ].
/// detector1_amplitude_form evaluates the same quantity from the complex
/// two-amplitude sum instead; the two routes are independent evaluations of
/// the same expansion and must agree to rounding.
double detector1_closed_form(double q_cow, double q_ucow, double h_over_l,
                             double sin_alpha, double splitter_weight = 0.25);
double detector1_amplitude_form(double q_cow, double q_ucow, double h_over_l,
                                double sin_alpha,
                                const BeamSplitterSet& bs = BeamSplitterSet::balanced());

struct Detector1Probability {
    double closed_form = 0.0;
    double amplitude_form = 0.0;
};

/// Probability that the undecayed particle leaves the recombiner into
/// detector #1 (includes the overall survival factor exp(-(H0+L0)/ell0)).
Detector1Probability detector1_probability(const BeamParticle& b, const CowGeometry& geo,
                                           const BeamSplitterSet& bs = BeamSplitterSet::balanced());

/// Detector #2 counterpart, obtained from splitter unitarity (port-2
/// amplitude T^2 e^{i phi_ABD} + R^2 e^{i phi_ACD}); the interference term
/// enters with the opposite sign of detector #1's.
double detector2_probability(const BeamParticle& b, const CowGeometry& geo,
                             const BeamSplitterSet& bs = BeamSplitterSet::balanced());

/// (i0/2) [1 + sech(q_ucow sin alpha) cos(q_cow sin alpha)].
double intensity(const BeamParticle& b, const CowGeometry& geo, double i0);

/// sech(q_ucow sin alpha); 1 for stable beams.
double visibility(const BeamParticle& b, const CowGeometry& geo);

/// tanh|q_ucow sin alpha|; 0 for stable beams.
double predictability(const BeamParticle& b, const CowGeometry& geo);

struct RotationRow {
    double alpha = 0.0;
    double p_d1 = 0.0;
    double intensity = 0.0;
    double visibility = 0.0;
    double predictability = 0.0;
    double duality_residual = 0.0;
    double qc_sin_alpha = 0.0;
    double qu_sin_alpha = 0.0;
};

/// Uniform tilt sweep; geo.alpha is ignored in favor of the swept value.
std::vector<RotationRow> rotation_scan(const BeamParticle& b, const CowGeometry& geo,
                                       double alpha_min, double alpha_max, int n_points,
                                       double i0 = 1.0);

}
