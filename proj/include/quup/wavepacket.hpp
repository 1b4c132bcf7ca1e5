#pragma once

#include <complex>

#include "quup/beam.hpp"
#include "quup/quadrature.hpp"

namespace quup::wavepacket {

/// Non-spreading Gaussian wave packet of an unstable particle:
///   Psi(s,t) = (2 pi sigma0^2)^{-1/4} e^{i(k0 s - omega0 t)}
///              e^{-(s - s0 - v_g t)^2 / 4 sigma0^2} e^{-Gamma t / 2}.
/// sigma0 also sets the longitudinal coherence scale; the wave-number spread
/// is sigma_k = 1/(2 sigma0).
struct PacketParams {
    double sigma0 = 0.0;  // packet width [m]
    double k0 = 0.0;      // carrier wave number [1/m]
    double omega0 = 0.0;  // hbar k0^2 / 2m = v_g k0 / 2 [rad/s]
    double v_g = 0.0;     // group velocity [m/s]
    double gamma = 0.0;   // decay rate [1/s]
    double n0 = 1.0;      // detection-problem normalization

    bool stable() const { return gamma == 0.0; }
    double sigma_k() const { return 1.0 / (2.0 * sigma0); }
    /// Time for significant free spreading, 2 m sigma0^2 / hbar.
    double t_spread() const { return 2.0 * sigma0 * sigma0 * k0 / v_g; }
    /// Gamma sigma0 / v_g: probability of decaying while crossing one packet
    /// width.  Must be << 1 for the closed-form detection probabilities.
    double slow_decay_ratio() const { return gamma * sigma0 / v_g; }
    /// sigma0 / sqrt(path/(2 k0)); >> 1 means spreading is negligible over
    /// the given path length.
    double no_spreading_margin(double path_length) const;

    /// Carrier k0 = 1/lambda0 = p0/hbar, so v_g = hbar k0 / m holds exactly.
    static PacketParams from_beam(const BeamParticle& b, double sigma0, double n0 = 1.0);
};

/// Two packets released in phase at t = 0, centered on their slits at
/// s = -s1 and s = -s2; the detector sits at s = 0.
struct TwoPathPacketSetup {
    PacketParams packet;
    double s1 = 0.0;  // [m]
    double s2 = 0.0;  // [m]

    void validate() const;
};

/// Thresholds behind the closed-form approximations: paths many packet
/// widths long and slow decay.  The no-spreading margin is reported but not
/// gated on (the model never spreads by construction).
struct ValidityFlags {
    double min_path_over_sigma = 0.0;
    double slow_decay_ratio = 0.0;
    double no_spreading_margin = 0.0;
    bool paths_far = false;   // min(s1,s2)/sigma0 >= 30
    bool slow_decay = false;  // gamma sigma0 / v_g <= 1e-3
    bool pass = false;
};
ValidityFlags validity_flags(const TwoPathPacketSetup& setup);

/// Packet value at position s and time t for a packet launched at -s_i.
std::complex<double> packet_value(const PacketParams& p, double s_i, double s, double t);

/// Single-packet probability current at the detector,
///   J_i(0,t) = v_g |Psi_i(0,t)|^2
///            = v_g (2 pi sigma0^2)^{-1/2} e^{-(s_i - v_g t)^2/2 sigma0^2} e^{-Gamma t}.
double current_single(const PacketParams& p, double s_i, double t);

/// Same current from the defining derivative form (hbar/m) Im[Psi* dPsi/ds];
/// the Gaussian-gradient term is real and drops out of the imaginary part,
/// so this must equal current_single to rounding.
double current_single_derivative_form(const PacketParams& p, double s_i, double t);

/// Interference current 2 v_g Re[Psi_1*(0,t) Psi_2(0,t)]; non-zero only while
/// the packets overlap at the detector.
double current_cross(const TwoPathPacketSetup& setup, double t);

/// n0 (J_1 + J_2 + J_12).
double total_current(const TwoPathPacketSetup& setup, double t);

/// n0 v_g |Psi_1 + Psi_2|^2 — manifestly non-negative; equals total_current.
double total_current_modulus_form(const TwoPathPacketSetup& setup, double t);

/// Detection probabilities, time-integrated at the detector.
/// For the numeric route, lower_limit_* report the exact (-inf, 0]
/// contribution of each current in closed (erfc) form: the integration
/// starts at the release time 0, while the closed-form route extends it to
/// -inf, and this makes that approximation step observable.
struct DetectionProbabilities {
    double p1 = 0.0;
    double p2 = 0.0;
    double p12 = 0.0;
    double total = 0.0;
    double p1_error = 0.0, p2_error = 0.0, p12_error = 0.0;  // quadrature estimates
    double lower_limit_p1 = 0.0, lower_limit_p2 = 0.0, lower_limit_p12 = 0.0;
    ValidityFlags flags;
};

/// Adaptive quadrature of each current over t in [0, T_max] with
/// T_max = max(s_i)/v_g + 10 sigma0/v_g; refinement is pre-seeded on the
/// packet arrival windows s_i/v_g +- 8 sigma0/v_g (Gaussian tails beyond
/// 8 sigma are below 1e-15 of the peak).  Throws NumericError when the
/// tolerance cannot be met within the panel budget.
DetectionProbabilities detection_probability_numeric(const TwoPathPacketSetup& setup,
                                                     const quadrature::Options& opt = {});

/// Closed forms, valid when the flags pass:
///   P_i  = n0 e^{-Gamma s_i/v_g}
///   P_12 = 2 n0 cos[k0(s1-s2)] e^{-(s1-s2)^2/8 sigma0^2} e^{-Gamma(s1+s2)/2 v_g}.
/// sigma0 = +infinity is accepted and gives the long-coherence limit.
DetectionProbabilities detection_probability_analytic(const TwoPathPacketSetup& setup);

/// Visibility factors of a finite-coherence unstable beam:
///   v_gaussian = e^{-delta_s^2 / 8 sigma0^2}, v_ds = sech(delta_s/2 ell0),
/// and their product.
struct TotalVisibility {
    double v_gaussian = 1.0;
    double v_ds = 1.0;
    double v_tot = 1.0;
};
TotalVisibility total_visibility(const BeamParticle& b, double sigma0, double delta_s);

}
