#include "quup/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quup/errors.hpp"

namespace quup::wavepacket {

namespace {

constexpr double kPathsFarThreshold = 30.0;   // min(s_i)/sigma0
constexpr double kSlowDecayThreshold = 1e-3;  // gamma sigma0 / v_g
constexpr double kArrivalWindow = 8.0;        // packet window half-width [sigma0/v_g]
constexpr double kTailPadding = 10.0;         // integration horizon past the last arrival

double gaussian_norm(double sigma0) {
    return std::pow(2.0 * std::numbers::pi * sigma0 * sigma0, -0.25);
}

// Standard normal CDF.
double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

// Exact integral of (v/(sigma sqrt(2 pi))) e^{-(s_c - v t)^2/2 sigma^2} e^{-Gamma t}
// over t in (-inf, 0]: the Gaussian-decay coupling completes to
// e^{a^2/2 - Gamma s_c/v} Phi(a - s_c/sigma) with a = Gamma sigma / v.
double unit_flux_neg_halfline(double s_c, double sigma, double v, double gamma) {
    const double a = gamma * sigma / v;
    return std::exp(0.5 * a * a - gamma * s_c / v) * normal_cdf(a - s_c / sigma);
}

void require_finite_packet(const PacketParams& p, const char* who) {
    if (!(p.sigma0 > 0.0) || !std::isfinite(p.sigma0))
        throw DomainError(std::string(who) + ": sigma0 must be positive and finite");
    if (!(p.v_g > 0.0) || !(p.k0 > 0.0))
        throw DomainError(std::string(who) + ": k0 and v_g must be positive");
    if (!(p.gamma >= 0.0))
        throw DomainError(std::string(who) + ": gamma must be non-negative");
}

}  // namespace

double PacketParams::no_spreading_margin(double path_length) const {
    if (!(path_length > 0.0)) return 0.0;
    return sigma0 / std::sqrt(path_length / (2.0 * k0));
}

PacketParams PacketParams::from_beam(const BeamParticle& b, double sigma0, double n0) {
    if (!(sigma0 > 0.0))
        throw DomainError("PacketParams::from_beam: sigma0 must be positive");
    PacketParams p;
    p.sigma0 = sigma0;
    p.k0 = 1.0 / b.lambda0;  // carrier = p0/hbar
    p.v_g = b.v_g;
    p.omega0 = 0.5 * p.v_g * p.k0;
    p.gamma = b.gamma;
    p.n0 = n0;
    return p;
}

void TwoPathPacketSetup::validate() const {
    if (!(s1 > 0.0) || !(s2 > 0.0))
        throw DomainError("TwoPathPacketSetup: path lengths must be positive");
}

ValidityFlags validity_flags(const TwoPathPacketSetup& setup) {
    ValidityFlags f;
    f.min_path_over_sigma = std::min(setup.s1, setup.s2) / setup.packet.sigma0;
    f.slow_decay_ratio = setup.packet.slow_decay_ratio();
    f.no_spreading_margin = setup.packet.no_spreading_margin(std::max(setup.s1, setup.s2));
    f.paths_far = f.min_path_over_sigma >= kPathsFarThreshold;
    f.slow_decay = f.slow_decay_ratio <= kSlowDecayThreshold;
    f.pass = f.paths_far && f.slow_decay;
    return f;
}

std::complex<double> packet_value(const PacketParams& p, double s_i, double s, double t) {
    if (!(t >= 0.0))
        throw DomainError("packet_value: t must be non-negative");
    const double u = s + s_i - p.v_g * t;
    const double log_mod = -u * u / (4.0 * p.sigma0 * p.sigma0) - 0.5 * p.gamma * t;
    const double phase = p.k0 * (s + s_i) - p.omega0 * t;
    return gaussian_norm(p.sigma0) * std::exp(log_mod) *
           std::complex<double>(std::cos(phase), std::sin(phase));
}

double current_single(const PacketParams& p, double s_i, double t) {
    if (!(t >= 0.0))
        throw DomainError("current_single: t must be non-negative");
    require_finite_packet(p, "current_single");
    const double u = s_i - p.v_g * t;
    const double g2 = gaussian_norm(p.sigma0);
    return p.v_g * g2 * g2 * std::exp(-u * u / (2.0 * p.sigma0 * p.sigma0) - p.gamma * t);
}

double current_single_derivative_form(const PacketParams& p, double s_i, double t) {
    // (hbar/m) Im[Psi* dPsi/ds] with dPsi/ds = [i k0 - (s_i - v_g t)/2 sigma0^2] Psi;
    // the gradient term is real and dies in the imaginary part.
    const std::complex<double> psi = packet_value(p, s_i, 0.0, t);
    const std::complex<double> dpsi =
        (std::complex<double>(0.0, p.k0) - (s_i - p.v_g * t) / (2.0 * p.sigma0 * p.sigma0)) * psi;
    const double hbar_over_m = p.v_g / p.k0;
    return hbar_over_m * std::imag(std::conj(psi) * dpsi);
}

double current_cross(const TwoPathPacketSetup& setup, double t) {
    if (!(t >= 0.0))
        throw DomainError("current_cross: t must be non-negative");
    const PacketParams& p = setup.packet;
    require_finite_packet(p, "current_cross");
    const double u1 = setup.s1 - p.v_g * t;
    const double u2 = setup.s2 - p.v_g * t;
    const double g2 = gaussian_norm(p.sigma0);
    return 2.0 * p.v_g * g2 * g2 * std::cos(p.k0 * (setup.s1 - setup.s2)) *
           std::exp(-(u1 * u1 + u2 * u2) / (4.0 * p.sigma0 * p.sigma0) - p.gamma * t);
}

double total_current(const TwoPathPacketSetup& setup, double t) {
    return setup.packet.n0 * (current_single(setup.packet, setup.s1, t) +
                              current_single(setup.packet, setup.s2, t) +
                              current_cross(setup, t));
}

double total_current_modulus_form(const TwoPathPacketSetup& setup, double t) {
    const std::complex<double> psi =
        packet_value(setup.packet, setup.s1, 0.0, t) + packet_value(setup.packet, setup.s2, 0.0, t);
    return setup.packet.n0 * setup.packet.v_g * std::norm(psi);
}

DetectionProbabilities detection_probability_numeric(const TwoPathPacketSetup& setup,
                                                     const quadrature::Options& opt) {
    setup.validate();
    const PacketParams& p = setup.packet;
    require_finite_packet(p, "detection_probability_numeric");

    const double t1 = setup.s1 / p.v_g;
    const double t2 = setup.s2 / p.v_g;
    const double window = kArrivalWindow * p.sigma0 / p.v_g;
    const double t_max = std::max(t1, t2) + kTailPadding * p.sigma0 / p.v_g;
    const double t_mid = 0.5 * (t1 + t2);

    std::vector<double> breaks = {t1 - window, t1 + window, t2 - window,
                                  t2 + window, t_mid - window, t_mid + window};

    auto integrate_current = [&](const std::function<double(double)>& j, const char* name) {
        quadrature::Result r = quadrature::integrate(j, 0.0, t_max, opt, breaks);
        if (!r.converged)
            throw NumericError(std::string("detection_probability_numeric: ") + name +
                                   " integral did not converge",
                               r.error_estimate);
        return r;
    };

    const quadrature::Result r1 =
        integrate_current([&](double t) { return current_single(p, setup.s1, t); }, "path-1");
    const quadrature::Result r2 =
        integrate_current([&](double t) { return current_single(p, setup.s2, t); }, "path-2");
    const quadrature::Result r12 =
        integrate_current([&](double t) { return current_cross(setup, t); }, "interference");

    DetectionProbabilities out;
    out.p1 = p.n0 * r1.value;
    out.p2 = p.n0 * r2.value;
    out.p12 = p.n0 * r12.value;
    out.total = out.p1 + out.p2 + out.p12;
    out.p1_error = p.n0 * r1.error_estimate;
    out.p2_error = p.n0 * r2.error_estimate;
    out.p12_error = p.n0 * r12.error_estimate;

    // What extending the lower limit to -inf would add, in closed form.
    const double ds = setup.s1 - setup.s2;
    const double s_mid = 0.5 * (setup.s1 + setup.s2);
    out.lower_limit_p1 = p.n0 * unit_flux_neg_halfline(setup.s1, p.sigma0, p.v_g, p.gamma);
    out.lower_limit_p2 = p.n0 * unit_flux_neg_halfline(setup.s2, p.sigma0, p.v_g, p.gamma);
    out.lower_limit_p12 = p.n0 * 2.0 * std::cos(p.k0 * ds) *
                          std::exp(-(ds * ds) / (8.0 * p.sigma0 * p.sigma0)) *
                          unit_flux_neg_halfline(s_mid, p.sigma0, p.v_g, p.gamma);
    out.flags = validity_flags(setup);
    return out;
}

DetectionProbabilities detection_probability_analytic(const TwoPathPacketSetup& setup) {
    setup.validate();
    const PacketParams& p = setup.packet;
    if (!(p.sigma0 > 0.0))  // +inf accepted: the long-coherence limit
        throw DomainError("detection_probability_analytic: sigma0 must be positive");

    const double ds = setup.s1 - setup.s2;
    const double decay1 = p.stable() ? 1.0 : std::exp(-p.gamma * setup.s1 / p.v_g);
    const double decay2 = p.stable() ? 1.0 : std::exp(-p.gamma * setup.s2 / p.v_g);
    const double decay12 =
        p.stable() ? 1.0 : std::exp(-p.gamma * (setup.s1 + setup.s2) / (2.0 * p.v_g));

    DetectionProbabilities out;
    out.p1 = p.n0 * decay1;
    out.p2 = p.n0 * decay2;
    out.p12 = 2.0 * p.n0 * std::cos(p.k0 * ds) *
              std::exp(-(ds * ds) / (8.0 * p.sigma0 * p.sigma0)) * decay12;
    out.total = out.p1 + out.p2 + out.p12;
    out.flags = validity_flags(setup);
    return out;
}

TotalVisibility total_visibility(const BeamParticle& b, double sigma0, double delta_s) {
    if (!(sigma0 > 0.0))  // +inf accepted
        throw DomainError("total_visibility: sigma0 must be positive");
    TotalVisibility v;
    v.v_gaussian = std::exp(-(delta_s * delta_s) / (8.0 * sigma0 * sigma0));
    v.v_ds = b.stable ? 1.0 : 1.0 / std::cosh(delta_s / (2.0 * b.ell0));
    v.v_tot = v.v_gaussian * v.v_ds;
    return v;
}

}
