#include "quup/cow.hpp"

#include <cmath>
#include <numbers>

#include "quup/duality.hpp"
#include "quup/errors.hpp"

namespace quup::cow {

void CowGeometry::validate() const {
    if (!(H0 > 0.0) || !std::isfinite(H0) || !(L0 > 0.0) || !std::isfinite(L0))
        throw DomainError("CowGeometry: H0 and L0 must be positive and finite");
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (!(alpha >= -half_pi && alpha <= half_pi))
        throw DomainError("CowGeometry: alpha must lie in [-pi/2, pi/2]");
}

void BeamSplitterSet::validate(double tol) const {
    if (std::abs(std::norm(R_M) - 1.0) > tol)
        throw DomainError("BeamSplitterSet: mirror factor must have unit modulus");
    if (std::abs(std::norm(R_BS) + std::norm(T_BS) - 1.0) > tol)
        throw DomainError("BeamSplitterSet: |R_BS|^2 + |T_BS|^2 must equal 1");
    if (std::abs(2.0 * std::real(R_BS * std::conj(T_BS))) > tol)
        throw DomainError("BeamSplitterSet: R_BS T_BS* + R_BS* T_BS must vanish");
}

BeamSplitterSet BeamSplitterSet::balanced() {
    const double r = std::sqrt(0.5);
    BeamSplitterSet bs;
    bs.R_M = {1.0, 0.0};
    bs.R_BS = {0.0, r};
    bs.T_BS = {r, 0.0};
    return bs;
}

CowPhases leg_phases(const BeamParticle& b, const CowGeometry& geo,
                     const PhysicalConstants& constants) {
    geo.validate();
    const double m = b.mass;
    const double p0 = b.p0;
    const double g = constants.g_std;
    const double hbar = constants.hbar;
    const double c2 = constants.c * constants.c;
    const double sa = std::sin(geo.alpha);
    const double H0 = geo.H0;
    const double L0 = geo.L0;

    // Vertical legs AC and BD rise by H0 sin(alpha); their phases are common
    // to both paths, so they drop out of every difference below.
    ComplexPhase vertical;
    vertical.real_part = -(m * m * g * H0 * H0 / (2.0 * hbar * p0)) * sa;
    vertical.imag_part =
        b.stable ? 0.0
                 : (m * m * m * g * H0 * H0 * b.gamma / (4.0 * p0 * p0 * p0) +
                    m * g * H0 * H0 * b.gamma / (4.0 * p0 * c2)) *
                       sa;

    // Horizontal leg CD runs at height H0 sin(alpha) above AB; AB itself
    // sits at z = 0, so phi_AB = 0 and the whole difference comes from CD.
    ComplexPhase cd;
    cd.real_part = -(m * m * g * H0 * L0 / (hbar * p0)) * sa;
    cd.imag_part = b.stable
                       ? 0.0
                       : (m * m * m * g * b.gamma / (2.0 * p0 * p0 * p0) +
                          m * g * b.gamma / (2.0 * p0 * c2)) *
                             H0 * L0 * sa;

    CowPhases ph;
    ph.phi_ABD = vertical;            // AB contributes nothing
    ph.phi_ACD = vertical + cd;
    ph.q_cow = m * m * g * H0 * L0 / (hbar * p0);
    ph.q_ucow = b.stable ? 0.0 : m * m * m * g * b.gamma * H0 * L0 / (2.0 * p0 * p0 * p0);
    ph.delta_phi_cow = -ph.q_cow * sa;
    ph.delta_phi_ucow = ph.q_ucow * sa;
    return ph;
}

CowPhases leg_phases(const BeamParticle& b, const CowGeometry& geo) {
    return leg_phases(b, geo, b.constants);
}

double detector1_closed_form(double q_cow, double q_ucow, double h_over_l, double sin_alpha,
                             double splitter_weight) {
    const double u = q_ucow * sin_alpha;
    const double h = h_over_l;
    return splitter_weight * (std::exp(-u * (2.0 + h)) + std::exp(-u * h) +
                              2.0 * std::exp(-u * (1.0 + h)) * std::cos(q_cow * sin_alpha));
}

double detector1_amplitude_form(double q_cow, double q_ucow, double h_over_l, double sin_alpha,
                                const BeamSplitterSet& bs) {
    bs.validate();
    const double u = q_ucow * sin_alpha;
    const double h = h_over_l;
    const std::complex<double> i1(0.0, 1.0);
    // Attenuation exponents of the two paths: the lower path only crosses
    // the vertical legs' half (u h/2); the upper path adds the full CD leg.
    const std::complex<double> phi_abd(0.0, u * h * 0.5);
    const std::complex<double> phi_acd(-q_cow * sin_alpha, u * (1.0 + 0.5 * h));
    const std::complex<double> amp = bs.T_BS * bs.R_M * bs.R_BS * std::exp(i1 * phi_abd) +
                                     bs.R_BS * bs.R_M * bs.T_BS * std::exp(i1 * phi_acd);
    return std::norm(amp);
}

namespace {

double survival_factor(const BeamParticle& b, const CowGeometry& geo) {
    return b.stable ? 1.0 : std::exp(-(geo.H0 + geo.L0) / b.ell0);
}

}  // namespace

Detector1Probability detector1_probability(const BeamParticle& b, const CowGeometry& geo,
                                           const BeamSplitterSet& bs) {
    geo.validate();
    bs.validate();
    const CowPhases ph = leg_phases(b, geo);
    const double sa = std::sin(geo.alpha);
    const double h = geo.H0 / geo.L0;
    const double w = std::norm(bs.T_BS * bs.R_BS);
    const double survival = survival_factor(b, geo);
    Detector1Probability out;
    out.closed_form = survival * detector1_closed_form(ph.q_cow, ph.q_ucow, h, sa, w);
    out.amplitude_form = survival * detector1_amplitude_form(ph.q_cow, ph.q_ucow, h, sa, bs);
    return out;
}

double detector2_probability(const BeamParticle& b, const CowGeometry& geo,
                             const BeamSplitterSet& bs) {
    geo.validate();
    bs.validate();
    const CowPhases ph = leg_phases(b, geo);
    const double sa = std::sin(geo.alpha);
    const double h = geo.H0 / geo.L0;
    const double u = ph.q_ucow * sa;
    const std::complex<double> i1(0.0, 1.0);
    const std::complex<double> phi_abd(0.0, u * h * 0.5);
    const std::complex<double> phi_acd(-ph.q_cow * sa, u * (1.0 + 0.5 * h));
    const std::complex<double> amp = bs.T_BS * bs.R_M * bs.T_BS * std::exp(i1 * phi_abd) +
                                     bs.R_BS * bs.R_M * bs.R_BS * std::exp(i1 * phi_acd);
    return survival_factor(b, geo) * std::norm(amp);
}

double intensity(const BeamParticle& b, const CowGeometry& geo, double i0) {
    geo.validate();
    if (!(i0 > 0.0))
        throw DomainError("intensity: i0 must be positive");
    const CowPhases ph = leg_phases(b, geo);
    const double sa = std::sin(geo.alpha);
    const double envelope = b.stable ? 1.0 : 1.0 / std::cosh(ph.q_ucow * sa);
    return 0.5 * i0 * (1.0 + envelope * std::cos(ph.q_cow * sa));
}

double visibility(const BeamParticle& b, const CowGeometry& geo) {
    geo.validate();
    if (b.stable) return 1.0;
    const CowPhases ph = leg_phases(b, geo);
    return 1.0 / std::cosh(ph.q_ucow * std::sin(geo.alpha));
}

double predictability(const BeamParticle& b, const CowGeometry& geo) {
    geo.validate();
    if (b.stable) return 0.0;
    const CowPhases ph = leg_phases(b, geo);
    return std::tanh(std::abs(ph.q_ucow * std::sin(geo.alpha)));
}

std::vector<RotationRow> rotation_scan(const BeamParticle& b, const CowGeometry& geo,
                                       double alpha_min, double alpha_max, int n_points,
                                       double i0) {
    if (n_points < 2)
        throw DomainError("rotation_scan: need at least two points");
    if (!(alpha_min < alpha_max))
        throw DomainError("rotation_scan: inverted alpha range");

    std::vector<RotationRow> rows;
    rows.reserve(static_cast<size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n_points - 1);
        CowGeometry g = geo;
        g.alpha = alpha_min + t * (alpha_max - alpha_min);
        const CowPhases ph = leg_phases(b, g);
        const double sa = std::sin(g.alpha);
        RotationRow row;
        row.alpha = g.alpha;
        row.p_d1 = detector1_probability(b, g).closed_form;
        row.intensity = intensity(b, g, i0);
        row.visibility = visibility(b, g);
        row.predictability = predictability(b, g);
        row.duality_residual =
            duality::duality_check(row.visibility, row.predictability).residual;
        row.qc_sin_alpha = ph.q_cow * sa;
        row.qu_sin_alpha = ph.q_ucow * sa;
        rows.push_back(row);
    }
    return rows;
}

}
