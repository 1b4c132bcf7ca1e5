#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "quup/cli/run.hpp"
#include "quup/cow.hpp"
#include "quup/doubleslit.hpp"
#include "quup/duality.hpp"
#include "quup/version.hpp"
#include "quup/wavepacket.hpp"

namespace quup::cli {

namespace {

std::string fmt_e(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// Natural-unit constants: hbar = 1 makes lambda0 = 1/p0 and puts all scales
// near unity, which keeps the artificial-parameter checks well conditioned.
PhysicalConstants natural_units() {
    PhysicalConstants k;
    k.hbar = 1.0;
    k.c = 1e8;
    k.g_std = 1.0;
    k.m_neutron = 1.0;
    return k;
}

VerifyCheck check_duality_grid(const PhysicalConstants& constants) {
    double worst = 0.0;
    const PhysicalConstants nat = natural_units();
    // Double slit: beams across five decades of decay rate, delta_s pushing
    // the sech/tanh argument up to 10.
    for (int bi = 0; bi < 10; ++bi) {
        const double gamma = 1e-2 * std::pow(10.0, 0.5 * bi);
        const BeamParticle b = make_beam(1.0, 1.0, gamma, nat);
        for (int gi = 1; gi <= 100; ++gi) {
            const double x = 10.0 * gi / 100.0;
            const double ds = x * 2.0 * b.ell0;
            const double mean = 2.0 * ds + 1.0;
            doubleslit::SlitGeometry geo{mean + 0.5 * ds, mean - 0.5 * ds};
            const double v = doubleslit::visibility(b, geo.delta_s());
            const double p = doubleslit::predictability(b, geo).from_tanh;
            worst = std::max(worst, std::abs(duality::duality_check(v, p).residual));
        }
    }
    // Interferometer loop: spans of q_ucow sin(alpha) up to 10 via the decay
    // rate, alpha sweeping the full tilt range.
    for (int bi = 1; bi <= 10; ++bi) {
        const BeamParticle b = make_beam(1.0, 1.0, 2.0 * bi, nat);
        cow::CowGeometry geo{1.0, 1.0, 0.0};
        for (int ai = 0; ai <= 100; ++ai) {
            geo.alpha = -std::numbers::pi / 2 + std::numbers::pi * ai / 100.0;
            const double v = cow::visibility(b, geo);
            const double p = cow::predictability(b, geo);
            worst = std::max(worst, std::abs(duality::duality_check(v, p).residual));
        }
    }
    (void)constants;
    return {"duality-residual-grid", worst <= 1e-12, "max |V^2+P^2-1| = " + fmt_e(worst)};
}

VerifyCheck check_cow_routes(const PhysicalConstants&) {
    double worst = 0.0;
    const auto bs = cow::BeamSplitterSet::balanced();
    const double w = std::norm(bs.T_BS * bs.R_BS);
    for (double qu : {0.1, 1.0, 5.0}) {
        for (int i = 0; i <= 1000; ++i) {
            const double alpha = -std::numbers::pi / 2 + std::numbers::pi * i / 1000.0;
            const double sa = std::sin(alpha);
            const double closed = cow::detector1_closed_form(2.5, qu, 1.0, sa, w);
            const double amp = cow::detector1_amplitude_form(2.5, qu, 1.0, sa, bs);
            worst = std::max(worst, std::abs(closed - amp) / std::abs(closed));
        }
    }
    return {"cow-closed-vs-amplitude", worst <= 1e-12, "max rel diff = " + fmt_e(worst)};
}

VerifyCheck check_cow_golden(const PhysicalConstants& constants) {
    const BeamParticle b = thermal_neutron(constants);
    const cow::CowGeometry geo{0.1, 0.1, 0.0};
    const cow::CowPhases ph = cow::leg_phases(b, geo, constants);
    const bool ok = ph.q_cow >= 600.0 && ph.q_cow <= 800.0 && ph.q_ucow >= 3e-15 &&
                    ph.q_ucow <= 7e-15;
    return {"cow-golden-numbers", ok,
            "q_cow = " + fmt_e(ph.q_cow) + ", q_ucow = " + fmt_e(ph.q_ucow)};
}

VerifyCheck check_steady_vs_packet(const PhysicalConstants&) {
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    const PhysicalConstants nat = natural_units();
    double worst_component = 0.0;
    double worst_spread = 0.0;
    for (double gamma : {2e-8, 1e-7}) {
        const BeamParticle b = make_beam(1.0, 1.0, gamma, nat);
        const double sigma0 = 1e4;
        const auto packet = wavepacket::PacketParams::from_beam(b, sigma0);
        std::vector<double> ratios;
        for (int i = 0; i < 10; ++i) {
            const double mean = (30.0 + 20.0 * uni(rng)) * sigma0;
            // Keep the fringe phase away from the cosine zeros so relative
            // comparisons stay meaningful, and keep |s1-s2| << sigma0.
            const double phase =
                (i % 2 == 0 ? 0.0 : std::numbers::pi) + 0.3 + 0.9 * uni(rng);
            const double ds = phase / packet.k0;
            wavepacket::TwoPathPacketSetup setup{packet, mean + 0.5 * ds, mean - 0.5 * ds};
            const auto num = wavepacket::detection_probability_numeric(setup);
            const auto ana = wavepacket::detection_probability_analytic(setup);
            worst_component = std::max({worst_component,
                                        std::abs(num.p1 / ana.p1 - 1.0),
                                        std::abs(num.p2 / ana.p2 - 1.0),
                                        std::abs(num.p12 / ana.p12 - 1.0)});
            doubleslit::SlitGeometry geo{setup.s1, setup.s2};
            ratios.push_back(doubleslit::detection_probability(b, geo) / num.total);
        }
        const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
        worst_spread = std::max(worst_spread, (*hi - *lo) / *lo);
    }
    const bool ok = worst_spread <= 1e-5 && worst_component <= 1e-6;
    return {"steady-vs-packet", ok,
            "ratio spread = " + fmt_e(worst_spread) +
                ", num-vs-analytic = " + fmt_e(worst_component)};
}

VerifyCheck check_fringe_extraction(const PhysicalConstants&) {
    // ell0 = 10 lambda0 sweep across +-40 lambda0 with ~126 points per fringe.
    const PhysicalConstants nat = natural_units();
    const BeamParticle b = make_beam(1.0, 1.0, 0.1, nat);  // ell0 = 10, lambda0 = 1
    const auto scan = doubleslit::fringe_scan(b, -40.0, 40.0, 1601, 400.0, 1.0);
    const auto fringes = doubleslit::extract_visibilities(scan);

    double worst_env = 0.0, worst_pred = 0.0;
    for (const auto& f : fringes) {
        const double env = 2.0 * f.i_max - 1.0;  // i0 = 1
        worst_env = std::max(worst_env,
                             std::abs(env - doubleslit::visibility(b, f.delta_s_max)));
        const double v1 = doubleslit::visibility(b, f.delta_s_max);
        const double v2 = doubleslit::visibility(b, f.delta_s_min);
        const double predicted = (v1 + v2) / (2.0 + v1 - v2);
        worst_pred = std::max(worst_pred, std::abs(f.visibility - predicted));
    }
    const bool ok = !fringes.empty() && worst_env <= 1e-3 && worst_pred <= 1e-3;
    return {"fringe-extraction", ok,
            "envelope err = " + fmt_e(worst_env) + ", pairing err = " + fmt_e(worst_pred) +
                ", fringes = " + std::to_string(fringes.size())};
}

VerifyCheck check_stable_limits(const PhysicalConstants& constants) {
    bool ok = true;
    const BeamParticle b = stable_neutron(constants);
    ok = ok && doubleslit::visibility(b, 1.0) == 1.0;
    doubleslit::SlitGeometry geo{2.0, 1.0};
    const auto pred = doubleslit::predictability(b, geo);
    ok = ok && pred.from_ratio == 0.0 && pred.from_tanh == 0.0;

    cow::CowGeometry cgeo{0.1, 0.1, 0.3};
    ok = ok && cow::visibility(b, cgeo) == 1.0 && cow::predictability(b, cgeo) == 0.0;
    const auto ph = cow::leg_phases(b, cgeo, constants);
    ok = ok && ph.q_ucow == 0.0;
    const double expected_i =
        0.5 * (1.0 + std::cos(ph.q_cow * std::sin(cgeo.alpha)));
    ok = ok && cow::intensity(b, cgeo, 1.0) == expected_i;

    const auto packet = wavepacket::PacketParams::from_beam(b, 1e-6);
    wavepacket::TwoPathPacketSetup setup{packet, 5e-5, 5e-5 - 2e-10};
    const auto ana = wavepacket::detection_probability_analytic(setup);
    const double ds = setup.s1 - setup.s2;
    const double expected_p12 = 2.0 * std::cos(packet.k0 * ds) *
                                std::exp(-(ds * ds) / (8.0 * packet.sigma0 * packet.sigma0));
    ok = ok && ana.p1 == 1.0 && ana.p2 == 1.0 && ana.p12 == expected_p12;
    return {"stable-limits", ok, ok ? "all symbolic branches exact" : "mismatch"};
}

VerifyCheck check_lower_limit_tail(const PhysicalConstants&) {
    const PhysicalConstants nat = natural_units();
    const BeamParticle b = make_beam(1.0, 1.0, 1e-7, nat);
    const auto packet = wavepacket::PacketParams::from_beam(b, 1e4);
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double at30 = 0.0;
    for (double ratio : {5.0, 10.0, 20.0, 30.0}) {
        const double s = ratio * packet.sigma0;
        wavepacket::TwoPathPacketSetup setup{packet, s, s};
        const auto num = wavepacket::detection_probability_numeric(setup);
        const double rel = num.lower_limit_p1 / num.p1;
        monotone = monotone && rel < prev;
        prev = rel;
        if (ratio == 30.0) at30 = rel;
    }
    const bool ok = monotone && at30 <= 1e-10;
    return {"lower-limit-tail", ok,
            "monotone = " + std::string(monotone ? "yes" : "no") +
                ", rel at 30 sigma = " + fmt_e(at30)};
}

}  // namespace

std::vector<VerifyCheck> verify_suite(const PhysicalConstants& constants) {
    return {check_duality_grid(constants),   check_cow_routes(constants),
            check_cow_golden(constants),     check_steady_vs_packet(constants),
            check_fringe_extraction(constants), check_stable_limits(constants),
            check_lower_limit_tail(constants)};
}

std::string format_verify_report(const std::vector<VerifyCheck>& checks) {
    std::ostringstream out;
    out << "quup " << kVersion << " verification report\n";
    size_t width = 0;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    int passed = 0;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS  " : "FAIL  ") << c.name
            << std::string(width - c.name.size() + 2, ' ') << c.detail << "\n";
        if (c.pass) ++passed;
    }
    out << passed << "/" << checks.size() << " checks passed\n";
    return out.str();
}

}
