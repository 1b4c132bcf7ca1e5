#include "quup/cli/run.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "quup/cow.hpp"
#include "quup/doubleslit.hpp"
#include "quup/duality.hpp"
#include "quup/errors.hpp"
#include "quup/version.hpp"
#include "quup/wavepacket.hpp"

namespace quup::cli {

namespace {

std::string fmt_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

std::string fmt_full(double v) {
    return fmt_double(v, 17);
}

// Runs fn(i) for i in [0, n) on `threads` workers; each index writes its own
// slot, so the result is identical to the serial order for any worker count.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n < 2) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    const int count = std::min(threads, n);
    pool.reserve(static_cast<size_t>(count));
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

double sweep_value(const SweepSpec& sweep, int i) {
    const double t = static_cast<double>(i) / static_cast<double>(sweep.n_points - 1);
    return sweep.start + t * (sweep.stop - sweep.start);
}

Table run_dslit(const RunConfig& cfg, const PhysicalConstants& constants) {
    const BeamParticle beam = cfg.beam.resolve(constants);
    const auto scan = doubleslit::fringe_scan(beam, cfg.sweep.start, cfg.sweep.stop,
                                              cfg.sweep.n_points, cfg.dslit_mean_path_m,
                                              cfg.dslit_i0);
    const auto fringes = doubleslit::extract_visibilities(scan);

    Table t;
    t.columns = {"delta_s_m", "P",    "I",
                 "V_closed",  "V_extracted", "V_extracted_valid",
                 "Pred",      "duality_residual"};
    t.rows.assign(scan.size(), {});
    parallel_for(static_cast<int>(scan.size()), cfg.threads, [&](int i) {
        const auto& pt = scan[static_cast<size_t>(i)];
        const double v = doubleslit::visibility(beam, pt.delta_s);
        doubleslit::SlitGeometry geo{cfg.dslit_mean_path_m + 0.5 * pt.delta_s,
                                     cfg.dslit_mean_path_m - 0.5 * pt.delta_s};
        const double pred = doubleslit::predictability(beam, geo).from_tanh;
        const double residual = duality::duality_check(v, pred).residual;

        // Nearest extracted fringe contrast; rows without one carry NaN plus
        // a cleared validity flag.
        double v_ext = std::numeric_limits<double>::quiet_NaN();
        double v_ext_valid = 0.0;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : fringes) {
            const double d = std::abs(f.delta_s_max - pt.delta_s);
            if (d < best) {
                best = d;
                v_ext = f.visibility;
                v_ext_valid = 1.0;
            }
        }
        t.rows[static_cast<size_t>(i)] = {pt.delta_s, pt.probability, pt.intensity,
                                          v,          v_ext,          v_ext_valid,
                                          pred,       residual};
    });
    return t;
}

Table run_cow(const RunConfig& cfg, const PhysicalConstants& constants) {
    const BeamParticle beam = cfg.beam.resolve(constants);
    cow::CowGeometry geo{cfg.cow_H0_m, cfg.cow_L0_m, 0.0};

    Table t;
    t.columns = {"alpha_rad", "qc_sin_alpha", "qu_sin_alpha", "P_D1",
                 "I",         "V",            "Pred",         "duality_residual"};
    t.rows.assign(static_cast<size_t>(cfg.sweep.n_points), {});
    parallel_for(cfg.sweep.n_points, cfg.threads, [&](int i) {
        cow::CowGeometry g = geo;
        g.alpha = sweep_value(cfg.sweep, i);
        const cow::CowPhases ph = cow::leg_phases(beam, g, constants);
        const double sa = std::sin(g.alpha);
        const double v = cow::visibility(beam, g);
        const double pred = cow::predictability(beam, g);
        t.rows[static_cast<size_t>(i)] = {g.alpha,
                                          ph.q_cow * sa,
                                          ph.q_ucow * sa,
                                          cow::detector1_probability(beam, g).closed_form,
                                          cow::intensity(beam, g, cfg.cow_i0),
                                          v,
                                          pred,
                                          duality::duality_check(v, pred).residual};
    });
    return t;
}

Table run_packet(const RunConfig& cfg, const PhysicalConstants& constants) {
    const BeamParticle beam = cfg.beam.resolve(constants);
    const auto packet = wavepacket::PacketParams::from_beam(beam, cfg.packet_sigma0_m,
                                                            cfg.packet_n0);

    Table t;
    t.columns = {"s1_m",    "s2_m",    "sigma0_m",  "gamma_per_s",
                 "P1_num",  "P1_ana",  "P2_num",    "P2_ana",
                 "P12_num", "P12_ana", "Ptot_num",  "Ptot_ana",
                 "rel_err", "lower_limit_rel", "valid_paths_far",
                 "valid_slow_decay", "no_spreading_margin"};
    t.rows.assign(static_cast<size_t>(cfg.sweep.n_points), {});
    parallel_for(cfg.sweep.n_points, cfg.threads, [&](int i) {
        const double ds = sweep_value(cfg.sweep, i);
        wavepacket::TwoPathPacketSetup setup{packet, cfg.packet_mean_path_m + 0.5 * ds,
                                             cfg.packet_mean_path_m - 0.5 * ds};
        const auto num = wavepacket::detection_probability_numeric(setup);
        const auto ana = wavepacket::detection_probability_analytic(setup);
        const double rel_err =
            std::abs(num.total - ana.total) /
            std::max({std::abs(ana.total), std::abs(num.total), 1e-300});
        const double lower_rel =
            std::max({std::abs(num.lower_limit_p1) / std::max(std::abs(num.p1), 1e-300),
                      std::abs(num.lower_limit_p2) / std::max(std::abs(num.p2), 1e-300),
                      std::abs(num.lower_limit_p12) / std::max(std::abs(num.p12), 1e-300)});
        t.rows[static_cast<size_t>(i)] = {setup.s1,
                                          setup.s2,
                                          packet.sigma0,
                                          packet.gamma,
                                          num.p1,
                                          ana.p1,
                                          num.p2,
                                          ana.p2,
                                          num.p12,
                                          ana.p12,
                                          num.total,
                                          ana.total,
                                          rel_err,
                                          lower_rel,
                                          num.flags.paths_far ? 1.0 : 0.0,
                                          num.flags.slow_decay ? 1.0 : 0.0,
                                          num.flags.no_spreading_margin};
    });
    return t;
}

Table run_duality_report(const RunConfig& cfg) {
    Table t;
    t.columns = {"x", "V", "P", "residual", "coherent"};
    t.rows.assign(static_cast<size_t>(cfg.sweep.n_points), {});
    parallel_for(cfg.sweep.n_points, cfg.threads, [&](int i) {
        const double x = sweep_value(cfg.sweep, i);
        const double v = 1.0 / std::cosh(x);
        const double p = std::tanh(x);
        const auto res = duality::duality_check(v, p);
        t.rows[static_cast<size_t>(i)] = {x, v, p, res.residual, res.coherent ? 1.0 : 0.0};
    });
    return t;
}

std::vector<std::pair<std::string, std::string>> constants_items(const PhysicalConstants& k) {
    return {{"hbar_J_s", fmt_full(k.hbar)},
            {"c_m_per_s", fmt_full(k.c)},
            {"g_m_per_s2", fmt_full(k.g_std)},
            {"m_neutron_kg", fmt_full(k.m_neutron)}};
}

std::string render_csv(const Table& t, const RunConfig& cfg, const PhysicalConstants& constants) {
    std::ostringstream out;
    out << "# quup " << kVersion << "\n";
    out << "# constants";
    for (const auto& [k, v] : constants_items(constants)) out << ' ' << k << '=' << v;
    out << "\n";
    out << "# config";
    for (const auto& [k, v] : cfg.canonical_items()) out << ' ' << k << '=' << v;
    out << "\n";
    for (size_t c = 0; c < t.columns.size(); ++c)
        out << (c ? "," : "") << t.columns[c];
    out << "\n";
    for (const auto& row : t.rows) {
        for (size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << fmt_double(row[c], cfg.output.precision);
        out << "\n";
    }
    return out.str();
}

std::string render_json(const Table& t, const RunConfig& cfg, const PhysicalConstants& constants) {
    nlohmann::json meta;
    meta["tool"] = "quup";
    meta["version"] = kVersion;
    for (const auto& [k, v] : constants_items(constants)) meta["constants"][k] = v;
    for (const auto& [k, v] : cfg.canonical_items()) meta["config"][k] = v;

    nlohmann::json doc;
    doc["metadata"] = meta;
    doc["columns"] = t.columns;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : t.rows) doc["rows"].push_back(row);
    return doc.dump(2) + "\n";
}

}  // namespace

std::string render(const RunConfig& cfg, const PhysicalConstants& constants) {
    constants.validate();
    if (cfg.experiment == Experiment::Verify) {
        return format_verify_report(verify_suite(constants));
    }
    Table t;
    switch (cfg.experiment) {
        case Experiment::DoubleSlit: t = run_dslit(cfg, constants); break;
        case Experiment::Cow: t = run_cow(cfg, constants); break;
        case Experiment::Packet: t = run_packet(cfg, constants); break;
        case Experiment::DualityReport: t = run_duality_report(cfg); break;
        case Experiment::Verify: break;  // handled above
    }
    return cfg.output.format == Format::Csv ? render_csv(t, cfg, constants)
                                            : render_json(t, cfg, constants);
}

void run(const RunConfig& cfg, const PhysicalConstants& constants) {
    const std::string text = render(cfg, constants);
    if (cfg.output.path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(cfg.output.path, std::ios::binary);
    if (!out)
        throw IoError("cannot open output file '" + cfg.output.path + "'");
    out << text;
    out.flush();
    if (!out)
        throw IoError("failed writing output file '" + cfg.output.path + "'");
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const NumericError*>(&e)) return 3;
    if (dynamic_cast<const IoError*>(&e)) return 4;
    if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const DataError*>(&e) ||
        dynamic_cast<const GeometryError*>(&e))
        return 2;
    return 1;
}

}
