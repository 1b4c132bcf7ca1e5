#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "quup/cli/config.hpp"
#include "quup/cli/run.hpp"
#include "quup/errors.hpp"
#include "quup/version.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string format;
    int threads = 0;  // 0 = keep the config's value
};

void add_common(CLI::App* sub, CommonFlags& flags, bool config_required) {
    auto* opt = sub->add_option("--config", flags.config_path, "configuration file");
    if (config_required) opt->required();
    sub->add_option("--out", flags.out_path, "output path (default: config or stdout)");
    sub->add_option("--format", flags.format, "csv or json (overrides config)");
    sub->add_option("--threads", flags.threads, "worker threads for sweep points");
}

int run_subcommand(quup::cli::Experiment experiment, const CommonFlags& flags) {
    using namespace quup;
    cli::RunConfig cfg;
    if (!flags.config_path.empty()) {
        cfg = cli::parse_config_file(flags.config_path);
        if (cfg.experiment != experiment)
            throw ConfigError(std::string("config is for experiment '") +
                              cli::experiment_name(cfg.experiment) + "' but subcommand is '" +
                              cli::experiment_name(experiment) + "'");
    } else {
        cfg.experiment = experiment;
    }
    if (!flags.out_path.empty()) cfg.output.path = flags.out_path;
    if (!flags.format.empty()) {
        if (flags.format == "csv") cfg.output.format = cli::Format::Csv;
        else if (flags.format == "json") cfg.output.format = cli::Format::Json;
        else throw ConfigError("--format must be 'csv' or 'json'");
    }
    if (flags.threads > 0) cfg.threads = flags.threads;

    PhysicalConstants constants = default_constants();
    if (const char* path = std::getenv("QUUP_CONSTANTS_PATH"))
        constants = cli::parse_constants_file(path);

    if (experiment == cli::Experiment::Verify) {
        const auto checks = cli::verify_suite(constants);
        const std::string report = cli::format_verify_report(checks);
        if (cfg.output.path.empty()) {
            std::cout << report;
        } else {
            std::ofstream out(cfg.output.path, std::ios::binary);
            if (!out) throw quup::IoError("cannot open output file '" + cfg.output.path + "'");
            out << report;
        }
        for (const auto& c : checks)
            if (!c.pass) return 3;
        return 0;
    }

    cli::run(cfg, constants);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interference observables for beams of undecayed unstable particles"};
    app.set_version_flag("--version", std::string("quup ") + quup::kVersion);
    app.require_subcommand(1);

    CommonFlags dslit_flags, cow_flags, packet_flags, duality_flags, verify_flags;
    add_common(app.add_subcommand("dslit", "double-slit sweep over delta_s"), dslit_flags, true);
    add_common(app.add_subcommand("cow", "interferometer tilt sweep over alpha"), cow_flags, true);
    add_common(app.add_subcommand("packet", "wave-packet detection probabilities"), packet_flags,
               true);
    add_common(app.add_subcommand("duality-report", "V/P duality residual sweep"), duality_flags,
               true);
    add_common(app.add_subcommand("verify", "run the built-in cross-check suite"), verify_flags,
               false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        using quup::cli::Experiment;
        if (app.got_subcommand("dslit")) return run_subcommand(Experiment::DoubleSlit, dslit_flags);
        if (app.got_subcommand("cow")) return run_subcommand(Experiment::Cow, cow_flags);
        if (app.got_subcommand("packet")) return run_subcommand(Experiment::Packet, packet_flags);
        if (app.got_subcommand("duality-report"))
            return run_subcommand(Experiment::DualityReport, duality_flags);
        if (app.got_subcommand("verify")) return run_subcommand(Experiment::Verify, verify_flags);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "quup: " << e.what() << "\n";
        return quup::cli::exit_code_for(e);
    }
}
