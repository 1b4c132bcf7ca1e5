#include "quup/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "quup/errors.hpp"

namespace quup::cli {

const char* experiment_name(Experiment e) {
    switch (e) {
        case Experiment::DoubleSlit: return "dslit";
        case Experiment::Cow: return "cow";
        case Experiment::Packet: return "packet";
        case Experiment::DualityReport: return "duality-report";
        case Experiment::Verify: return "verify";
    }
    return "?";
}

std::optional<Experiment> experiment_from_name(const std::string& name) {
    if (name == "dslit") return Experiment::DoubleSlit;
    if (name == "cow") return Experiment::Cow;
    if (name == "packet") return Experiment::Packet;
    if (name == "duality-report") return Experiment::DualityReport;
    if (name == "verify") return Experiment::Verify;
    return std::nullopt;
}

BeamParticle BeamSpec::resolve(const PhysicalConstants& constants) const {
    if (preset) {
        if (*preset == "thermal-neutron") return thermal_neutron(constants);
        if (*preset == "stable-neutron") return stable_neutron(constants);
        throw ConfigError("beam.preset: unknown preset '" + *preset + "'");
    }
    if (!m_kg || !p0_kg_m_per_s || !gamma_per_s)
        throw ConfigError("beam: either beam.preset or all of beam.m_kg, "
                          "beam.p0_kg_m_per_s, beam.gamma_per_s are required");
    return make_beam(*m_kg, *p0_kg_m_per_s, *gamma_per_s, constants);
}

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::map<std::string, Entry> tokenize(const std::string& text) {
    std::map<std::string, Entry> entries;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("empty key", line_no);
        if (value.empty())
            throw ConfigError("empty value for key '" + key + "'", line_no);
        if (entries.count(key))
            throw ConfigError("duplicate key '" + key + "'", line_no);
        entries[key] = Entry{value, line_no, false};
    }
    return entries;
}

class Schema {
public:
    explicit Schema(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string required_string(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError("missing required key '" + key + "'");
        it->second.used = true;
        return it->second.value;
    }

    std::optional<std::string> optional_string(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }

    double required_number(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError("missing required key '" + key + "'");
        return to_number(key, it->second);
    }

    double optional_number(const std::string& key, double fallback) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        return to_number(key, it->second);
    }

    int required_int(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError("missing required key '" + key + "'");
        const double v = to_number(key, it->second);
        if (v != std::floor(v) || std::abs(v) > 1e9)
            throw ConfigError("key '" + key + "' must be an integer", it->second.line);
        return static_cast<int>(v);
    }

    int optional_int(const std::string& key, int fallback) {
        if (!has(key)) return fallback;
        return required_int(key);
    }

    // Strict mode: anything not consumed by the schema is unknown.
    void reject_unused() const {
        for (const auto& [key, entry] : entries_) {
            if (!entry.used)
                throw ConfigError("unknown key '" + key + "'", entry.line);
        }
    }

private:
    double to_number(const std::string& key, Entry& entry) {
        entry.used = true;
        const char* begin = entry.value.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0' || !std::isfinite(v))
            throw ConfigError("key '" + key + "' must be a finite number, got '" + entry.value +
                                  "'",
                              entry.line);
        return v;
    }

    std::map<std::string, Entry> entries_;
};

void parse_beam(Schema& s, BeamSpec& beam, bool required) {
    beam.preset = s.optional_string("beam.preset");
    const bool explicit_given =
        s.has("beam.m_kg") || s.has("beam.p0_kg_m_per_s") || s.has("beam.gamma_per_s");
    if (beam.preset && explicit_given)
        throw ConfigError("beam.preset conflicts with explicit beam.m_kg/p0/gamma keys");
    if (explicit_given) {
        beam.m_kg = s.required_number("beam.m_kg");
        beam.p0_kg_m_per_s = s.required_number("beam.p0_kg_m_per_s");
        beam.gamma_per_s = s.required_number("beam.gamma_per_s");
        if (!(*beam.m_kg > 0.0))
            throw ConfigError("beam.m_kg must be positive");
        if (!(*beam.p0_kg_m_per_s > 0.0))
            throw ConfigError("beam.p0_kg_m_per_s must be positive");
        if (*beam.gamma_per_s < 0.0)
            throw ConfigError("beam.gamma_per_s must be non-negative");
    } else if (!beam.preset && required) {
        throw ConfigError("missing beam: give beam.preset or explicit beam.* keys");
    }
}

void parse_sweep(Schema& s, SweepSpec& sweep, const std::string& allowed_parameter) {
    sweep.parameter = s.required_string("sweep.parameter");
    if (sweep.parameter != allowed_parameter)
        throw ConfigError("sweep.parameter '" + sweep.parameter +
                          "' is not valid for this experiment (expected '" + allowed_parameter +
                          "')");
    sweep.start = s.required_number("sweep.start");
    sweep.stop = s.required_number("sweep.stop");
    sweep.n_points = s.required_int("sweep.n_points");
    if (sweep.n_points < 2)
        throw ConfigError("sweep.n_points must be >= 2");
    if (!(sweep.start < sweep.stop))
        throw ConfigError("sweep.start must be < sweep.stop");
}

void parse_output(Schema& s, OutputSpec& out) {
    if (auto path = s.optional_string("output.path")) out.path = *path;
    if (auto fmt = s.optional_string("output.format")) {
        if (*fmt == "csv") out.format = Format::Csv;
        else if (*fmt == "json") out.format = Format::Json;
        else throw ConfigError("output.format must be 'csv' or 'json', got '" + *fmt + "'");
    }
    out.precision = s.optional_int("output.precision", 12);
    if (out.precision < 3 || out.precision > 17)
        throw ConfigError("output.precision must lie in [3, 17]");
}

std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    Schema s(tokenize(text));

    RunConfig cfg;
    const std::string exp_name = s.required_string("experiment");
    const auto exp = experiment_from_name(exp_name);
    if (!exp)
        throw ConfigError("experiment must be one of dslit|cow|packet|duality-report|verify, "
                          "got '" + exp_name + "'");
    cfg.experiment = *exp;

    switch (cfg.experiment) {
        case Experiment::DoubleSlit:
            parse_beam(s, cfg.beam, true);
            cfg.dslit_mean_path_m = s.required_number("dslit.mean_path_m");
            if (!(cfg.dslit_mean_path_m > 0.0))
                throw ConfigError("dslit.mean_path_m must be positive");
            cfg.dslit_i0 = s.optional_number("dslit.i0", 1.0);
            if (!(cfg.dslit_i0 > 0.0))
                throw ConfigError("dslit.i0 must be positive");
            parse_sweep(s, cfg.sweep, "delta_s_m");
            break;
        case Experiment::Cow:
            parse_beam(s, cfg.beam, true);
            cfg.cow_H0_m = s.required_number("cow.H0_m");
            cfg.cow_L0_m = s.required_number("cow.L0_m");
            if (!(cfg.cow_H0_m > 0.0) || !(cfg.cow_L0_m > 0.0))
                throw ConfigError("cow.H0_m and cow.L0_m must be positive");
            cfg.cow_i0 = s.optional_number("cow.i0", 1.0);
            if (!(cfg.cow_i0 > 0.0))
                throw ConfigError("cow.i0 must be positive");
            parse_sweep(s, cfg.sweep, "alpha_rad");
            break;
        case Experiment::Packet:
            parse_beam(s, cfg.beam, true);
            cfg.packet_sigma0_m = s.required_number("packet.sigma0_m");
            if (!(cfg.packet_sigma0_m > 0.0))
                throw ConfigError("packet.sigma0_m must be positive");
            cfg.packet_mean_path_m = s.required_number("packet.mean_path_m");
            if (!(cfg.packet_mean_path_m > 0.0))
                throw ConfigError("packet.mean_path_m must be positive");
            cfg.packet_n0 = s.optional_number("packet.n0", 1.0);
            if (!(cfg.packet_n0 > 0.0))
                throw ConfigError("packet.n0 must be positive");
            parse_sweep(s, cfg.sweep, "delta_s_m");
            break;
        case Experiment::DualityReport:
            parse_beam(s, cfg.beam, false);
            parse_sweep(s, cfg.sweep, "x");
            if (cfg.sweep.start < 0.0)
                throw ConfigError("sweep.start must be >= 0 for duality-report");
            break;
        case Experiment::Verify:
            break;
    }

    parse_output(s, cfg.output);
    cfg.threads = s.optional_int("threads", 1);
    if (cfg.threads < 1 || cfg.threads > 256)
        throw ConfigError("threads must lie in [1, 256]");

    s.reject_unused();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

PhysicalConstants parse_constants_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read constants file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    Schema s(tokenize(ss.str()));
    PhysicalConstants k;
    k.hbar = s.optional_number("hbar_J_s", k.hbar);
    k.c = s.optional_number("c_m_per_s", k.c);
    k.g_std = s.optional_number("g_m_per_s2", k.g_std);
    k.m_neutron = s.optional_number("m_neutron_kg", k.m_neutron);
    s.reject_unused();
    k.validate();
    return k;
}

std::vector<std::pair<std::string, std::string>> RunConfig::canonical_items() const {
    std::vector<std::pair<std::string, std::string>> items;
    items.emplace_back("experiment", experiment_name(experiment));
    if (beam.preset) {
        items.emplace_back("beam.preset", *beam.preset);
    } else if (beam.m_kg) {
        items.emplace_back("beam.m_kg", fmt_full(*beam.m_kg));
        items.emplace_back("beam.p0_kg_m_per_s", fmt_full(*beam.p0_kg_m_per_s));
        items.emplace_back("beam.gamma_per_s", fmt_full(*beam.gamma_per_s));
    }
    switch (experiment) {
        case Experiment::DoubleSlit:
            items.emplace_back("dslit.mean_path_m", fmt_full(dslit_mean_path_m));
            items.emplace_back("dslit.i0", fmt_full(dslit_i0));
            break;
        case Experiment::Cow:
            items.emplace_back("cow.H0_m", fmt_full(cow_H0_m));
            items.emplace_back("cow.L0_m", fmt_full(cow_L0_m));
            items.emplace_back("cow.i0", fmt_full(cow_i0));
            break;
        case Experiment::Packet:
            items.emplace_back("packet.sigma0_m", fmt_full(packet_sigma0_m));
            items.emplace_back("packet.mean_path_m", fmt_full(packet_mean_path_m));
            items.emplace_back("packet.n0", fmt_full(packet_n0));
            break;
        case Experiment::DualityReport:
        case Experiment::Verify:
            break;
    }
    if (experiment != Experiment::Verify) {
        items.emplace_back("sweep.parameter", sweep.parameter);
        items.emplace_back("sweep.start", fmt_full(sweep.start));
        items.emplace_back("sweep.stop", fmt_full(sweep.stop));
        items.emplace_back("sweep.n_points", std::to_string(sweep.n_points));
    }
    items.emplace_back("output.format", output.format == Format::Csv ? "csv" : "json");
    items.emplace_back("output.precision", std::to_string(output.precision));
    std::sort(items.begin(), items.end());
    return items;
}

}
