#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quup/beam.hpp"

namespace quup::cli {

enum class Experiment { DoubleSlit, Cow, Packet, DualityReport, Verify };

const char* experiment_name(Experiment e);
std::optional<Experiment> experiment_from_name(const std::string& name);

enum class Format { Csv, Json };

struct BeamSpec {
    std::optional<std::string> preset;  // "thermal-neutron" | "stable-neutron"
    std::optional<double> m_kg;
    std::optional<double> p0_kg_m_per_s;
    std::optional<double> gamma_per_s;

    BeamParticle resolve(const PhysicalConstants& constants) const;
};

struct SweepSpec {
    std::string parameter;
    double start = 0.0;
    double stop = 0.0;
    int n_points = 0;
};

struct OutputSpec {
    std::string path;  // empty = stdout
    Format format = Format::Csv;
    int precision = 12;
};

struct RunConfig {
    Experiment experiment = Experiment::Verify;
    BeamSpec beam;

    double dslit_mean_path_m = 0.0;
    double dslit_i0 = 1.0;

    double cow_H0_m = 0.0;
    double cow_L0_m = 0.0;
    double cow_i0 = 1.0;

    double packet_sigma0_m = 0.0;
    double packet_mean_path_m = 0.0;
    double packet_n0 = 1.0;

    SweepSpec sweep;
    OutputSpec output;
    int threads = 1;

    /// Sorted key=value view of the effective configuration, echoed into
    /// output metadata so runs are self-describing.
    std::vector<std::pair<std::string, std::string>> canonical_items() const;
};

/// Parses the strict key=value configuration format ('#' comments, one
/// `key = value` per line, dotted keys, units spelled in key names).
/// Unknown keys, keys from other experiments, missing required keys and
/// invariant violations are ConfigErrors naming the offending key and line.
RunConfig parse_config(const std::string& text);

RunConfig parse_config_file(const std::string& path);

/// Constants table in the same key=value format; keys hbar_J_s, c_m_per_s,
/// g_m_per_s2, m_neutron_kg override the defaults.
PhysicalConstants parse_constants_file(const std::string& path);

}
